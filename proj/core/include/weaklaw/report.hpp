// Check reports.  Every verification produces a LawReport: an overall status,
// per-diagram statistics (what was enumerated, what was sampled, what fell
// out of range), and a witness when something failed.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weaklaw/json_io.hpp"
#include "weaklaw/value.hpp"

namespace weaklaw {

enum class Status { Pass, SampledPass, Fail, BudgetExceeded };
std::string status_name(Status s);

// A concrete counterexample: the input element on which two evaluation paths
// of a diagram disagreed, together with both path values.
struct Witness {
    std::string diagram;
    std::string carrier;   // name of the source carrier of the diagram
    Val input = nullptr;
    std::vector<std::pair<std::string, Val>> sides;  // path label -> value
    Json to_json() const;
};

// Coverage record for one diagram instance.
struct DiagramStat {
    std::string name;
    std::string carrier;
    std::string mode;          // "exhaustive" | "sampled" | "skipped"
    uint64_t checked = 0;      // instances actually evaluated
    double total = 0;          // full instance count (may exceed uint64 range)
    uint64_t out_of_range = 0; // instances skipped because a path left the
                               // truncated carrier (counted within `checked`
                               // enumeration, or estimated for streams)
    bool passed = true;
    Json to_json() const;
};

struct LawReport {
    std::string subject;    // what was checked, e.g. "monad powerset"
    std::string operation;  // which checker produced this
    Status status = Status::Pass;
    std::vector<DiagramStat> diagrams;
    std::optional<Witness> witness;
    std::vector<std::string> notes;
    std::optional<uint64_t> seed;  // present iff any diagram was sampled
    uint64_t budget = 0;

    bool ok() const { return status == Status::Pass || status == Status::SampledPass; }
    // Degrade Pass to SampledPass (after a sampled diagram) or to Fail.
    void absorb(const DiagramStat& d);
    void fail_with(Witness w);
    Json to_json() const;
};

// Graphviz rendering of a witness: one node per carrier stage, one edge per
// evaluation step, labelled with the values reached along each path.
std::string witness_to_dot(const LawReport& report);

}  // namespace weaklaw
