// Internal helpers shared by the law checkers (not installed): per-diagram
// mode decision (exhaustive / sampled / skipped against the budget), instance
// accounting, witness construction, and small rendering utilities.
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "weaklaw/monad.hpp"

namespace weaklaw {
namespace detail {

inline std::string fn_desc(const FinFn& f) {
    std::string s = "{";
    const auto& d = f.dom()->elems();
    for (size_t i = 0; i < d.size(); ++i) {
        if (i) s += ",";
        s += d[i]->str() + "->" + f(d[i])->str();
    }
    return s + "}";
}

inline std::function<Val(Val)> elemwise(const FinFn& f) {
    return [f](Val v) { return f(v); };
}

enum class RunMode { Exhaustive, Sampled, Skipped };

// Bookkeeping for one diagram family at one carrier combination: decides the
// mode from cost estimates, accumulates pass/skip counts, builds the witness
// on the first mismatch, and emits a DiagramStat into the report.
class DiagramRun {
public:
    DiagramRun(LawReport& rep, const CheckConfig& cfg, std::string name,
               std::string carrier, double true_total, double exhaustive_cost,
               double per_draw_cost, bool can_sample)
        : rep_(rep), cfg_(cfg), name_(std::move(name)),
          carrier_(std::move(carrier)), total_(true_total),
          rng_(cfg.seed ^ fnv1a(name_) ^ (fnv1a(carrier_) * 0x9e3779b97f4a7c15ull)) {
        if (exhaustive_cost >= 0 && exhaustive_cost <= double(cfg.budget))
            mode_ = RunMode::Exhaustive;
        else if (can_sample &&
                 double(cfg.samples) * std::max(1.0, per_draw_cost) <= double(cfg.budget))
            mode_ = RunMode::Sampled;
        else
            mode_ = RunMode::Skipped;
    }

    bool exhaustive() const { return mode_ == RunMode::Exhaustive; }
    bool sampled() const { return mode_ == RunMode::Sampled; }
    bool skipped() const { return mode_ == RunMode::Skipped; }
    Rng& rng() { return rng_; }

    // Record one two-sided instance.  Null side = undefined (truncated
    // multiplication).  Laws are asserted on the locus where both paths are
    // defined, so any undefined side counts as out-of-range rather than as a
    // failure.  Returns false once the diagram has failed, so callers can
    // stop early.
    bool instance(Val input, Val lhs, Val rhs, const std::string& inst,
                  const char* lhs_label, const char* rhs_label) {
        ++checked_;
        if (!lhs || !rhs) {
            ++oor_;
            return true;
        }
        if (lhs == rhs) return true;
        passed_ = false;
        Witness w;
        w.diagram = name_;
        w.carrier = inst.empty() ? carrier_ : carrier_ + ", " + inst;
        w.input = input;
        w.sides.emplace_back(lhs_label, lhs ? lhs : undefined_marker());
        w.sides.emplace_back(rhs_label, rhs ? rhs : undefined_marker());
        rep_.fail_with(std::move(w));
        return false;
    }

    // Record one predicate-style instance (e.g. "this square is a weak
    // pullback").  Returns false once the diagram has failed.
    bool predicate(Val input, bool ok, const std::string& inst,
                   std::vector<std::pair<std::string, Val>> sides = {}) {
        ++checked_;
        if (ok) return true;
        passed_ = false;
        Witness w;
        w.diagram = name_;
        w.carrier = inst.empty() ? carrier_ : carrier_ + ", " + inst;
        w.input = input ? input : undefined_marker();
        w.sides = std::move(sides);
        rep_.fail_with(std::move(w));
        return false;
    }

    void finish() {
        DiagramStat st;
        st.name = name_;
        st.carrier = carrier_;
        st.mode = exhaustive() ? "exhaustive" : sampled() ? "sampled" : "skipped";
        st.checked = checked_;
        st.total = total_;
        st.out_of_range = oor_;
        st.passed = passed_;
        if (sampled() && !rep_.seed) rep_.seed = cfg_.seed;
        if (skipped())
            rep_.notes.push_back(name_ + " at " + carrier_ +
                                 " skipped: instance space exceeds budget and no "
                                 "sampler fits");
        rep_.absorb(st);
    }

private:
    LawReport& rep_;
    const CheckConfig& cfg_;
    std::string name_, carrier_;
    double total_;
    RunMode mode_ = RunMode::Exhaustive;
    uint64_t checked_ = 0, oor_ = 0;
    bool passed_ = true;
    Rng rng_;
};

}  // namespace detail
}  // namespace weaklaw
