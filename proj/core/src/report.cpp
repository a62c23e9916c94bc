#include "weaklaw/report.hpp"

#include <cmath>
#include <sstream>

namespace weaklaw {

std::string status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::SampledPass: return "sampled-pass";
        case Status::Fail: return "fail";
        case Status::BudgetExceeded: return "budget-exceeded";
    }
    return "unknown";
}

Json Witness::to_json() const {
    Json sides_json = Json::array();
    for (auto& [label, v] : sides)
        sides_json.push_back(Json{{"path", label}, {"value", value_to_json(v)}});
    return Json{{"diagram", diagram},
                {"carrier", carrier},
                {"input", input ? value_to_json(input) : Json(nullptr)},
                {"sides", std::move(sides_json)}};
}

Json DiagramStat::to_json() const {
    // Totals can overflow doubles for tower-of-exponentials instance spaces;
    // JSON has no inf, so clamp to a string marker.
    Json total_json = std::isfinite(total) ? Json(total) : Json("inf");
    Json j{{"name", name},
           {"carrier", carrier},
           {"mode", mode},
           {"checked", checked},
           {"total", std::move(total_json)},
           {"result", passed ? "pass" : "fail"}};
    if (out_of_range > 0) j["out_of_range"] = out_of_range;
    return j;
}

void LawReport::absorb(const DiagramStat& d) {
    diagrams.push_back(d);
    if (!d.passed) {
        status = Status::Fail;
        return;
    }
    if (status == Status::Pass && (d.mode == "sampled" || d.mode == "skipped"))
        status = Status::SampledPass;
}

void LawReport::fail_with(Witness w) {
    status = Status::Fail;
    if (!witness) witness = std::move(w);
}

Json LawReport::to_json() const {
    Json diag = Json::array();
    for (auto& d : diagrams) diag.push_back(d.to_json());
    Json j{{"subject", subject},
           {"operation", operation},
           {"status", status_name(status)},
           {"budget", budget},
           {"diagrams", std::move(diag)}};
    if (seed) j["seed"] = *seed;
    j["witness"] = witness ? witness->to_json() : Json(nullptr);
    Json notes_json = Json::array();
    for (auto& n : notes) notes_json.push_back(n);
    j["notes"] = std::move(notes_json);
    return j;
}

namespace {
std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}
}  // namespace

std::string witness_to_dot(const LawReport& report) {
    std::ostringstream os;
    os << "digraph witness {\n  rankdir=LR;\n  node [shape=box,fontname=\"monospace\"];\n";
    os << "  label=\"" << dot_escape(report.subject) << ": "
       << dot_escape(report.witness ? report.witness->diagram : "no witness") << "\";\n";
    if (report.witness) {
        const Witness& w = *report.witness;
        os << "  input [label=\"" << dot_escape(w.carrier) << "\\n"
           << dot_escape(w.input ? w.input->str() : "") << "\"];\n";
        int k = 0;
        for (auto& [label, v] : w.sides) {
            os << "  side" << k << " [label=\"" << dot_escape(v->str()) << "\"];\n";
            os << "  input -> side" << k << " [label=\"" << dot_escape(label) << "\"];\n";
            ++k;
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace weaklaw
