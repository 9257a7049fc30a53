#include "tbl/report.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace tbl {

namespace {

using nlohmann::ordered_json;

// Only the fields the theorem reads.
ordered_json params(const IdentityCase& c) {
    ordered_json p;
    const TheoremInfo* info = nullptr;
    for (const auto& t : theorem_registry())
        if (t.id == c.theorem_id) info = &t;
    if (info == nullptr || info->characters >= 1) {
        if (info != nullptr && info->characters == 2) {
            p["p"] = c.p;
            p["char"] = c.char_index;
            p["q"] = c.q;
            p["char2"] = c.char2_index;
        } else {
            p["q"] = c.q;
            p["char"] = c.char_index;
        }
    }
    if (c.k) p["k"] = *c.k;
    if (c.nu) p["nu"] = *c.nu;
    if (c.N) p["N"] = *c.N;
    if (info != nullptr && info->section == Section::Voronoi) {
        p["alpha"] = c.alpha;
        p["beta"] = c.beta;
        p["f"] = c.test_function;
        p["kernel_terms"] = c.voronoi_terms;
    } else {
        p["a"] = c.a;
        p["x"] = c.x;
    }
    return p;
}

ordered_json record(const VerificationReport& r) {
    ordered_json j;
    j["theorem_id"] = r.input.theorem_id;
    j["params"] = params(r.input);
    j["lhs_re"] = r.lhs.real();
    j["lhs_im"] = r.lhs.imag();
    j["rhs_re"] = r.rhs.real();
    j["rhs_im"] = r.rhs.imag();
    j["abs_err"] = r.abs_err;
    j["rel_err"] = r.rel_err;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["terms"] = {{"lhs", r.lhs_terms}, {"rhs", r.rhs_terms}};
    j["wall_ms"] = r.wall_ms;
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

ordered_json summary_json(const SuiteSummary& s) {
    return {{"total", s.total}, {"passed", s.passed}, {"failed", s.failed}, {"errored", s.errored},
            {"wall_ms", s.wall_ms}};
}

}  // namespace

SuiteSummary summarize(const std::vector<VerificationReport>& reports) {
    SuiteSummary s;
    s.total = reports.size();
    for (const auto& r : reports) {
        if (r.pass) ++s.passed;
        else ++s.failed;
        if (!r.error.empty()) ++s.errored;
        s.wall_ms += r.wall_ms;
    }
    return s;
}

std::string report_record(const VerificationReport& r, int indent) { return record(r).dump(indent); }

void write_jsonl(std::ostream& os, const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports) os << record(r).dump() << '\n';
}

void write_json(std::ostream& os, const std::vector<VerificationReport>& reports) {
    ordered_json doc;
    doc["summary"] = summary_json(summarize(reports));
    doc["cases"] = ordered_json::array();
    for (const auto& r : reports) doc["cases"].push_back(record(r));
    os << doc.dump(2) << '\n';
}

void write_text(std::ostream& os, const std::vector<VerificationReport>& reports) {
    char line[512];
    for (const auto& r : reports) {
        const std::string p = params(r.input).dump();
        if (!r.error.empty()) {
            std::snprintf(line, sizeof line, "%-15s ERROR ", r.input.theorem_id.c_str());
            os << line << p << "  " << r.error << '\n';
        } else {
            std::snprintf(line, sizeof line, "%-15s %s rel_err=%.3e tol=%.0e  ", r.input.theorem_id.c_str(),
                          r.pass ? "PASS " : "FAIL ", r.rel_err, r.tolerance);
            os << line << p << '\n';
        }
    }
    const SuiteSummary s = summarize(reports);
    os << s.passed << "/" << s.total << " passed";
    if (s.errored > 0) os << " (" << s.errored << " errors)";
    os << '\n';
}

}  // namespace tbl
