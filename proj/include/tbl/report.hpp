#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "tbl/identities.hpp"

namespace tbl {

struct SuiteSummary {
    std::size_t total = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;  // includes cases that threw
    std::size_t errored = 0;
    double wall_ms = 0.0;
};

SuiteSummary summarize(const std::vector<VerificationReport>& reports);

// One record: theorem_id, params, lhs_re, lhs_im, rhs_re, rhs_im, abs_err,
// rel_err, pass, terms {lhs, rhs}, wall_ms, plus tolerance and error when set.
std::string report_record(const VerificationReport& r, int indent = -1);

// One compact record per line.
void write_jsonl(std::ostream& os, const std::vector<VerificationReport>& reports);

// {"summary": {...}, "cases": [...]}
void write_json(std::ostream& os, const std::vector<VerificationReport>& reports);

// Human-readable table, one line per case and a summary line.
void write_text(std::ostream& os, const std::vector<VerificationReport>& reports);

}  // namespace tbl
