#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tbl/characters.hpp"

namespace tbl {

// One verification request.
//
// Characters are addressed by (modulus, index into enumerate_characters).
// Single-character theorems use (q, char_index). Two-character theorems take
// chi1 mod p from (p, char_index) and chi2 mod q from (q, char2_index).
struct IdentityCase {
    std::string theorem_id;
    int q = 5;
    int char_index = 0;
    int p = 0;
    int char2_index = -1;

    std::optional<int> k;
    std::optional<double> nu;
    double a = 1.0;
    double x = 0.75;
    std::optional<int> N;

    // Voronoi cases
    double alpha = 0.5;
    double beta = 3.4;
    std::string test_function = "exp";
    long long voronoi_terms = 0;  // 0: default_voronoi_terms(modulus)
};

struct NamedValue {
    std::string name;
    cplx value;
};

struct VerificationReport {
    IdentityCase input;
    cplx lhs;
    cplx rhs;
    double abs_err = 0.0;
    // |lhs - rhs| / |lhs|, or abs_err when |lhs| < 1e-6. Voronoi cases use
    // |lhs - rhs| / max(|lhs|, 1).
    double rel_err = 0.0;
    double tolerance = 0.0;
    long long lhs_terms = 0;
    long long rhs_terms = 0;
    bool pass = false;
    double wall_ms = 0.0;
    std::vector<NamedValue> rhs_parts;    // these sum to rhs
    std::vector<NamedValue> lhs_parts;    // these sum to lhs
    std::vector<NamedValue> diagnostics;  // not part of either side
    std::string error;                    // set by run_suite when verify threw
};

enum class Section { Integer, Cohen, Voronoi, Classical };

struct TheoremInfo {
    std::string id;
    Section section;
    int characters;  // 0, 1 or 2
    bool uses_k;
    bool uses_nu;
    bool uses_N;
    double tolerance;
    std::string summary;
};

const std::vector<TheoremInfo>& theorem_registry();

// Throws HypothesisError for an unknown id.
const TheoremInfo& theorem_info(const std::string& id);

std::vector<std::string> theorem_ids();

// Checks every hypothesis of the selected theorem. Throws HypothesisError
// naming the violated clause, or ExcludedParameter.
void validate(const IdentityCase& c);

// tol <= 0 selects the theorem's default tolerance.
VerificationReport verify(const IdentityCase& c, double tol = 0.0);

// Kernel terms used by Voronoi cases when the case leaves it at 0: the
// resolution in sqrt(t) scales like sqrt(modulus / terms).
long long default_voronoi_terms(long long modulus);

// Registered test functions for Voronoi cases: exp, t2, gauss, poly4.
std::function<double(double)> test_function(const std::string& name);
std::vector<std::string> test_function_names();

struct SuiteOptions {
    std::string pattern = "*";   // glob over theorem ids; empty selects nothing
    std::vector<double> nu_grid;  // Cohen cases; empty keeps the defaults
    std::vector<int> N_values;    // Cohen cases; empty keeps the defaults
    bool voronoi_full_grid = false;  // every f and interval instead of three points
    long long voronoi_terms = 0;
    double tolerance_scale = 1.0;
    unsigned threads = 0;  // 0: hardware concurrency
};

bool glob_match(const std::string& pattern, const std::string& text);

// The registered parameter points for the theorems selected by opts.
std::vector<IdentityCase> suite_cases(const SuiteOptions& opts);

// Runs the selected cases concurrently. Reports come back in case order;
// a case that throws is reported as failed with error set.
std::vector<VerificationReport> run_suite(const SuiteOptions& opts);
std::vector<VerificationReport> run_cases(const std::vector<IdentityCase>& cases, double tolerance_scale = 1.0,
                                          unsigned threads = 0);

struct PositivityEntry {
    int q;
    int index;
    Parity parity;
    double value;  // L(1, chi), real for real chi
    double imag;   // imaginary part as computed
};

// L(1, chi) for every real primitive non-principal chi with 3 <= q <= q_max.
std::vector<PositivityEntry> positivity_scan(int q_max);

}  // namespace tbl
