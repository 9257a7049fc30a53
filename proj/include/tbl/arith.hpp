#pragma once

#include <vector>

#include "tbl/characters.hpp"

namespace tbl {

// f(n) = sum_{d|n} d^z c1(d) c2(n/d).
//   Twisted     c1 = chi, c2 = 1        sigma_{z,chi}
//   BarTwisted  c1 = 1,   c2 = chi      bar sigma_{z,chi}
//   TwoChar     c1 = chi1, c2 = chi2    sigma_{z,chi1,chi2}
//   Sigma       c1 = c2 = 1             sigma_z
//   SigmaChar   c1 = c2 = chi           chi(n) sigma_z(n)
//   Unit        f(n) = 1 for all n (z unused)
enum class DivisorKind { Twisted, BarTwisted, TwoChar, Sigma, SigmaChar, Unit };

struct DivisorSumSpec {
    DivisorKind kind = DivisorKind::Sigma;
    cplx z = 0.0;
    Character chi1 = trivial_character();
    Character chi2 = trivial_character();

    static DivisorSumSpec twisted(cplx z, const Character& chi);
    static DivisorSumSpec bar_twisted(cplx z, const Character& chi);
    static DivisorSumSpec two_char(cplx z, const Character& chi1, const Character& chi2);
    static DivisorSumSpec sigma(cplx z);
    static DivisorSumSpec sigma_char(cplx z, const Character& chi);
    static DivisorSumSpec unit();

    // exponent m with |f(n)| <= d(n) n^m
    double growth() const;
};

// Divisors of n in increasing order, n >= 1.
std::vector<long long> divisors(long long n);

cplx divisor_sum(const DivisorSumSpec& spec, long long n);

// f(1..N); entry 0 is unused.
std::vector<cplx> divisor_sum_table(const DivisorSumSpec& spec, int N);

// Number of divisors, used in tail bounds.
int divisor_count(long long n);

// L(s - z, c1) L(s, c2), or zeta(s) for Unit.
cplx generating_function(const DivisorSumSpec& spec, cplx s);

struct SeriesCheck {
    cplx partial;       // sum_{n <= terms} f(n) n^-s plus the main part of the tail
    cplx closed_form;
    double residual;
    double tail_bound;  // bound on what the main-part correction leaves out
};

// Compares the truncated Dirichlet series of f with its generating function.
// The tail contributed by the poles of the generating function is added in
// closed form, so the residual reflects only the fluctuating remainder.
SeriesCheck dirichlet_series_check(const DivisorSumSpec& spec, cplx s, int terms);

}  // namespace tbl
