#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "tbl/arith.hpp"
#include "tbl/errors.hpp"
#include "tbl/specfun.hpp"

using namespace tbl;

namespace {

// sum_{d|n} d^z c1(d) c2(n/d) by trial division, independent of the sieve
cplx brute(cplx z, const Character& c1, const Character& c2, long long n) {
    cplx s = 0.0;
    for (long long d = 1; d <= n; ++d)
        if (n % d == 0) s += std::pow(static_cast<double>(d), z) * c1(d) * c2(n / d);
    return s;
}

}  // namespace

TEST_CASE("divisors and divisor counts") {
    CHECK(divisors(1) == std::vector<long long>{1});
    CHECK(divisors(36) == std::vector<long long>{1, 2, 3, 4, 6, 9, 12, 18, 36});
    CHECK(divisor_count(720720) == 240);
    CHECK_THROWS_AS(divisors(0), DomainError);
}

// Reference values computed independently with mpmath.
TEST_CASE("divisor sums against reference values") {
    const auto l5 = character(5, 2), c4 = character(4, 1);
    CHECK(std::abs(divisor_sum(DivisorSumSpec::twisted(-0.25, l5), 12) - 0.20803281861574195) < 1e-14);
    CHECK(std::abs(divisor_sum(DivisorSumSpec::bar_twisted(-0.25, l5), 12) + 0.20803281861574195) < 1e-14);
    CHECK(std::abs(divisor_sum(DivisorSumSpec::two_char(1.5, l5, c4), 36) - 265.56921938165306) < 1e-11);
    CHECK(std::abs(divisor_sum(DivisorSumSpec::sigma(2.0), 30) - 1300.0) < 1e-10);
    CHECK(divisor_sum(DivisorSumSpec::unit(), 97) == cplx(1.0));
    CHECK(std::abs(generating_function(DivisorSumSpec::twisted(-0.25, l5), 2.5) - 1.1086982894630081) < 1e-12);
    CHECK(std::abs(generating_function(DivisorSumSpec::two_char(0.5, l5, c4), 3.0) - 0.76820273235228581) < 1e-12);
}

TEST_CASE("property: sieve table matches trial division for every kind") {
    std::mt19937 rng(11);
    const int N = 600;
    for (int q : {3, 4, 5, 7, 8}) {
        for (const auto& chi : enumerate_characters(q)) {
            const auto other = character(5, 1);
            const cplx z(-0.3, 0.2);
            const DivisorSumSpec specs[] = {
                DivisorSumSpec::twisted(z, chi), DivisorSumSpec::bar_twisted(z, chi),
                DivisorSumSpec::two_char(z, chi, other), DivisorSumSpec::sigma(z),
                DivisorSumSpec::sigma_char(z, chi)};
            for (const auto& spec : specs) {
                const auto table = divisor_sum_table(spec, N);
                for (int t = 0; t < 25; ++t) {
                    const long long n = 1 + rng() % N;
                    const cplx want = brute(spec.z, spec.chi1, spec.chi2, n);
                    CHECK(std::abs(table[static_cast<size_t>(n)] - want) < 1e-12 * (1.0 + std::abs(want)));
                    CHECK(std::abs(divisor_sum(spec, n) - want) < 1e-12 * (1.0 + std::abs(want)));
                }
            }
        }
    }
}

TEST_CASE("property: chi(n) sigma_z(n) equals the two-character sum with equal characters") {
    const auto chi = character(7, 1);
    for (long long n = 1; n < 300; ++n) {
        const cplx a = divisor_sum(DivisorSumSpec::sigma_char(0.4, chi), n);
        const cplx b = chi(n) * divisor_sum(DivisorSumSpec::sigma(0.4), n);
        CHECK(std::abs(a - b) < 1e-12 * (1.0 + std::abs(b)));
    }
}

TEST_CASE("property: multiplicativity") {
    const auto spec = DivisorSumSpec::two_char(-0.7, character(5, 1), character(3, 1));
    for (long long m = 1; m < 40; ++m)
        for (long long n = 1; n < 40; ++n)
            if (std::gcd(m, n) == 1)
                CHECK(std::abs(divisor_sum(spec, m * n) - divisor_sum(spec, m) * divisor_sum(spec, n)) < 1e-11);
}

TEST_CASE("Dirichlet series agree with their generating functions") {
    const auto l5 = character(5, 2), c7 = character(7, 1);
    const DivisorSumSpec specs[] = {
        DivisorSumSpec::twisted(-0.25, l5), DivisorSumSpec::bar_twisted(0.3, c7),
        DivisorSumSpec::two_char(-0.5, l5, c7), DivisorSumSpec::sigma(0.0), DivisorSumSpec::sigma(-0.4),
        DivisorSumSpec::sigma_char(0.25, c7), DivisorSumSpec::unit()};
    for (const auto& spec : specs) {
        const auto r = dirichlet_series_check(spec, cplx(3.2, 1.0), 4000);
        CHECK(r.residual <= r.tail_bound);
        CHECK(r.residual < 1e-8);
    }
    CHECK_THROWS_AS(dirichlet_series_check(DivisorSumSpec::sigma(0.0), 1.2, 100), DomainError);
}
