#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tbl/characters.hpp"
#include "tbl/errors.hpp"

using namespace tbl;

namespace {

double dist(cplx a, cplx b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("enumeration size, principal first and determinism") {
    for (int q = 1; q <= 60; ++q) {
        const auto chars = enumerate_characters(q);
        CHECK(static_cast<int>(chars.size()) == euler_phi(q));
        CHECK(chars[0].is_principal());
        const auto again = enumerate_characters(q);
        for (size_t i = 0; i < chars.size(); ++i) CHECK(chars[i] == again[i]);
    }
}

TEST_CASE("invalid modulus and index") {
    CHECK_THROWS_AS(enumerate_characters(0), InvalidModulus);
    CHECK_THROWS_AS(character(5, 4), DomainError);
}

TEST_CASE("known tables") {
    // mod 5, index 2: the Legendre symbol (n/5)
    const auto l5 = character(5, 2);
    CHECK(l5.is_real());
    CHECK(l5.parity() == Parity::Even);
    CHECK(dist(l5(2), -1.0) == 0.0);
    CHECK(dist(l5(4), 1.0) == 0.0);
    CHECK(dist(l5(10), 0.0) == 0.0);
    // mod 5, index 1 sends the generator 2 to i
    const auto c51 = character(5, 1);
    CHECK(dist(c51(2), cplx(0, 1)) == 0.0);
    CHECK(c51.parity() == Parity::Odd);
    CHECK(c51.order() == 4);
    // mod 4 odd character
    const auto c4 = character(4, 1);
    CHECK(c4.parity() == Parity::Odd);
    CHECK(dist(c4(3), -1.0) == 0.0);
    CHECK(dist(c4(-1), -1.0) == 0.0);
}

TEST_CASE("conductors") {
    // mod 8: (2/n) and (-8/n) are primitive, the mod-4 lift is not
    CHECK(character(8, 1).conductor() == 8);
    CHECK(character(8, 2).conductor() == 4);
    CHECK(character(8, 3).conductor() == 8);
    CHECK_FALSE(character(8, 2).is_primitive());
    // mod 12 conductors are 1, 3, 4, 12
    std::vector<int> conds;
    for (const auto& c : enumerate_characters(12)) conds.push_back(c.conductor());
    std::sort(conds.begin(), conds.end());
    CHECK(conds == std::vector<int>{1, 3, 4, 12});
    // the primitive character inducing chi agrees with chi on units
    const auto lift = character(8, 2);
    const auto prim = primitive_character(lift);
    CHECK(prim.modulus() == 4);
    for (int n = 1; n < 40; n += 2) CHECK(dist(prim(n), lift(n)) < 1e-15);
}

TEST_CASE("property: complete multiplicativity and periodicity") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long long> pick(-500, 500);
    for (int q : {3, 4, 5, 7, 8, 9, 12, 15, 16, 21, 24, 30}) {
        for (const auto& chi : enumerate_characters(q)) {
            for (int t = 0; t < 50; ++t) {
                const long long m = pick(rng), n = pick(rng);
                CHECK(dist(chi(m * n), chi(m) * chi(n)) < 1e-13);
                CHECK(dist(chi(n + q), chi(n)) == 0.0);
            }
        }
    }
}

TEST_CASE("property: orthogonality") {
    for (int q : {5, 7, 8, 9, 12, 20}) {
        const auto chars = enumerate_characters(q);
        for (const auto& a : chars) {
            for (const auto& b : chars) {
                cplx s = 0.0;
                for (int n = 0; n < q; ++n) s += a(n) * std::conj(b(n));
                const double expect = a == b ? euler_phi(q) : 0.0;
                CHECK(dist(s, expect) < 1e-12);
            }
        }
    }
}

TEST_CASE("Gauss sums: closed values and invariants") {
    CHECK(dist(gauss_sum(character(5, 2)), std::sqrt(5.0)) < 1e-13);
    CHECK(dist(gauss_sum(character(3, 1)), cplx(0, std::sqrt(3.0))) < 1e-13);
    CHECK(dist(gauss_sum(character(4, 1)), cplx(0, 2)) < 1e-13);
    CHECK(dist(gauss_sum(character(8, 1)), std::sqrt(8.0)) < 1e-13);
    for (int q = 3; q <= 30; ++q) {
        for (const auto& chi : enumerate_characters(q)) {
            if (!chi.is_primitive()) continue;
            const cplx t = gauss_sum(chi);
            CHECK(std::abs(std::norm(t) - q) < 1e-10);
            const double sign = chi.parity() == Parity::Even ? 1.0 : -1.0;
            CHECK(dist(t * gauss_sum(chi.conjugate()), sign * q) < 1e-10);
        }
    }
}

TEST_CASE("unit roots are exact at quarter turns") {
    CHECK(unit_root(1, 4) == cplx(0, 1));
    CHECK(unit_root(2, 4) == cplx(-1, 0));
    CHECK(unit_root(3, 4) == cplx(0, -1));
    CHECK(unit_root(8, 4) == cplx(1, 0));
}
