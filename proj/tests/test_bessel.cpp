#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tbl/bessel.hpp"
#include "tbl/errors.hpp"
#include "tbl/series.hpp"

using namespace tbl;

namespace {

constexpr double pi = std::numbers::pi;

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

// Reference values computed independently with mpmath at 30 digits.
TEST_CASE("K and I against reference values") {
    CHECK(rel(bessel_K(0.25, 0.7), 0.68057536440105945) < 1e-13);
    CHECK(rel(bessel_K(2.5, 30.0), 2.3624987811047992e-14) < 1e-13);
    CHECK(rel(bessel_K(0.0, 1.0), 0.42102443824070833) < 1e-13);
    CHECK(rel(bessel_K(1.0, 0.01), 99.973894118296246) < 1e-13);
    CHECK(rel(bessel_K(3.7, 5.0), 0.012498951966274488) < 1e-13);
    CHECK(rel(bessel_K(0.5, 17.9), 4.9861139217606074e-9) < 1e-13);
    CHECK(rel(bessel_K(0.5, 18.1), 4.0596680957442151e-9) < 1e-13);
    CHECK(rel(bessel_I(0.3, 4.0), 11.148917207802894) < 1e-13);
    CHECK(rel(bessel_I(2.0, 0.5), 0.031906149177738254) < 1e-13);
    CHECK(rel(bessel_I(0.0, 25.0), 5774560606.4663103) < 1e-13);
}

TEST_CASE("J and Y against reference values") {
    struct Row {
        double nu, x, j, y;
    };
    const Row rows[] = {
        {0.25, 10.0, -0.20639378685517281, 0.14493043908327076},
        {1.0, 50.0, -0.097511828125175138, -0.056795668562014768},
        {0.0, 0.5, 0.9384698072408129, -0.44451873350670656},
        {2.5, 13.9, -0.21564082704250664, 0.0046046085458916031},
        {2.5, 14.1, -0.21081511325694933, -0.037402087598565881},
        {0.75, 3.0, 0.21619977233493381, 0.41082595072183639},
    };
    for (const auto& r : rows) {
        const auto jy = bessel_JY(r.nu, r.x);
        CHECK(std::abs(jy.J - r.j) < 1e-13);
        CHECK(std::abs(jy.Y - r.y) < 1e-12);
    }
}

TEST_CASE("half-order closed forms") {
    for (double x = 0.1; x <= 100.0; x *= 1.37) {
        const double s = std::sqrt(pi / (2.0 * x));
        CHECK(rel(bessel_K(0.5, x), s * std::exp(-x)) < 1e-11);
        CHECK(rel(bessel_K(1.5, x), s * std::exp(-x) * (1.0 + 1.0 / x)) < 1e-11);
        const double c = std::sqrt(2.0 / (pi * x));
        CHECK(std::abs(bessel_J(0.5, x) - c * std::sin(x)) < 1e-11 * c);
        CHECK(std::abs(bessel_Y(0.5, x) + c * std::cos(x)) < 1e-11 * c);
        CHECK(rel(bessel_I(0.5, x), c * std::sinh(x)) < 1e-11);
    }
}

TEST_CASE("K0 against its integral representation") {
    for (double x : {0.2, 0.5, 1.0, 2.0, 3.5, 5.0, 8.0, 12.0, 20.0, 30.0}) {
        // K0(x) = int_0^inf exp(-x cosh t) dt; the integrand is below 1e-300 past t = 8
        const double upper = std::acosh(700.0 / x + 1.0);
        const double ref = adaptive_integral([x](double t) { return std::exp(-x * std::cosh(t)); },
                                             {0.0, upper, 1e-13 * std::exp(-x), 40});
        CHECK(rel(bessel_K(0.0, x), ref) < 1e-10);
    }
}

TEST_CASE("property: Wronskian J_{nu+1} Y_nu - J_nu Y_{nu+1} = 2/(pi x)") {
    const double pts[][2] = {{0.0, 0.3}, {0.25, 1.0}, {0.5, 2.2}, {1.0, 5.0}, {1.7, 9.0},
                             {2.5, 13.99}, {2.5, 14.01}, {0.3, 30.0}, {3.3, 60.0}, {0.9, 150.0}};
    for (const auto& p : pts) {
        const double nu = p[0], x = p[1];
        const auto a = bessel_JY(nu, x), b = bessel_JY(nu + 1.0, x);
        const double w = b.J * a.Y - a.J * b.Y;
        CHECK(std::abs(w - 2.0 / (pi * x)) < 1e-9 * 2.0 / (pi * x) + 1e-15);
    }
}

TEST_CASE("property: branch continuity at the cutoffs") {
    for (double nu : {0.0, 0.25, 0.5, 1.3, 2.0}) {
        const double xk = detail::k_asymptotic_cut, xj = detail::jy_asymptotic_cut;
        const double e = 1e-12;
        CHECK(rel(bessel_K_scaled(nu, xk - e), bessel_K_scaled(nu, xk + e)) < 1e-9);
        const auto lo = bessel_JY(nu, xj - e), hi = bessel_JY(nu, xj + e);
        CHECK(std::abs(lo.J - hi.J) < 1e-9);
        CHECK(std::abs(lo.Y - hi.Y) < 1e-9);
        // the two branches themselves agree at the cut
        CHECK(rel(detail::bessel_K_scaled_temme_steed(nu, xk), detail::bessel_K_scaled_asymptotic(nu, xk)) < 1e-9);
        const auto s = detail::bessel_JY_steed(nu, xj), h = detail::bessel_JY_hankel(nu, xj);
        CHECK(std::abs(s.J - h.J) < 1e-9);
        CHECK(std::abs(s.Y - h.Y) < 1e-9);
    }
}

TEST_CASE("independent definitional forms") {
    for (double x : {0.3, 1.0, 4.0, 9.0}) {
        // the K forms subtract I-sized terms: they keep about 16 - 0.87 x digits
        if (x < 5.0) CHECK(rel(bessel_K(0.3, x), detail::bessel_K_reflection(0.3, x)) < 1e-9);
        if (x < 5.0) CHECK(rel(bessel_K(2.0, x), detail::bessel_K_integer_series(2, x)) < 1e-10);
        CHECK(std::abs(bessel_J(0.7, x) - detail::bessel_J_series(0.7, x)) < 1e-12);
        CHECK(std::abs(bessel_Y(0.7, x) - detail::bessel_Y_reflection(0.7, x)) < 1e-10);
        CHECK(std::abs(bessel_Y(1.0, x) - detail::bessel_Y_integer_series(1, x)) < 1e-10);
    }
}

TEST_CASE("symmetry, near-integer orders and domain") {
    CHECK(bessel_K(-0.7, 2.0) == bessel_K(0.7, 2.0));
    // orders 1e-6 away from an integer stay continuous
    CHECK(rel(bessel_K(1.0 + 1e-6, 1.5), bessel_K(1.0, 1.5)) < 1e-5);
    CHECK(rel(bessel_K(2.0 - 1e-9, 0.8), bessel_K(2.0, 0.8)) < 1e-8);
    CHECK_THROWS_AS(bessel_K(0.5, 0.0), DomainError);
    CHECK_THROWS_AS(bessel_K(0.5, -1.0), DomainError);
}
