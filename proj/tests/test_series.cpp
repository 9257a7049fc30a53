#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tbl/bessel.hpp"
#include "tbl/errors.hpp"
#include "tbl/series.hpp"
#include "tbl/specfun.hpp"

using namespace tbl;

namespace {

constexpr double pi = std::numbers::pi;

double rel(cplx got, cplx want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

// Reference values computed independently with mpmath (20-25 digits) or a
// numpy brute-force sum.
TEST_CASE("bessel_series against references") {
    const auto l5 = character(5, 2);
    const auto r = bessel_series(DivisorSumSpec::twisted(0.0, l5), 0.0, 1.0, 4.0);
    CHECK(rel(r.value, 0.13454471433165034) < 1e-12);
    // sum d(n) n^0.15 K_0.3(sqrt(n/2)), 1e5-term brute reference
    const auto d = bessel_series(DivisorSumSpec::sigma(0.0), 0.3, 1.0, 0.5);
    CHECK(rel(d.value, 12.574701828650982) < 1e-11);
}

TEST_CASE("bessel_series at half order reduces to an exponential sum") {
    // n^(1/4) K_(1/2)(a sqrt(n x)) = sqrt(pi / (2 a sqrt x)) e^(-a sqrt(n x))
    const auto spec = DivisorSumSpec::twisted(-0.5, character(7, 1));
    for (double x : {0.21, 0.9, 2.5}) {
        const double a = 1.3;
        const auto k = bessel_series(spec, 0.5, a, x);
        const auto e = exponential_series(spec, a * std::sqrt(x));
        CHECK(rel(k.value, std::sqrt(pi / (2.0 * a * std::sqrt(x))) * e.value) < 1e-12);
    }
}

TEST_CASE("property: truncation certificates are honest") {
    const auto spec = DivisorSumSpec::two_char(0.4, character(5, 1), character(3, 1));
    for (double tol : {1e-6, 1e-9, 1e-12}) {
        const auto loose = bessel_series(spec, 0.7, 0.8, 0.3, tol);
        const auto tight = bessel_series(spec, 0.7, 0.8, 0.3, 1e-17);
        CHECK(tight.terms >= loose.terms);
        CHECK(std::abs(tight.value - loose.value) <= loose.tail_bound + 1e-15 * std::abs(tight.value));
        CHECK(loose.tail_bound <= tol * std::abs(loose.value));
    }
}

TEST_CASE("bessel_series respects the term cap") {
    CHECK_THROWS_AS(bessel_series(DivisorSumSpec::sigma(0.0), 0.0, 0.05, 0.01, 1e-16, 1000), ConvergenceError);
    CHECK_THROWS_AS(bessel_series(DivisorSumSpec::sigma(0.0), 0.0, -1.0, 1.0), DomainError);
}

TEST_CASE("shifted_power_series") {
    const auto unit = DivisorSumSpec::unit();
    CHECK(rel(shifted_power_series(unit, 2.0, 0.0).value, pi * pi / 6.0) < 1e-13);
    CHECK(rel(shifted_power_series(unit, 1.25, 0.7).value, 3.79105765932309414) < 1e-12);
    CHECK(rel(shifted_power_series(unit, 2.0, 0.7, true).value, 0.851701236684228028) < 1e-12);
    CHECK(std::abs(shifted_power_series(unit, 1.0, 0.0, true).value) == 0.0);
    const auto l5 = character(5, 2), c71 = character(7, 1);
    CHECK(rel(shifted_power_series(DivisorSumSpec::twisted(-0.25, l5), 1.6, 0.7).value, 0.8853630467235423) < 1e-12);
    CHECK(rel(shifted_power_series(DivisorSumSpec::two_char(-0.5, l5, c71), 2.0, 3.3, true).value,
              cplx(0.69858664487777110, 0.16971440712169451)) < 1e-12);
    CHECK_THROWS_AS(shifted_power_series(unit, 1.0, 0.5), DivergenceError);
}

TEST_CASE("log_kernel_series") {
    const auto unit = DivisorSumSpec::unit();
    CHECK(rel(log_kernel_series(unit, 0.5).value, 2.34192193646671281) < 1e-12);
    CHECK(rel(log_kernel_series(unit, 0.5, 1).value, 1.27670573324657343) < 1e-12);
    CHECK(rel(log_kernel_series(DivisorSumSpec::twisted(0.0, character(5, 2)), 2.7).value, 0.3604552284841585) <
          1e-12);
    CHECK_THROWS_AS(log_kernel_series(unit, 2.0), ExcludedParameter);
    // the n = c term tends to 1/(2 n^2): no jump across c = 3, so the central
    // differences at two step sizes agree to second order
    auto g = [&](double h) { return log_kernel_series(unit, 3.0 * (1.0 + h)).value; };
    CHECK(std::abs((g(1e-5) - g(-1e-5)) - (g(3e-5) - g(-3e-5)) / 3.0) < 1e-9);
}

TEST_CASE("cohen_tail_series") {
    const auto unit = DivisorSumSpec::unit();
    CHECK(rel(cohen_tail_series(unit, 0.3, 1, 0.7, 0, false).value, -2.78169036752891970) < 1e-12);
    CHECK(rel(cohen_tail_series(DivisorSumSpec::bar_twisted(-0.3, character(7, 1)), cplx(-1.7), 2.3).value,
              cplx(-0.23969714115903631, -0.06936276094768527)) < 1e-12);
    CHECK_THROWS_AS(cohen_tail_series(unit, 0.3, 1, 1.0, 0, false), ExcludedParameter);
    CHECK_THROWS_AS(cohen_tail_series(DivisorSumSpec::sigma(0.0), cplx(1.5), 0.7), DivergenceError);
    // near n = Q the summand tends to e Q^(e-1) / (2Q)
    auto g = [&](double h) { return cohen_tail_series(unit, cplx(-1.7), 2.0 * (1.0 + h)).value; };
    CHECK(std::abs((g(1e-5) - g(-1e-5)) - (g(3e-5) - g(-3e-5)) / 3.0) < 1e-9);
}

TEST_CASE("adaptive_integral") {
    CHECK(std::abs(adaptive_integral([](double t) { return t * t; }, {0.5, 1.5, 1e-14, 40}) - 13.0 / 12.0) < 1e-14);
    CHECK(std::abs(adaptive_integral([](double t) { return 1.0 / t; }, {1.0, 2.0, 1e-14, 40}) - std::log(2.0)) <
          1e-14);
    // int cos(40 sqrt t) dt = [u sin(40u)/20 + cos(40u)/800] at u = sqrt t
    auto F = [](double t) {
        const double u = std::sqrt(t);
        return u * std::sin(40.0 * u) / 20.0 + std::cos(40.0 * u) / 800.0;
    };
    const double got = adaptive_integral([](double t) { return std::cos(40.0 * std::sqrt(t)); }, {0.5, 3.0, 1e-12, 40});
    CHECK(std::abs(got - (F(3.0) - F(0.5))) < 1e-9);
    CHECK_THROWS_AS(adaptive_integral([](double t) { return 1.0 / std::sqrt(std::abs(t - 0.3)); }, {0.0, 1.0, 1e-14, 8}),
                    QuadratureError);
}

TEST_CASE("voronoi kernels at half order") {
    const double c = std::cos(pi / 4), s = std::sin(pi / 4);
    for (int i = 0; i < 50; ++i) {
        const double u = 0.2 + 0.8 * i;
        const double K = std::sqrt(pi / (2 * u)) * std::exp(-u);
        const double J = std::sqrt(2 / (pi * u)) * std::sin(u), Y = -std::sqrt(2 / (pi * u)) * std::cos(u);
        const double k = 2 / pi * K;
        CHECK(std::abs(voronoi_kernel(KernelVariant::EvenCos, 0.5, u) - ((k - Y) * c - J * s)) < 1e-11);
        CHECK(std::abs(voronoi_kernel(KernelVariant::OddSin, 0.5, u) - ((k - Y) * s + J * c)) < 1e-11);
        CHECK(std::abs(voronoi_kernel(KernelVariant::OddPlusY, 0.5, u) - ((k + Y) * s - J * c)) < 1e-11);
        CHECK(std::abs(voronoi_kernel(KernelVariant::EvenPlusY, 0.5, u) - ((k + Y) * c + J * s)) < 1e-11);
    }
    for (auto v : {KernelVariant::EvenCos, KernelVariant::OddSin, KernelVariant::OddPlusY, KernelVariant::EvenPlusY})
        CHECK(std::abs(voronoi_kernel(v, 0.25, 400.0)) * std::sqrt(400.0) < 2.0);
    CHECK_THROWS_AS(voronoi_kernel(KernelVariant::EvenCos, 0.25, 0.0), DomainError);
}

TEST_CASE("voronoi_series is deterministic and validates input") {
    VoronoiSeriesSpec vs;
    vs.coefficients = DivisorSumSpec::twisted(-0.25, character(5, 2));
    vs.nu = 0.25;
    vs.modulus = 5;
    vs.weight_power = -0.125;
    vs.f = [](double t) { return std::exp(-t); };
    vs.alpha = 0.5;
    vs.beta = 3.4;
    vs.terms = 400;
    const auto a = voronoi_series(vs), b = voronoi_series(vs);
    CHECK(a.smoothed == b.smoothed);
    CHECK(a.window_mean == b.window_mean);
    CHECK(a.term_values.size() == 401);
    vs.terms = 100;
    CHECK_THROWS_AS(voronoi_series(vs), DomainError);
    vs.terms = 400;
    vs.beta = 0.4;
    CHECK_THROWS_AS(voronoi_series(vs), DomainError);
}

TEST_CASE("TBL_MAX_TERMS is read from the environment") {
    CHECK(max_series_terms() > 0);
}
