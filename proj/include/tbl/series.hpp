#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tbl/arith.hpp"

namespace tbl {

struct SeriesValue {
    cplx value;
    long long terms = 0;
    double tail_bound = 0.0;
};

// Global cap on series length; TBL_MAX_TERMS overrides the default.
long long max_series_terms();

// sum_{n>=1} f(n) n^(nu/2) K_nu(a sqrt(n x)), truncated once the tail bound
// (|f(n)| <= n^(m+1), K_nu(y) <= C sqrt(pi/2y) e^-y) is below tol |sum|.
SeriesValue bessel_series(const DivisorSumSpec& spec, double nu, double a, double x, double tol = 1e-16,
                          long long max_terms = 0);

// sum_{n>=1} f(n) e^(-b sqrt n)
SeriesValue exponential_series(const DivisorSumSpec& spec, double b, double tol = 1e-16, long long max_terms = 0);

// sum f(n) (n + c)^-p, or sum f(n) (n^-p - (n + c)^-p) with difference_form.
SeriesValue shifted_power_series(const DivisorSumSpec& spec, cplx p, double c, bool difference_form = false);

// sum f(n) log(n/c) / (n^extra (n^2 - c^2)), extra in {0, 1}.
SeriesValue log_kernel_series(const DivisorSumSpec& spec, double c, int extra_power = 0);

// sum f(n) (n^e - Q^e) / (n^extra (n^2 - Q^2)), extra in {0, 1}.
SeriesValue cohen_tail_series(const DivisorSumSpec& spec, cplx e, double Q, int extra_power = 0);

// Exponent e = nu - 2N + offset.
SeriesValue cohen_tail_series(const DivisorSumSpec& spec, double nu, int N, double Q, int offset, bool divide_by_n);

struct QuadratureSpec {
    double alpha = 0.0;
    double beta = 1.0;
    double tol = 1e-12;
    int max_depth = 40;
};

// Gauss-Kronrod (7, 15) with bisection.
double adaptive_integral(const std::function<double(double)>& f, const QuadratureSpec& q);

enum class KernelVariant {
    EvenCos,    // (2/pi K - Y) cos(pi nu/2) - J sin(pi nu/2)
    OddSin,     // (2/pi K - Y) sin(pi nu/2) + J cos(pi nu/2)
    OddPlusY,   // (2/pi K + Y) sin(pi nu/2) - J cos(pi nu/2)
    EvenPlusY,  // (2/pi K + Y) cos(pi nu/2) + J sin(pi nu/2)
};

const char* to_string(KernelVariant v);

double voronoi_kernel(KernelVariant variant, double nu, double u);

struct VoronoiSeriesSpec {
    DivisorSumSpec coefficients;  // b(n)
    KernelVariant variant = KernelVariant::EvenCos;
    double nu = 0.25;
    double modulus = 1.0;       // kernel argument 4 pi sqrt(n t / modulus)
    double weight_power = 0.0;  // integrand f(t) t^weight_power
    std::function<double(double)> f;
    double alpha = 0.5;
    double beta = 1.5;
    long long terms = 20000;
    double taper = 12.0;  // Kaiser shape parameter of the smoothing weight
};

struct VoronoiSeriesValue {
    cplx tapered;        // K(N) = sum_n I0(taper sqrt(1 - n/N)) / I0(taper) * term_n
    cplx smoothed;       // 2 K(N) - K(N/2)
    cplx window_mean;    // flat mean of the last 200 partial sums
    cplx last_partial;
    long long terms;
    std::vector<cplx> term_values;  // index 0 unused
};

// sum_n b(n) n^(nu/2) int_alpha^beta f(t) t^w Phi(4 pi sqrt(n t / M)) dt
// (without the outer prefactor). Terms are computed in parallel and summed
// in index order.
VoronoiSeriesValue voronoi_series(const VoronoiSeriesSpec& spec);

namespace detail {

// sum_{n > M} chi(n) n^-s and sum_{n > M} chi(n) log(n) n^-s.
cplx character_tail(cplx s, const Character& chi, long long M);
cplx character_log_tail(cplx s, const Character& chi, long long M);

// zeta(s, b) and its s-derivative for any b > 0, by Euler-Maclaurin.
std::pair<cplx, cplx> hurwitz_with_derivative(cplx s, double b);

// sum_{n > M} f(n) n^-w (log n factor with log_weight), exact via the
// hyperbola split of the convolution into character tails.
cplx dirichlet_tail(const DivisorSumSpec& spec, cplx w, long long M, bool log_weight);

}  // namespace detail

}  // namespace tbl
