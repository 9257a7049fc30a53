#pragma once

#include <complex>

#include "tbl/characters.hpp"

namespace tbl {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

// Gamma by the Lanczos approximation (g = 607/128), reflection for Re s < 1/2.
cplx gamma(cplx s);
double gamma(double x);

// sin(pi s) with the real part reduced exactly first.
cplx sin_pi(cplx s);

// Hurwitz zeta(s, a), a in (0, 1]: Euler-Maclaurin for Re s >= -1, Hurwitz's
// reflection formula below.
cplx hurwitz_zeta(cplx s, double a);

cplx riemann_zeta(cplx s);

enum class LMethod { DirectSeries, HurwitzEM, FunctionalEquation, Bernoulli };

const char* to_string(LMethod m);

struct LEvaluation {
    cplx s;
    cplx value;
    LMethod method;
};

// L(s, chi) continued to the whole plane. Re s >= -1/2 uses the Hurwitz
// decomposition; further left the functional equation of the primitive
// character is applied, then the Euler factors of the imprimitive part.
LEvaluation dirichlet_L_eval(cplx s, const Character& chi);
cplx dirichlet_L(cplx s, const Character& chi);

// L(s, chi) = q^-s sum_a chi(a) zeta(s, a/q), always by Euler-Maclaurin.
cplx dirichlet_L_hurwitz(cplx s, const Character& chi);

long double bernoulli_number(int n);
long double bernoulli_polynomial(int n, long double x);

// B_{n,chi} = q^(n-1) sum_a chi(a) B_n(a/q).
cplx generalized_bernoulli(int n, const Character& chi);

// First derivative by Richardson-extrapolated central differences.
cplx L_derivative(cplx s0, const Character& chi, int order = 1);
// Same, with initial step h0; used to check step-size stability.
cplx L_derivative_step(cplx s0, const Character& chi, double h0);
cplx zeta_derivative(cplx s0);

// |L(s,chi) - i^-kappa tau/pi (2pi/q)^s Gamma(1-s) sin(pi(s+kappa)/2) L(1-s, conj chi)|
// with both L values from the Hurwitz route.
double functional_equation_residual(cplx s, const Character& chi);

// (e^w - 1)/w, accurate near w = 0.
cplx expm1_ratio(cplx w);

// x^s for real x > 0.
inline cplx rpow(double x, cplx s) { return std::exp(s * std::log(x)); }

}  // namespace tbl
