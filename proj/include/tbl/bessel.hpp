#pragma once

namespace tbl {

// Real order, positive real argument.
double bessel_I(double nu, double x);
double bessel_K(double nu, double x);
// e^x K_nu(x); finite where K_nu itself underflows.
double bessel_K_scaled(double nu, double x);
double bessel_J(double nu, double x);
double bessel_Y(double nu, double x);

struct BesselJY {
    double J;
    double Y;
};
// J and Y together, sharing the continued-fraction work.
BesselJY bessel_JY(double nu, double x);

// 1/Gamma(x), zero at the poles.
double rgamma(double x);

namespace detail {

// Switch points between the series/continued-fraction and asymptotic branches.
inline constexpr double k_asymptotic_cut = 18.0;
inline constexpr double jy_asymptotic_cut = 14.0;

// Temme series (x <= 2) or Steed's CF2 (x > 2) for K, scaled by e^x.
double bessel_K_scaled_temme_steed(double nu, double x);
// Large-argument expansion for e^x K_nu(x), truncated at its smallest term.
double bessel_K_scaled_asymptotic(double nu, double x);

// Temme/Steed for J, Y (no asymptotic branch).
BesselJY bessel_JY_steed(double nu, double x);
// Hankel expansion, truncated at its smallest term.
BesselJY bessel_JY_hankel(double nu, double x);

// Definitional forms, kept as independent references.
// (pi/2)(I_{-nu} - I_nu)/sin(pi nu), non-integer nu.
double bessel_K_reflection(double nu, double x);
// Logarithmic series for integer order.
double bessel_K_integer_series(int n, double x);
// Power series for J, any real order.
double bessel_J_series(double nu, double x);
// (J_nu cos(pi nu) - J_{-nu})/sin(pi nu), non-integer nu.
double bessel_Y_reflection(double nu, double x);
double bessel_Y_integer_series(int n, double x);

}  // namespace detail

}  // namespace tbl
