#include "tbl/bessel.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tbl/errors.hpp"
#include "tbl/specfun.hpp"

namespace tbl {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = 1e-16;
constexpr double fpmin = std::numeric_limits<double>::min() / eps;
constexpr int max_iter = 100000;

// Taylor coefficients of 1/Gamma(1+x) = sum_m c[m] x^m
constexpr std::array<double, 28> rgamma_taylor = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
};

// Temme's auxiliary gamma quantities for |mu| <= 1/2.
struct TemmeGamma {
    double gam1;   // (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
    double gam2;   // (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
    double gampl;  // 1/Gamma(1+mu)
    double gammi;  // 1/Gamma(1-mu)
};

TemmeGamma temme_gamma(double mu) {
    double odd = 0.0, even = 0.0;
    for (int m = static_cast<int>(rgamma_taylor.size()) - 1; m >= 0; --m) {
        if (m % 2) odd = odd * mu * mu + rgamma_taylor[static_cast<size_t>(m)];
        else even = even * mu * mu + rgamma_taylor[static_cast<size_t>(m)];
    }
    // odd = sum_{m odd} c_m mu^(m-1), even = sum_{m even} c_m mu^m
    TemmeGamma g{};
    g.gam1 = -odd;
    g.gam2 = even;
    g.gampl = even + mu * odd;
    g.gammi = even - mu * odd;
    return g;
}

double digamma_int(int m) {  // psi(m), m >= 1
    double s = -euler_gamma;
    for (int k = 1; k < m; ++k) s += 1.0 / k;
    return s;
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

bool is_integer(double nu) { return nu == std::floor(nu); }

void require_positive(double x, const char* name) {
    if (!(x > 0.0)) throw DomainError(std::string(name) + ": argument must be positive");
}

void require_order(double nu, const char* name) {
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw DomainError(std::string(name) + ": order must be finite and >= 0");
}

}  // namespace

double rgamma(double x) {
    if (x <= 0.0 && is_integer(x)) return 0.0;
    if (std::abs(x - 1.0) <= 0.5) {
        const double mu = x - 1.0;
        double s = 0.0;
        for (int m = static_cast<int>(rgamma_taylor.size()) - 1; m >= 0; --m)
            s = s * mu + rgamma_taylor[static_cast<size_t>(m)];
        return s;
    }
    if (x > 171.0) return 0.0;
    return 1.0 / gamma(x);
}

double bessel_I(double nu, double x) {
    if (x < 0.0) throw DomainError("bessel_I: argument must be >= 0");
    if (x == 0.0) return nu == 0.0 ? 1.0 : (nu > 0.0 || is_integer(nu) ? 0.0 : std::numeric_limits<double>::infinity());
    const double y = 0.25 * x * x;
    double term = std::pow(0.5 * x, nu) * rgamma(nu + 1.0);
    double sum = term;
    // for negative non-integer order the leading coefficients can vanish; keep going
    for (int n = 1; n < max_iter; ++n) {
        const double denom = n * (nu + n);
        if (denom == 0.0) {
            // 1/Gamma(nu+n+1) restarts from a nonzero value after a pole
            term = std::pow(0.5 * x, nu + 2.0 * n) * rgamma(nu + n + 1.0) / factorial(n);
        } else {
            term *= y / denom;
        }
        sum += term;
        if (n > -nu && std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

namespace detail {

double bessel_K_scaled_temme_steed(double nu, double x) {
    nu = std::abs(nu);
    require_positive(x, "bessel_K");
    const int nl = static_cast<int>(nu + 0.5);
    const double xmu = nu - nl;
    const double xmu2 = xmu * xmu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;
    double rkmu, rk1;
    if (x < 2.0) {
        const double x2 = 0.5 * x;
        const double pimu = pi * xmu;
        const double fact = std::abs(pimu) < eps ? 1.0 : pimu / std::sin(pimu);
        double d = -std::log(x2);
        double e = xmu * d;
        const double fact2 = std::abs(e) < eps ? 1.0 : std::sinh(e) / e;
        const TemmeGamma g = temme_gamma(xmu);
        double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
        double sum = ff;
        e = std::exp(e);
        double p = 0.5 * e / g.gampl;
        double q = 0.5 / (e * g.gammi);
        double c = 1.0;
        d = x2 * x2;
        double sum1 = p;
        int i = 1;
        for (; i < max_iter; ++i) {
            ff = (i * ff + p + q) / (i * static_cast<double>(i) - xmu2);
            c *= d / i;
            p /= i - xmu;
            q /= i + xmu;
            const double del = c * ff;
            sum += del;
            sum1 += c * (p - i * ff);
            if (std::abs(del) < std::abs(sum) * eps) break;
        }
        if (i >= max_iter) throw ConvergenceError("bessel_K: Temme series did not converge");
        const double ex = std::exp(x);
        rkmu = sum * ex;
        rk1 = sum1 * xi2 * ex;
    } else {
        double b = 2.0 * (1.0 + x);
        double d = 1.0 / b;
        double h = d, delh = d;
        double q1 = 0.0, q2 = 1.0;
        const double a1 = 0.25 - xmu2;
        double q = a1, c = a1;
        double a = -a1;
        double s = 1.0 + q * delh;
        int i = 1;
        for (; i < max_iter; ++i) {
            a -= 2 * i;
            c = -a * c / (i + 1.0);
            const double qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh = (b * d - 1.0) * delh;
            h += delh;
            const double dels = q * delh;
            s += dels;
            if (std::abs(dels / s) < eps) break;
        }
        if (i >= max_iter) throw ConvergenceError("bessel_K: continued fraction did not converge");
        h = a1 * h;
        rkmu = std::sqrt(pi / (2.0 * x)) / s;
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
    }
    for (int i = 1; i <= nl; ++i) {
        const double t = (xmu + i) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = t;
    }
    return rkmu;
}

double bessel_K_scaled_asymptotic(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0, prev = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k * x);
        if (term == 0.0) break;
        if (std::abs(term) > std::abs(prev)) break;  // smallest term reached
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        prev = term;
    }
    return std::sqrt(pi / (2.0 * x)) * sum;
}

BesselJY bessel_JY_steed(double xnu, double x) {
    require_order(xnu, "bessel_JY");
    require_positive(x, "bessel_JY");
    const int nl = x < 2.0 ? static_cast<int>(xnu + 0.5) : std::max(0, static_cast<int>(xnu - x + 1.5));
    const double xmu = xnu - nl;
    const double xmu2 = xmu * xmu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;
    const double w = xi2 / pi;

    // CF1: J'_nu / J_nu
    int isign = 1;
    double h = xnu * xi;
    if (h < fpmin) h = fpmin;
    double b = xi2 * xnu, d = 0.0, c = h;
    int i = 0;
    for (; i < max_iter; ++i) {
        b += xi2;
        d = b - d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = b - 1.0 / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) < eps) break;
    }
    if (i >= max_iter) throw ConvergenceError("bessel_JY: CF1 did not converge");

    double rjl = isign * fpmin;
    double rjpl = h * rjl;
    const double rjl1 = rjl;
    double fact = xnu * xi;
    for (int l = nl - 1; l >= 0; --l) {
        const double t = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * t - rjl;
        rjl = t;
    }
    if (rjl == 0.0) rjl = eps;
    const double f = rjpl / rjl;

    double rjmu, rymu, ry1;
    if (x < 2.0) {
        const double x2 = 0.5 * x;
        const double pimu = pi * xmu;
        const double fct = std::abs(pimu) < eps ? 1.0 : pimu / std::sin(pimu);
        d = -std::log(x2);
        double e = xmu * d;
        const double fact2 = std::abs(e) < eps ? 1.0 : std::sinh(e) / e;
        const TemmeGamma g = temme_gamma(xmu);
        double ff = 2.0 / pi * fct * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
        e = std::exp(e);
        double p = e / (g.gampl * pi);
        double q = 1.0 / (e * pi * g.gammi);
        const double pimu2 = 0.5 * pimu;
        const double fact3 = std::abs(pimu2) < eps ? 1.0 : std::sin(pimu2) / pimu2;
        const double r = pi * pimu2 * fact3 * fact3;
        c = 1.0;
        d = -x2 * x2;
        double sum = ff + r * q;
        double sum1 = p;
        for (i = 1; i < max_iter; ++i) {
            ff = (i * ff + p + q) / (i * static_cast<double>(i) - xmu2);
            c *= d / i;
            p /= i - xmu;
            q /= i + xmu;
            const double del = c * (ff + r * q);
            sum += del;
            sum1 += c * p - i * del;
            if (std::abs(del) < (1.0 + std::abs(sum)) * eps) break;
        }
        if (i >= max_iter) throw ConvergenceError("bessel_JY: Temme series did not converge");
        rymu = -sum;
        ry1 = -sum1 * xi2;
        const double rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2: p + iq by the modified Lentz method
        double a = 0.25 - xmu2;
        double p = -0.5 * xi, q = 1.0;
        const double br = 2.0 * x;
        double bi = 2.0;
        double fct = a * xi / (p * p + q * q);
        double cr = br + q * fct, ci = bi + p * fct;
        double den = br * br + bi * bi;
        double dr = br / den, di = -bi / den;
        double dlr = cr * dr - ci * di, dli = cr * di + ci * dr;
        double t = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = t;
        for (i = 1; i < max_iter; ++i) {
            a += 2 * i;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if (std::abs(dr) + std::abs(di) < fpmin) dr = fpmin;
            fct = a / (cr * cr + ci * ci);
            cr = br + cr * fct;
            ci = bi - ci * fct;
            if (std::abs(cr) + std::abs(ci) < fpmin) cr = fpmin;
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            t = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = t;
            if (std::abs(dlr - 1.0) + std::abs(dli) < eps) break;
        }
        if (i >= max_iter) throw ConvergenceError("bessel_JY: CF2 did not converge");
        const double gam = (p - f) / q;
        rjmu = std::sqrt(w / ((p - f) * gam + q));
        rjmu = std::copysign(rjmu, rjl);
        rymu = rjmu * gam;
        const double rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }
    const double scale = rjmu / rjl;
    const double rj = rjl1 * scale;
    for (i = 1; i <= nl; ++i) {
        const double t = (xmu + i) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = t;
    }
    return {rj, rymu};
}

BesselJY bessel_JY_hankel(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    double P = 1.0, Q = 0.0;
    double term = 1.0, prev = 1.0;
    for (int k = 1; k < 400; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k * x);
        if (term == 0.0) break;
        if (std::abs(term) > std::abs(prev)) break;
        // k = 1, 2, 3, 4, ... contribute +Q, -P, -Q, +P, ...
        switch (k % 4) {
            case 1: Q += term; break;
            case 2: P -= term; break;
            case 3: Q -= term; break;
            case 0: P += term; break;
        }
        if (std::abs(term) < 1e-17) break;
        prev = term;
    }
    // chi = x - (nu/2 + 1/4) pi
    const double phi = (0.5 * nu + 0.25) * pi;
    const double cx = std::cos(x), sx = std::sin(x);
    const double cp = std::cos(phi), sp = std::sin(phi);
    const double cchi = cx * cp + sx * sp;
    const double schi = sx * cp - cx * sp;
    const double amp = std::sqrt(2.0 / (pi * x));
    return {amp * (P * cchi - Q * schi), amp * (P * schi + Q * cchi)};
}

double bessel_K_reflection(double nu, double x) {
    return 0.5 * pi * (bessel_I(-nu, x) - bessel_I(nu, x)) / std::sin(pi * nu);
}

double bessel_K_integer_series(int n, double x) {
    n = std::abs(n);
    const double x2 = 0.5 * x;
    const double y = x2 * x2;
    double finite = 0.0;
    if (n > 0) {
        double term = factorial(n - 1);
        for (int k = 0; k < n; ++k) {
            finite += term;
            if (k + 1 < n) term *= -y / ((k + 1.0) * (n - k - 1.0));
        }
        finite *= 0.5 * std::pow(x2, -n);
    }
    const double sgn = n % 2 ? 1.0 : -1.0;  // (-1)^(n+1)
    double tail = 0.0;
    double term = 1.0 / factorial(n);
    for (int k = 0; k < 500; ++k) {
        const double t = (digamma_int(k + 1) + digamma_int(n + k + 1)) * term;
        tail += t;
        if (k > 2 && std::abs(t) < 1e-17 * std::abs(tail)) break;
        term *= y / ((k + 1.0) * (n + k + 1.0));
    }
    tail *= -sgn * 0.5 * std::pow(x2, n);
    return finite + sgn * std::log(x2) * bessel_I(n, x) + tail;
}

double bessel_J_series(double nu, double x) {
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    const double y = -0.25 * x * x;
    double sum = 0.0;
    double term = std::pow(0.5 * x, nu) * rgamma(nu + 1.0);
    for (int n = 0; n < max_iter; ++n) {
        if (n > 0) {
            const double denom = n * (nu + n);
            if (denom == 0.0) term = std::pow(0.5 * x, nu + 2.0 * n) * rgamma(nu + n + 1.0) / factorial(n) * (n % 2 ? -1.0 : 1.0);
            else term *= y / denom;
        }
        sum += term;
        if (n > std::abs(0.5 * x) + std::max(0.0, -nu) && std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum))) break;
    }
    return sum;
}

double bessel_Y_reflection(double nu, double x) {
    const double s = std::sin(pi * nu), c = std::cos(pi * nu);
    return (bessel_J_series(nu, x) * c - bessel_J_series(-nu, x)) / s;
}

double bessel_Y_integer_series(int n, double x) {
    const double x2 = 0.5 * x;
    const double y = x2 * x2;
    double finite = 0.0;
    if (n > 0) {
        double term = factorial(n - 1);
        for (int k = 0; k < n; ++k) {
            finite += term;
            if (k + 1 < n) term *= y / ((k + 1.0) * (n - k - 1.0));
        }
        finite *= -std::pow(x2, -n) / pi;
    }
    double tail = 0.0;
    double term = 1.0 / factorial(n);
    for (int k = 0; k < 500; ++k) {
        const double t = (digamma_int(k + 1) + digamma_int(n + k + 1)) * term;
        tail += t;
        if (k > x2 && std::abs(t) < 1e-17 * std::max(1.0, std::abs(tail))) break;
        term *= -y / ((k + 1.0) * (n + k + 1.0));
    }
    tail *= -std::pow(x2, n) / pi;
    return finite + 2.0 / pi * std::log(x2) * bessel_J_series(n, x) + tail;
}

}  // namespace detail

double bessel_K_scaled(double nu, double x) {
    require_positive(x, "bessel_K");
    if (!std::isfinite(nu)) throw DomainError("bessel_K: order must be finite");
    nu = std::abs(nu);
    if (x > detail::k_asymptotic_cut && x > nu * nu) return detail::bessel_K_scaled_asymptotic(nu, x);
    return detail::bessel_K_scaled_temme_steed(nu, x);
}

double bessel_K(double nu, double x) {
    require_positive(x, "bessel_K");
    if (x > 740.0) return 0.0;
    return bessel_K_scaled(nu, x) * std::exp(-x);
}

BesselJY bessel_JY(double nu, double x) {
    require_order(nu, "bessel_JY");
    require_positive(x, "bessel_JY");
    if (x >= detail::jy_asymptotic_cut && x >= 2.0 * nu * nu) return detail::bessel_JY_hankel(nu, x);
    return detail::bessel_JY_steed(nu, x);
}

double bessel_J(double nu, double x) {
    require_order(nu, "bessel_J");
    if (x < 0.0) throw DomainError("bessel_J: argument must be >= 0");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    return bessel_JY(nu, x).J;
}

double bessel_Y(double nu, double x) {
    require_order(nu, "bessel_Y");
    require_positive(x, "bessel_Y");
    return bessel_JY(nu, x).Y;
}

}  // namespace tbl
