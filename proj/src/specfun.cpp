#include "tbl/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "tbl/errors.hpp"
#include "tbl/summation.hpp"

namespace tbl {

namespace {

constexpr double pi = std::numbers::pi;

constexpr double lanczos_g = 607.0 / 128.0;
constexpr std::array<double, 15> lanczos_c = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5,
};

// B_{2j} / (2j)!, j = 1..12
const std::array<double, 12>& em_coefficients() {
    static const std::array<double, 12> c = [] {
        std::array<double, 12> out{};
        double fact = 1.0;
        for (int j = 1; j <= 12; ++j) {
            fact *= (2.0 * j - 1.0) * (2.0 * j);
            out[static_cast<size_t>(j - 1)] = static_cast<double>(bernoulli_number(2 * j)) / fact;
        }
        return out;
    }();
    return c;
}

int em_head(cplx s) { return std::max(15, static_cast<int>(std::ceil(std::abs(s.imag()))) + 10); }

// Euler-Maclaurin pieces of zeta(s, a) beyond the pole term.
cplx em_regular_part(cplx s, double a, int M) {
    Accumulator acc;
    for (int n = 0; n < M; ++n) acc += std::exp(-s * std::log(n + a));
    const double X = M + a;
    const cplx Xs = std::exp(-s * std::log(X));
    acc += 0.5 * Xs;
    cplx poch = s;
    cplx pw = Xs / X;
    const auto& c = em_coefficients();
    for (int j = 1; j <= 12; ++j) {
        acc += c[static_cast<size_t>(j - 1)] * poch * pw;
        poch *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
        pw /= X * X;
    }
    return acc.value();
}

bool is_nonpositive_integer(cplx s) {
    return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

cplx L_functional_equation(cplx s, const Character& chi) {
    const Character psi = primitive_character(chi);
    const int f = psi.modulus();
    const double kappa = psi.parity() == Parity::Odd ? 1.0 : 0.0;
    const cplx ikappa = kappa == 1.0 ? cplx(0.0, -1.0) : cplx(1.0, 0.0);
    cplx factor = ikappa * gauss_sum(psi) / pi * rpow(2.0 * pi / f, s) * gamma(1.0 - s) *
                  sin_pi((s + kappa) / 2.0);
    cplx value = factor * dirichlet_L_hurwitz(1.0 - s, psi.conjugate());
    // Euler factors for primes dividing q
    int q = chi.modulus();
    for (int p = 2; p <= q; ++p) {
        if (q % p) continue;
        while (q % p == 0) q /= p;
        value *= 1.0 - psi(p) * rpow(static_cast<double>(p), -s);
    }
    return value;
}

}  // namespace

cplx expm1_ratio(cplx w) {
    if (std::abs(w) < 0.5) {
        cplx term = 1.0, sum = 1.0;
        for (int n = 2; n < 30; ++n) {
            term *= w / static_cast<double>(n);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return (std::exp(w) - 1.0) / w;
}

const char* to_string(LMethod m) {
    switch (m) {
        case LMethod::DirectSeries: return "DirectSeries";
        case LMethod::HurwitzEM: return "HurwitzEM";
        case LMethod::FunctionalEquation: return "FunctionalEquation";
        case LMethod::Bernoulli: return "Bernoulli";
    }
    return "?";
}

cplx sin_pi(cplx s) {
    double x = s.real();
    x -= 2.0 * std::round(x / 2.0);  // [-1, 1]
    double sx, cx;
    if (x == 0.0 || x == 1.0 || x == -1.0) {
        sx = 0.0;
        cx = x == 0.0 ? 1.0 : -1.0;
    } else if (x == 0.5 || x == -0.5) {
        sx = x > 0 ? 1.0 : -1.0;
        cx = 0.0;
    } else {
        sx = std::sin(pi * x);
        cx = std::cos(pi * x);
    }
    const double y = pi * s.imag();
    return {sx * std::cosh(y), cx * std::sinh(y)};
}

cplx gamma(cplx s) {
    if (is_nonpositive_integer(s)) throw PoleError("gamma has a pole at s = " + std::to_string(s.real()));
    if (s.real() < 0.5) return pi / (sin_pi(s) * gamma(1.0 - s));
    const cplx z = s - 1.0;
    cplx A = lanczos_c[0];
    for (size_t k = 1; k < lanczos_c.size(); ++k) A += lanczos_c[k] / (z + static_cast<double>(k));
    const cplx t = z + lanczos_g + 0.5;
    return std::sqrt(2.0 * pi) * std::exp((z + 0.5) * std::log(t) - t) * A;
}

double gamma(double x) { return gamma(cplx(x, 0.0)).real(); }

namespace {

// sum_{k>=1} e^(2 pi i k b) k^-sigma for Re sigma > 1 and non-integer sigma, from
// Li_sigma(e^mu) = Gamma(1 - sigma) (-mu)^(sigma - 1) + sum_k zeta(sigma - k) mu^k / k!
// with |mu| <= pi after reducing b to [-1/2, 1/2].
cplx periodic_zeta(cplx sigma, double b) {
    b -= std::round(b);
    if (b == 0.0) return riemann_zeta(sigma);
    const cplx mu(0.0, 2.0 * pi * b);
    Accumulator acc;
    acc += gamma(1.0 - sigma) * std::exp((sigma - 1.0) * std::log(-mu));
    cplx p = 1.0;
    int small = 0;
    for (int k = 0; k < 400; ++k) {
        const cplx t = riemann_zeta(sigma - static_cast<double>(k)) * p;
        acc += t;
        p *= mu / static_cast<double>(k + 1);
        small = std::abs(t) < 1e-18 * std::abs(acc.value()) ? small + 1 : 0;
        if (small >= 3 && k > sigma.real()) break;
    }
    return acc.value();
}

// Hurwitz's formula zeta(1 - sigma, a) = Gamma(sigma) / (2 pi)^sigma
// (e^(-i pi sigma/2) F(sigma, a) + e^(i pi sigma/2) F(sigma, -a)); this avoids the
// cancellation of the Euler-Maclaurin head, which grows like (M + a)^(1 - Re s).
cplx hurwitz_reflected(cplx s, double a) {
    const cplx sigma = 1.0 - s;
    const cplx h(0.0, 0.5 * pi);
    return gamma(sigma) * std::exp(-sigma * std::log(2.0 * pi)) *
           (std::exp(-h * sigma) * periodic_zeta(sigma, a) + std::exp(h * sigma) * periodic_zeta(sigma, -a));
}

}  // namespace

cplx hurwitz_zeta(cplx s, double a) {
    if (!(a > 0.0 && a <= 1.0)) throw DomainError("hurwitz_zeta: a must lie in (0, 1]");
    if (s == cplx(1.0, 0.0)) throw PoleError("hurwitz_zeta has a pole at s = 1");
    // the Euler-Maclaurin head cancels to about (M + 1)^(1 - Re s) ulp
    if (s.real() < -1.0 && (1.0 - s.real()) * std::log(em_head(s) + 1.0) > std::log(1e4)) {
        const double m = std::round(s.real());
        if (std::abs(s - m) >= 0.02) return hurwitz_reflected(s, a);
        // near a non-positive integer the reflected pieces have canceling poles:
        // Cauchy's formula on a circle of radius 0.1, exponentially accurate inside 0.02
        constexpr int nodes = 32;
        Accumulator acc;
        for (int j = 0; j < nodes; ++j) {
            const cplx d = 0.1 * std::exp(cplx(0.0, 2.0 * pi * (j + 0.5) / nodes));
            acc += hurwitz_reflected(m + d, a) * d / (m + d - s);
        }
        return acc.value() / static_cast<double>(nodes);
    }
    const int M = em_head(s);
    const double X = M + a;
    return em_regular_part(s, a, M) + X * std::exp(-s * std::log(X)) / (s - 1.0);
}

cplx dirichlet_L_hurwitz(cplx s, const Character& chi) {
    const int q = chi.modulus();
    const bool principal = chi.is_principal();
    if (principal && s == cplx(1.0, 0.0)) throw PoleError("L(s, chi) has a pole at s = 1 for principal chi");
    const int M = em_head(s);
    Accumulator acc;
    for (int a = 1; a <= q; ++a) {
        if (chi.exponent(a) < 0) continue;
        const double alpha = static_cast<double>(a) / q;
        const double lx = std::log(M + alpha);
        cplx pole;
        if (principal) {
            pole = std::exp((1.0 - s) * lx) / (s - 1.0);
        } else {
            // the constant part of X^(1-s)/(s-1) cancels over a full period
            pole = -lx * expm1_ratio((1.0 - s) * lx);
        }
        acc += chi(a) * (em_regular_part(s, alpha, M) + pole);
    }
    return rpow(static_cast<double>(q), -s) * acc.value();
}

LEvaluation dirichlet_L_eval(cplx s, const Character& chi) {
    if (chi.is_principal() && s == cplx(1.0, 0.0))
        throw PoleError("L(s, chi) has a pole at s = 1 for principal chi");
    if (s.real() >= 40.0) {
        Accumulator acc;
        for (long long n = 1;; ++n) {
            const cplx t = chi(n) * rpow(static_cast<double>(n), -s);
            acc += t;
            if (std::pow(static_cast<double>(n), -s.real()) < 1e-18) break;
        }
        return {s, acc.value(), LMethod::DirectSeries};
    }
    if (s.real() >= -0.5) return {s, dirichlet_L_hurwitz(s, chi), LMethod::HurwitzEM};
    return {s, L_functional_equation(s, chi), LMethod::FunctionalEquation};
}

cplx dirichlet_L(cplx s, const Character& chi) { return dirichlet_L_eval(s, chi).value; }

cplx riemann_zeta(cplx s) {
    if (s == cplx(1.0, 0.0)) throw PoleError("zeta has a pole at s = 1");
    return dirichlet_L(s, trivial_character());
}

long double bernoulli_number(int n) {
    static const long double table[] = {
        1.0L,
        -1.0L / 2,
        1.0L / 6,
        0.0L,
        -1.0L / 30,
        0.0L,
        1.0L / 42,
        0.0L,
        -1.0L / 30,
        0.0L,
        5.0L / 66,
        0.0L,
        -691.0L / 2730,
        0.0L,
        7.0L / 6,
        0.0L,
        -3617.0L / 510,
        0.0L,
        43867.0L / 798,
        0.0L,
        -174611.0L / 330,
        0.0L,
        854513.0L / 138,
        0.0L,
        -236364091.0L / 2730,
        0.0L,
        8553103.0L / 6,
        0.0L,
        -23749461029.0L / 870,
        0.0L,
        8615841276005.0L / 14322,
    };
    if (n < 0 || n > 30) throw DomainError("bernoulli_number: n must lie in [0, 30]");
    return table[n];
}

long double bernoulli_polynomial(int n, long double x) {
    long double sum = 0.0L;
    long double binom = 1.0L;
    for (int k = 0; k <= n; ++k) {
        sum += binom * bernoulli_number(k) * std::pow(x, static_cast<long double>(n - k));
        binom = binom * (n - k) / (k + 1);
    }
    return sum;
}

cplx generalized_bernoulli(int n, const Character& chi) {
    if (n < 1) throw DomainError("generalized_bernoulli: n must be >= 1");
    const int q = chi.modulus();
    const long double D = chi.denominator();
    long double re = 0.0L, im = 0.0L;
    for (int a = 1; a <= q; ++a) {
        const int e = chi.exponent(a);
        if (e < 0) continue;
        const long double b = bernoulli_polynomial(n, static_cast<long double>(a) / q);
        const long double ang = 2.0L * std::numbers::pi_v<long double> * e / D;
        cplx v = chi(a);
        // exact unit values stay exact; others take the long double angle
        if (v.real() == 0.0 || v.imag() == 0.0) {
            re += b * v.real();
            im += b * v.imag();
        } else {
            re += b * std::cos(ang);
            im += b * std::sin(ang);
        }
    }
    const long double scale = std::pow(static_cast<long double>(q), n - 1);
    return {static_cast<double>(re * scale), static_cast<double>(im * scale)};
}

cplx L_derivative_step(cplx s0, const Character& chi, double h0) {
    if (chi.is_principal()) {
        const double dist = std::abs(s0 - 1.0);
        if (dist < 1e-12) throw PoleError("L'(s, chi) has a pole at s = 1 for principal chi");
        if (dist < 1.5 * h0) h0 = dist / 3.0;
    }
    constexpr int levels = 5;
    std::array<std::array<cplx, levels>, levels> T{};
    double h = h0;
    for (int i = 0; i < levels; ++i, h /= 2.0) {
        T[i][0] = (dirichlet_L(s0 + h, chi) - dirichlet_L(s0 - h, chi)) / (2.0 * h);
        double f = 1.0;
        for (int j = 1; j <= i; ++j) {
            f *= 4.0;
            T[i][j] = T[i][j - 1] + (T[i][j - 1] - T[i - 1][j - 1]) / (f - 1.0);
        }
    }
    return T[levels - 1][levels - 1];
}

cplx L_derivative(cplx s0, const Character& chi, int order) {
    if (order != 1) throw DomainError("L_derivative: only order 1 is supported");
    return L_derivative_step(s0, chi, 0.125);
}

cplx zeta_derivative(cplx s0) { return L_derivative(s0, trivial_character()); }

double functional_equation_residual(cplx s, const Character& chi) {
    if (!chi.is_primitive()) throw DomainError("functional_equation_residual: character must be primitive");
    const int q = chi.modulus();
    const double kappa = chi.parity() == Parity::Odd ? 1.0 : 0.0;
    const cplx ikappa = kappa == 1.0 ? cplx(0.0, -1.0) : cplx(1.0, 0.0);
    const cplx lhs = dirichlet_L_hurwitz(s, chi);
    const cplx rhs = ikappa * gauss_sum(chi) / pi * rpow(2.0 * pi / q, s) * gamma(1.0 - s) *
                     sin_pi((s + kappa) / 2.0) * dirichlet_L_hurwitz(1.0 - s, chi.conjugate());
    return std::abs(lhs - rhs);
}

}  // namespace tbl
