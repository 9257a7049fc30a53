#include "tbl/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <thread>

#include "tbl/bessel.hpp"
#include "tbl/errors.hpp"
#include "tbl/specfun.hpp"
#include "tbl/summation.hpp"

namespace tbl {

namespace {

constexpr double pi = std::numbers::pi;

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

long long resolve_cap(long long max_terms) { return max_terms > 0 ? max_terms : max_series_terms(); }

bool near_positive_integer(double c) {
    const double r = std::round(c);
    return r >= 1.0 && std::abs(c - r) <= 1e-6;
}

struct ExpansionTerm {
    cplx coef;
    cplx w;
    bool log_weight;
};

// head + sum_j coef_j * sum_{n > n0} f(n) (log n)^[log] n^-w_j
cplx expansion_tail(const DivisorSumSpec& spec, long long n0, const std::vector<ExpansionTerm>& terms) {
    Accumulator acc;
    for (const auto& t : terms) acc += t.coef * detail::dirichlet_tail(spec, t.w, n0, t.log_weight);
    return acc.value();
}

// Exponentially decaying sums with the certified tail bound
//   sum_{n > N} n^P e^(-b sqrt n) <= 2 W^p e^(-bW) / (b - p/W),  W = sqrt N, p = 2P + 1.
template <class Term, class Prefactor>
SeriesValue exp_decay_series(const DivisorSumSpec& spec, double b, double P, Term term, Prefactor prefactor,
                             double tol, long long cap) {
    const double p = 2.0 * P + 1.0;
    Accumulator acc;
    long long done = 0;
    long long N = 256;
    while (true) {
        N = std::min(N, cap);
        const auto f = divisor_sum_table(spec, static_cast<int>(N));
        for (long long n = done + 1; n <= N; ++n) {
            const cplx c = f[static_cast<size_t>(n)];
            if (c != 0.0) acc += c * term(n);
        }
        done = N;
        const double W = std::sqrt(static_cast<double>(N));
        if (b > p / W) {
            const double log_bound = std::log(2.0 * prefactor(b * W)) + p * std::log(W) - b * W - std::log(b - p / W);
            const double bound = std::exp(log_bound);
            const double scale = std::abs(acc.value());
            if (bound <= tol * scale || bound < 1e-300) return {acc.value(), N, bound};
        }
        if (N >= cap) throw ConvergenceError("series not certified within " + std::to_string(cap) + " terms");
        N *= 2;
    }
}

}  // namespace

long long max_series_terms() {
    if (const char* env = std::getenv("TBL_MAX_TERMS")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return 4000000;
}

SeriesValue bessel_series(const DivisorSumSpec& spec, double nu, double a, double x, double tol, long long max_terms) {
    if (!(a > 0.0) || !(x > 0.0)) throw DomainError("bessel_series: a and x must be positive");
    nu = std::abs(nu);
    const double b = a * std::sqrt(x);
    const double m = spec.growth();
    // |f(n)| n^(nu/2) K <= C sqrt(pi/(2b)) n^(m + 1 + nu/2 - 1/4) e^(-b sqrt n)
    const double P = m + 1.0 + 0.5 * nu - 0.25;
    auto term = [&](long long n) {
        const double dn = static_cast<double>(n);
        return std::pow(dn, 0.5 * nu) * bessel_K(nu, b * std::sqrt(dn));
    };
    auto prefactor = [&](double y) {
        double C = 1.0;
        if (nu > 0.5) C = bessel_K_scaled(nu, y) * std::sqrt(2.0 * y / pi);
        return C * std::sqrt(pi / (2.0 * b));
    };
    return exp_decay_series(spec, b, P, term, prefactor, tol, resolve_cap(max_terms));
}

SeriesValue exponential_series(const DivisorSumSpec& spec, double b, double tol, long long max_terms) {
    if (!(b > 0.0)) throw DomainError("exponential_series: b must be positive");
    const double P = spec.growth() + 1.0;
    auto term = [&](long long n) { return std::exp(-b * std::sqrt(static_cast<double>(n))); };
    auto prefactor = [](double) { return 1.0; };
    return exp_decay_series(spec, b, P, term, prefactor, tol, resolve_cap(max_terms));
}

SeriesValue shifted_power_series(const DivisorSumSpec& spec, cplx p, double c, bool difference_form) {
    // the difference form decays one power faster
    const double lead = p.real() + (difference_form ? 1.0 : 0.0);
    if (!(p.real() > 0.0) || lead <= 1.0 || lead <= 1.0 + spec.growth())
        throw DivergenceError("shifted_power_series: exponent too small for convergence");
    if (!(c >= 0.0)) throw DomainError("shifted_power_series: shift must be >= 0");
    const long long n0 = static_cast<long long>(std::ceil(4.0 * c)) + 32;
    const auto f = divisor_sum_table(spec, static_cast<int>(n0));
    Accumulator head;
    for (long long n = 1; n <= n0; ++n) {
        const cplx fn = f[static_cast<size_t>(n)];
        if (fn == 0.0) continue;
        const double dn = static_cast<double>(n);
        const cplx lp = std::log1p(c / dn) * p;
        const cplx g = difference_form ? -rpow(dn, -p) * (std::exp(-lp) - 1.0) : rpow(dn + c, -p);
        head += fn * g;
    }
    // (n + c)^-p = sum_j binom(-p, j) c^j n^(-p-j)
    std::vector<ExpansionTerm> terms;
    cplx coef = 1.0;
    const double ratio = c / static_cast<double>(n0);
    double scale = 1.0;
    for (int j = 0; j < 200; ++j) {
        if (j > 0) {
            coef *= (-p - static_cast<double>(j - 1)) / static_cast<double>(j) * c;
            scale *= ratio;
        }
        if (j > 0 || !difference_form) terms.push_back({difference_form ? -coef : coef, p + static_cast<double>(j), false});
        if (c == 0.0) break;
        if (j > 2 && std::abs(coef) * std::pow(static_cast<double>(n0), -j) < 1e-19) break;
    }
    const cplx tail = expansion_tail(spec, n0, terms);
    return {head.value() + tail, n0, 0.0};
}

SeriesValue log_kernel_series(const DivisorSumSpec& spec, double c, int extra_power) {
    if (!(c > 0.0)) throw DomainError("log_kernel_series: c must be positive");
    if (near_positive_integer(c)) throw ExcludedParameter("log_kernel_series: c is a positive integer");
    if (extra_power < 0 || extra_power > 1) throw DomainError("log_kernel_series: extra power must be 0 or 1");
    if (2.0 + extra_power <= 1.0 + spec.growth()) throw DivergenceError("log_kernel_series: terms do not decay");
    const long long n0 = static_cast<long long>(std::ceil(4.0 * c)) + 32;
    const auto f = divisor_sum_table(spec, static_cast<int>(n0));
    const double cpow = std::pow(c, 2.0 + extra_power);
    Accumulator head;
    for (long long n = 1; n <= n0; ++n) {
        const cplx fn = f[static_cast<size_t>(n)];
        if (fn == 0.0) continue;
        // n = c (1 + r): log(1 + r) / (c^(2+e) (1+r)^e r (2 + r))
        const double r = (static_cast<double>(n) - c) / c;
        const double l = std::abs(r) < 1e-300 ? 1.0 : std::log1p(r) / r;
        const double g = l / (cpow * std::pow(1.0 + r, extra_power) * (2.0 + r));
        head += fn * g;
    }
    // log(n/c)/(n^(2+e)(1 - c^2/n^2)) = sum_j c^(2j) (log n - log c) n^(-2-e-2j)
    std::vector<ExpansionTerm> terms;
    const double lc = std::log(c);
    for (int j = 0; j < 400; ++j) {
        const double coef = std::pow(c, 2 * j);
        const double w = 2.0 + extra_power + 2.0 * j;
        terms.push_back({coef, w, true});
        terms.push_back({-coef * lc, w, false});
        if (std::pow(c / static_cast<double>(n0), 2 * j) < 1e-19) break;
    }
    const cplx tail = expansion_tail(spec, n0, terms);
    return {head.value() + tail, n0, 0.0};
}

SeriesValue cohen_tail_series(const DivisorSumSpec& spec, cplx e, double Q, int extra_power) {
    if (!(Q > 0.0)) throw DomainError("cohen_tail_series: Q must be positive");
    if (near_positive_integer(Q)) throw ExcludedParameter("cohen_tail_series: Q is a positive integer");
    if (extra_power < 0 || extra_power > 1) throw DomainError("cohen_tail_series: extra power must be 0 or 1");
    if (std::max(e.real(), 0.0) + spec.growth() - 2.0 - extra_power >= -1.0)
        throw DivergenceError("cohen_tail_series: terms do not decay fast enough");
    const long long n0 = static_cast<long long>(std::ceil(4.0 * Q)) + 32;
    const auto f = divisor_sum_table(spec, static_cast<int>(n0));
    const cplx qe = rpow(Q, e);
    const cplx qscale = rpow(Q, e - 2.0 - static_cast<double>(extra_power));
    Accumulator head;
    for (long long n = 1; n <= n0; ++n) {
        const cplx fn = f[static_cast<size_t>(n)];
        if (fn == 0.0) continue;
        // n = Q (1 + r): Q^(e-2-x) ((1+r)^e - 1) / (r (1+r)^x (2+r))
        const double r = (static_cast<double>(n) - Q) / Q;
        const cplx d = std::abs(r) < 1e-300 ? e : expm1_ratio(e * std::log1p(r)) * e * (std::log1p(r) / r);
        const cplx g = qscale * d / (std::pow(1.0 + r, extra_power) * (2.0 + r));
        head += fn * g;
    }
    std::vector<ExpansionTerm> terms;
    for (int j = 0; j < 400; ++j) {
        const double q2j = std::pow(Q, 2 * j);
        const double w = 2.0 + extra_power + 2.0 * j;
        terms.push_back({q2j, w - e, false});
        terms.push_back({-q2j * qe, w, false});
        if (std::pow(Q / static_cast<double>(n0), 2 * j) < 1e-19) break;
    }
    const cplx tail = expansion_tail(spec, n0, terms);
    return {head.value() + tail, n0, 0.0};
}

SeriesValue cohen_tail_series(const DivisorSumSpec& spec, double nu, int N, double Q, int offset, bool divide_by_n) {
    return cohen_tail_series(spec, cplx(nu - 2.0 * N + offset), Q, divide_by_n ? 1 : 0);
}

namespace {

constexpr std::array<double, 8> gk_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> gk_wk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights at gk_x[1], gk_x[3], gk_x[5], gk_x[7]
constexpr std::array<double, 4> gk_wg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                         0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

std::pair<double, double> gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double k = fc * gk_wk[7];
    double g = fc * gk_wg[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = h * gk_x[static_cast<size_t>(i)];
        const double s = f(c - dx) + f(c + dx);
        k += gk_wk[static_cast<size_t>(i)] * s;
        if (i % 2 == 1) g += gk_wg[static_cast<size_t>(i / 2)] * s;
    }
    return {k * h, std::abs((k - g) * h)};
}

// Panels per call; an unreachable tolerance would otherwise bisect exponentially.
constexpr long long max_panels = 200000;

double integrate_rec(const std::function<double(double)>& f, double a, double b, double tol, int depth, int max_depth,
                     double whole, long long& panels) {
    if (++panels > max_panels) throw QuadratureError("adaptive_integral: panel budget exhausted");
    auto [val, err] = gk15(f, a, b);
    if (err <= tol || std::abs(b - a) < 1e-15 * whole) return val;
    if (depth >= max_depth) throw QuadratureError("adaptive_integral: maximum depth exceeded");
    const double m = 0.5 * (a + b);
    return integrate_rec(f, a, m, 0.5 * tol, depth + 1, max_depth, whole, panels) +
           integrate_rec(f, m, b, 0.5 * tol, depth + 1, max_depth, whole, panels);
}

}  // namespace

double adaptive_integral(const std::function<double(double)>& f, const QuadratureSpec& q) {
    if (!(q.tol > 0.0)) throw DomainError("adaptive_integral: tol must be positive");
    if (q.alpha == q.beta) return 0.0;
    long long panels = 0;
    return integrate_rec(f, q.alpha, q.beta, q.tol, 0, q.max_depth, std::abs(q.beta - q.alpha), panels);
}

const char* to_string(KernelVariant v) {
    switch (v) {
        case KernelVariant::EvenCos: return "EvenCos";
        case KernelVariant::OddSin: return "OddSin";
        case KernelVariant::OddPlusY: return "OddPlusY";
        case KernelVariant::EvenPlusY: return "EvenPlusY";
    }
    return "?";
}

double voronoi_kernel(KernelVariant variant, double nu, double u) {
    if (!(u > 0.0)) throw DomainError("voronoi_kernel: argument must be positive");
    const double k = 2.0 / pi * bessel_K(nu, u);
    const BesselJY jy = bessel_JY(nu, u);
    const double c = std::cos(0.5 * pi * nu), s = std::sin(0.5 * pi * nu);
    switch (variant) {
        case KernelVariant::EvenCos: return (k - jy.Y) * c - jy.J * s;
        case KernelVariant::OddSin: return (k - jy.Y) * s + jy.J * c;
        case KernelVariant::OddPlusY: return (k + jy.Y) * s - jy.J * c;
        case KernelVariant::EvenPlusY: return (k + jy.Y) * c + jy.J * s;
    }
    throw DomainError("voronoi_kernel: unknown variant");
}

VoronoiSeriesValue voronoi_series(const VoronoiSeriesSpec& spec) {
    if (!spec.f) throw DomainError("voronoi_series: no test function");
    if (!(spec.alpha > 0.0 && spec.beta > spec.alpha)) throw DomainError("voronoi_series: need 0 < alpha < beta");
    if (spec.terms < 200) throw DomainError("voronoi_series: at least 200 terms are needed");
    const long long N = spec.terms;
    const auto b = divisor_sum_table(spec.coefficients, static_cast<int>(N));
    std::vector<cplx> terms(static_cast<size_t>(N) + 1, 0.0);
    const double wa = std::sqrt(spec.alpha), wb = std::sqrt(spec.beta);
    const double rho2 = 2.0 * spec.weight_power + 1.0;

    auto work = [&](long long n) -> cplx {
        if (b[static_cast<size_t>(n)] == cplx(0.0)) return 0.0;
        const double c = 4.0 * pi * std::sqrt(static_cast<double>(n) / spec.modulus);
        // t = w^2: int 2 w f(w^2) w^(2 rho) Phi(c w) dw, one panel per oscillation
        auto h = [&](double w) { return 2.0 * std::pow(w, rho2) * spec.f(w * w) * voronoi_kernel(spec.variant, spec.nu, c * w); };
        // the Bessel routines switch algorithm at fixed arguments; keep those on panel edges
        std::vector<double> edges = {wa, wb};
        for (double cut : {detail::k_asymptotic_cut, detail::jy_asymptotic_cut})
            if (cut / c > wa && cut / c < wb) edges.push_back(cut / c);
        std::sort(edges.begin(), edges.end());
        double sum = 0.0;
        for (size_t e = 0; e + 1 < edges.size(); ++e) {
            const double a0 = edges[e], a1 = edges[e + 1];
            // one panel per oscillation
            const long long panels = std::max<long long>(1, static_cast<long long>(std::ceil((a1 - a0) * c / (2.0 * pi))));
            const double step = (a1 - a0) / static_cast<double>(panels);
            for (long long i = 0; i < panels; ++i) {
                const double lo = a0 + step * static_cast<double>(i);
                const double hi = i + 1 == panels ? a1 : lo + step;
                // tolerance relative to the panel's magnitude, sampled off the oscillation's phase grid
                double mag = 0.0;
                for (int k = 0; k < 8; ++k) mag = std::max(mag, std::abs(h(lo + (hi - lo) * (k + 0.37) / 8.0)));
                sum += adaptive_integral(h, {lo, hi, std::max(1e-10 * mag * (hi - lo), 1e-300), 30});
            }
        }
        return b[static_cast<size_t>(n)] * std::pow(static_cast<double>(n), 0.5 * spec.nu) * sum;
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = static_cast<unsigned>(std::min<long long>(hw, N));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (long long n = 1 + t; n <= N; n += workers)
                    if (b[static_cast<size_t>(n)] != 0.0) terms[static_cast<size_t>(n)] = work(n);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    // partial sums in index order
    std::vector<cplx> partial(static_cast<size_t>(N) + 1, 0.0);
    Accumulator acc;
    for (long long n = 1; n <= N; ++n) {
        acc += terms[static_cast<size_t>(n)];
        partial[static_cast<size_t>(n)] = acc.value();
    }
    VoronoiSeriesValue out;
    out.terms = N;
    out.last_partial = partial[static_cast<size_t>(N)];
    Accumulator win;
    for (long long k = N - 199; k <= N; ++k) win += partial[static_cast<size_t>(k)];
    out.window_mean = win.value() / 200.0;
    // Kaiser taper in u = sqrt(n): the tapered sum reproduces the left side
    // convolved with a kernel of width ~ sqrt(M / N) in sqrt(t) whose side lobes
    // are far below the target accuracy. The blur is second order in that width,
    // so 2 K(N) - K(N/2) cancels its leading term.
    const double i0 = bessel_I(0.0, spec.taper);
    auto tapered = [&](long long L) {
        Accumulator sm;
        for (long long n = 1; n <= L; ++n) {
            const double s2 = static_cast<double>(n) / static_cast<double>(L);
            sm += terms[static_cast<size_t>(n)] *
                  (bessel_I(0.0, spec.taper * std::sqrt(std::max(0.0, 1.0 - s2))) / i0);
        }
        return sm.value();
    };
    out.tapered = tapered(N);
    out.smoothed = 2.0 * out.tapered - tapered(N / 2);
    out.term_values = std::move(terms);
    return out;
}

namespace detail {

std::pair<cplx, cplx> hurwitz_with_derivative(cplx s, double b) {
    if (!(b > 0.0)) throw DomainError("hurwitz_with_derivative: b must be positive");
    if (std::abs(s - 1.0) < 1e-14) throw PoleError("hurwitz_with_derivative: pole at s = 1");
    const double need = std::max(15.0, std::abs(s) + 10.0);
    const long long M = std::max(0LL, static_cast<long long>(std::ceil(need - b)));
    Accumulator val, der;
    for (long long n = 0; n < M; ++n) {
        const double y = n + b;
        const double ly = std::log(y);
        const cplx t = std::exp(-s * ly);
        val += t;
        der -= ly * t;
    }
    const double X = b + static_cast<double>(M);
    const double lx = std::log(X);
    const cplx Xs = std::exp(-s * lx);
    const cplx sm1 = s - 1.0;
    val += X * Xs / sm1 + 0.5 * Xs;
    der += X * Xs * (-lx / sm1 - 1.0 / (sm1 * sm1)) - 0.5 * lx * Xs;
    cplx poch = s, dpoch = 1.0;
    cplx pw = Xs / X;
    const auto& c = em_coefficients();
    for (int j = 1; j <= 12; ++j) {
        const double cj = c[static_cast<size_t>(j - 1)];
        val += cj * poch * pw;
        der += cj * (dpoch - poch * lx) * pw;
        for (int i = 2 * j - 1; i <= 2 * j; ++i) {
            dpoch = dpoch * (s + static_cast<double>(i)) + poch;
            poch *= s + static_cast<double>(i);
        }
        pw /= X * X;
    }
    return {val.value(), der.value()};
}

namespace {

// sum_{n > M} chi(n) n^-s and, optionally, sum_{n > M} chi(n) log n n^-s
std::pair<cplx, cplx> character_tails(cplx s, const Character& chi, long long M, bool want_log) {
    const int q = chi.modulus();
    const double lq = std::log(static_cast<double>(q));
    Accumulator plain, logged;
    for (int a = 1; a <= q; ++a) {
        const cplx ca = chi(a);
        if (ca == 0.0) continue;
        const long long k = a > M ? 0 : (M - a) / q + 1;
        const double b = static_cast<double>(k) + static_cast<double>(a) / q;
        const auto [z, dz] = hurwitz_with_derivative(s, b);
        plain += ca * z;
        if (want_log) logged += ca * (lq * z - dz);
    }
    const cplx qs = rpow(static_cast<double>(q), -s);
    return {qs * plain.value(), qs * logged.value()};
}

}  // namespace

cplx character_tail(cplx s, const Character& chi, long long M) { return character_tails(s, chi, M, false).first; }

cplx character_log_tail(cplx s, const Character& chi, long long M) { return character_tails(s, chi, M, true).second; }

cplx dirichlet_tail(const DivisorSumSpec& spec, cplx w, long long M, bool log_weight) {
    if (spec.kind == DivisorKind::Unit) {
        const auto t = character_tails(w, trivial_character(), M, log_weight);
        return log_weight ? t.second : t.first;
    }
    const Character& c1 = spec.chi1;
    const Character& c2 = spec.chi2;
    const cplx s1 = w - spec.z;
    // n = d e > M: d <= M needs e > floor(M/d); d > M takes every e
    std::map<long long, std::pair<cplx, cplx>> cache;
    Accumulator acc;
    for (long long d = 1; d <= M; ++d) {
        const cplx cd = c1(d);
        if (cd == 0.0) continue;
        const long long Md = M / d;
        auto it = cache.find(Md);
        if (it == cache.end()) it = cache.emplace(Md, character_tails(w, c2, Md, log_weight)).first;
        const double dd = static_cast<double>(d);
        const cplx coef = cd * rpow(dd, -s1);
        if (log_weight) acc += coef * (std::log(dd) * it->second.first + it->second.second);
        else acc += coef * it->second.first;
    }
    const auto t1 = character_tails(s1, c1, M, log_weight);
    const auto l2 = character_tails(w, c2, 0, log_weight);
    if (log_weight) acc += t1.second * l2.first + t1.first * l2.second;
    else acc += t1.first * l2.first;
    return acc.value();
}

}  // namespace detail

}  // namespace tbl
