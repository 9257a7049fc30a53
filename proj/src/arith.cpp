#include "tbl/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "tbl/errors.hpp"
#include "tbl/specfun.hpp"
#include "tbl/summation.hpp"

namespace tbl {

namespace {

constexpr int sieve_limit = 1000000;

const std::vector<int>& smallest_prime_factor() {
    static const std::vector<int> spf = [] {
        std::vector<int> s(sieve_limit + 1, 0);
        for (int i = 2; i <= sieve_limit; ++i) {
            if (s[i]) continue;
            for (long long j = i; j <= sieve_limit; j += i)
                if (!s[j]) s[j] = i;
        }
        return s;
    }();
    return spf;
}

std::vector<std::pair<long long, int>> factorize(long long n) {
    std::vector<std::pair<long long, int>> out;
    if (n <= sieve_limit) {
        const auto& spf = smallest_prime_factor();
        while (n > 1) {
            const int p = spf[n];
            int e = 0;
            while (n % p == 0) n /= p, ++e;
            out.emplace_back(p, e);
        }
        return out;
    }
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

cplx dpow(long long d, cplx z) {
    if (z.imag() == 0.0) return std::pow(static_cast<double>(d), z.real());
    return rpow(static_cast<double>(d), z);
}

}  // namespace

DivisorSumSpec DivisorSumSpec::twisted(cplx z, const Character& chi) {
    return {DivisorKind::Twisted, z, chi, trivial_character()};
}

DivisorSumSpec DivisorSumSpec::bar_twisted(cplx z, const Character& chi) {
    return {DivisorKind::BarTwisted, z, trivial_character(), chi};
}

DivisorSumSpec DivisorSumSpec::two_char(cplx z, const Character& chi1, const Character& chi2) {
    return {DivisorKind::TwoChar, z, chi1, chi2};
}

DivisorSumSpec DivisorSumSpec::sigma(cplx z) {
    return {DivisorKind::Sigma, z, trivial_character(), trivial_character()};
}

DivisorSumSpec DivisorSumSpec::sigma_char(cplx z, const Character& chi) {
    return {DivisorKind::SigmaChar, z, chi, chi};
}

DivisorSumSpec DivisorSumSpec::unit() {
    return {DivisorKind::Unit, 0.0, trivial_character(), trivial_character()};
}

double DivisorSumSpec::growth() const {
    if (kind == DivisorKind::Unit) return 0.0;
    return std::max(z.real(), 0.0);
}

std::vector<long long> divisors(long long n) {
    if (n < 1) throw DomainError("divisors: n must be >= 1");
    std::vector<long long> ds{1};
    for (auto [p, e] : factorize(n)) {
        const size_t m = ds.size();
        long long pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < m; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

int divisor_count(long long n) {
    if (n < 1) throw DomainError("divisor_count: n must be >= 1");
    int c = 1;
    for (auto [p, e] : factorize(n)) c *= e + 1;
    return c;
}

cplx divisor_sum(const DivisorSumSpec& spec, long long n) {
    if (n < 1) throw DomainError("divisor_sum: n must be >= 1");
    if (spec.kind == DivisorKind::Unit) return 1.0;
    if (spec.kind == DivisorKind::SigmaChar) {
        const cplx c = spec.chi1(n);
        if (c == 0.0) return 0.0;
        Accumulator acc;
        for (long long d : divisors(n)) acc += dpow(d, spec.z);
        return c * acc.value();
    }
    Accumulator acc;
    for (long long d : divisors(n)) {
        const cplx a = spec.chi1(d);
        if (a == 0.0) continue;
        const cplx b = spec.chi2(n / d);
        if (b == 0.0) continue;
        acc += dpow(d, spec.z) * a * b;
    }
    return acc.value();
}

std::vector<cplx> divisor_sum_table(const DivisorSumSpec& spec, int N) {
    if (N < 0) throw DomainError("divisor_sum_table: N must be >= 0");
    std::vector<cplx> out(static_cast<size_t>(N) + 1, 0.0);
    if (spec.kind == DivisorKind::Unit) {
        std::fill(out.begin() + 1, out.end(), cplx(1.0));
        return out;
    }
    if (spec.kind == DivisorKind::SigmaChar) {
        for (int d = 1; d <= N; ++d) {
            const cplx w = dpow(d, spec.z);
            for (int n = d; n <= N; n += d) out[static_cast<size_t>(n)] += w;
        }
        for (int n = 1; n <= N; ++n) out[static_cast<size_t>(n)] *= spec.chi1(n);
        return out;
    }
    const int q2 = spec.chi2.modulus();
    const auto& t2 = spec.chi2.table();
    for (int d = 1; d <= N; ++d) {
        const cplx a = spec.chi1(d);
        if (a == 0.0) continue;
        const cplx w = dpow(d, spec.z) * a;
        for (int m = 1, n = d; n <= N; ++m, n += d) {
            const cplx b = t2[static_cast<size_t>(m % q2)];
            if (b != 0.0) out[static_cast<size_t>(n)] += w * b;
        }
    }
    return out;
}

cplx generating_function(const DivisorSumSpec& spec, cplx s) {
    if (spec.kind == DivisorKind::Unit) return riemann_zeta(s);
    return dirichlet_L(s - spec.z, spec.chi1) * dirichlet_L(s, spec.chi2);
}

SeriesCheck dirichlet_series_check(const DivisorSumSpec& spec, cplx s, int terms) {
    const double m = spec.growth();
    const double sigma = s.real();
    if (!(sigma > std::max(spec.z.real() + 1.0, 1.0) + 0.5) || !(sigma > m + 1.5))
        throw DomainError("dirichlet_series_check: Re(s) too small for absolute convergence");
    if (terms < 1) throw DomainError("dirichlet_series_check: terms must be >= 1");

    const auto f = divisor_sum_table(spec, terms);
    Accumulator acc;
    for (int n = 1; n <= terms; ++n) acc += f[static_cast<size_t>(n)] * rpow(n, -s);

    // Main part of sum_{n > N} f(n) n^-s: for a pole rho of F with principal part
    // A/(s-rho)^2 + B/(s-rho), f has mean density t^(rho-1)(A log t + B), whose
    // tail integral is N^(rho-s)(A log N/(s-rho) + A/(s-rho)^2 + B/(s-rho)),
    // less half the density at N (trapezoid endpoint).
    const double N = terms;
    const double logN = std::log(N);
    auto tail = [&](cplx rho, cplx A, cplx B) {
        const cplx w = s - rho;
        return rpow(N, rho - s) * (A * logN / w + A / (w * w) + B / w - 0.5 * (A * logN + B) / N);
    };
    if (spec.kind == DivisorKind::Unit) {
        acc += tail(1.0, 0.0, 1.0);
    } else {
        const Character& c1 = spec.chi1;
        const Character& c2 = spec.chi2;
        const double d1 = static_cast<double>(euler_phi(c1.modulus())) / c1.modulus();
        const double d2 = static_cast<double>(euler_phi(c2.modulus())) / c2.modulus();
        const bool p1 = c1.is_principal(), p2 = c2.is_principal();
        if (p1 && p2 && std::abs(spec.z) < 1e-12) {
            // double pole at 1: A = d1 d2, B = d/ds[(s-1)^2 F(s)] at s = 1
            auto G = [&](double h) {
                const cplx u = 1.0 + h;
                return h * h * dirichlet_L(u, c1) * dirichlet_L(u, c2);
            };
            cplx B = 0.0;
            {
                double h = 0.05;
                cplx prev = (G(h) - G(-h)) / (2.0 * h);
                for (int i = 0; i < 4; ++i) {
                    h /= 2.0;
                    const cplx cur = (G(h) - G(-h)) / (2.0 * h);
                    B = cur + (cur - prev) / 3.0;
                    prev = cur;
                }
            }
            acc += tail(1.0, d1 * d2, B);
        } else {
            if (p1) acc += tail(1.0 + spec.z, 0.0, d1 * dirichlet_L(1.0 + spec.z, c2));
            if (p2) acc += tail(1.0, 0.0, d2 * dirichlet_L(1.0 - spec.z, c1));
        }
    }

    SeriesCheck out;
    out.partial = acc.value();
    out.closed_form = generating_function(spec, s);
    out.residual = std::abs(out.partial - out.closed_form);
    const double e = sigma - m - 1.5;
    out.tail_bound = 2.0 * std::pow(N, -e) / e;
    return out;
}

}  // namespace tbl
