#include "tbl/characters.hpp"

#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "tbl/errors.hpp"
#include "tbl/summation.hpp"

namespace tbl {

namespace {

struct Component {
    long long p;
    int k;
    long long pk;
};

std::vector<Component> factor(long long q) {
    std::vector<Component> out;
    for (long long p = 2; p * p <= q; ++p) {
        if (q % p) continue;
        Component c{p, 0, 1};
        while (q % p == 0) {
            q /= p;
            ++c.k;
            c.pk *= p;
        }
        out.push_back(c);
    }
    if (q > 1) out.push_back({q, 1, q});
    return out;
}

long long powmod(long long b, long long e, long long m) {
    long long r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

long long primitive_root_prime_power(long long p, long long pk) {
    long long phi_p = p - 1;
    std::vector<long long> primes;
    long long m = phi_p;
    for (long long d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            primes.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) primes.push_back(m);
    for (long long g = 2; g < p; ++g) {
        bool ok = true;
        for (long long r : primes)
            if (powmod(g, phi_p / r, p) == 1) ok = false;
        if (!ok) continue;
        // a primitive root mod p lifts to p^k unless g^(p-1) = 1 mod p^2
        if (pk > p && powmod(g, p - 1, p * p) == 1) g += p;
        return g;
    }
    return 1;
}

// One cyclic factor of (Z/qZ)*: a generator and the discrete logs of all
// residues of its prime-power component.
struct Generator {
    int order;
    std::vector<int> log;  // indexed by residue mod pk; -1 when not reached
    long long pk;
    bool minus_one = false;  // the {-1} factor of 2^k, k >= 2
    bool five = false;       // the <5> factor of 2^k, k >= 3
};

std::vector<Generator> generators(long long q) {
    std::vector<Generator> gens;
    for (const Component& c : factor(q)) {
        if (c.p == 2) {
            if (c.k >= 2) {
                Generator g{2, std::vector<int>(c.pk, -1), c.pk, true, false};
                for (long long r = 1; r < c.pk; r += 2) g.log[r] = (r % 4 == 1) ? 0 : 1;
                gens.push_back(std::move(g));
            }
            if (c.k >= 3) {
                int ord = static_cast<int>(c.pk / 4);
                Generator g{ord, std::vector<int>(c.pk, -1), c.pk, false, true};
                long long x = 1;
                for (int e = 0; e < ord; ++e) {
                    g.log[x] = e;
                    g.log[c.pk - x] = e;
                    x = x * 5 % c.pk;
                }
                gens.push_back(std::move(g));
            }
            continue;
        }
        long long root = primitive_root_prime_power(c.p, c.pk);
        int ord = static_cast<int>(c.pk / c.p * (c.p - 1));
        Generator g{ord, std::vector<int>(c.pk, -1), c.pk};
        long long x = 1;
        for (int e = 0; e < ord; ++e) {
            g.log[x] = e;
            x = x * root % c.pk;
        }
        gens.push_back(std::move(g));
    }
    return gens;
}

std::mutex cache_mutex;
std::map<int, std::vector<Character>> cache;

}  // namespace

int euler_phi(int n) {
    int r = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

cplx unit_root(long long e, long long D) {
    e %= D;
    if (e < 0) e += D;
    if ((4 * e) % D == 0) {
        switch ((4 * e) / D) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    // fold into [-1/2, 1/2) turns before scaling to keep the angle small
    long long f = 2 * e >= D ? e - D : e;
    double ang = 2.0 * std::numbers::pi * static_cast<double>(f) / static_cast<double>(D);
    return {std::cos(ang), std::sin(ang)};
}

int Character::exponent(long long n) const {
    long long r = n % q_;
    if (r < 0) r += q_;
    return expo_[static_cast<size_t>(r)];
}

cplx Character::operator()(long long n) const {
    long long r = n % q_;
    if (r < 0) r += q_;
    return vals_[static_cast<size_t>(r)];
}

int Character::order() const {
    int g = D_;
    for (int e : expo_)
        if (e > 0) g = std::gcd(g, e);
    return D_ / g;
}

bool Character::is_real() const {
    for (int e : expo_)
        if (e > 0 && (2 * e) % D_ != 0) return false;
    return true;
}

Character Character::conjugate() const { return character(q_, conj_index_); }

bool Character::operator==(const Character& o) const {
    return q_ == o.q_ && index_ == o.index_;
}

std::vector<Character> enumerate_characters(int q) {
    if (q < 1) throw InvalidModulus("modulus must be a positive integer, got " + std::to_string(q));
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(q);
        if (it != cache.end()) return it->second;
    }

    std::vector<Generator> gens = generators(q);
    int D = 1;
    for (const Generator& g : gens) D = std::lcm(D, g.order);

    // discrete-log tuples of every residue
    const size_t r = gens.size();
    std::vector<std::vector<int>> logs(static_cast<size_t>(q));
    for (long long n = 0; n < q; ++n) {
        if (std::gcd(n, static_cast<long long>(q)) != 1) continue;
        std::vector<int> t(r);
        for (size_t i = 0; i < r; ++i) t[i] = gens[i].log[static_cast<size_t>(n % gens[i].pk)];
        logs[static_cast<size_t>(n)] = std::move(t);
    }

    int count = 1;
    for (const Generator& g : gens) count *= g.order;

    std::vector<Character> out;
    out.reserve(static_cast<size_t>(count));
    std::vector<int> js(r, 0);
    for (int idx = 0; idx < count; ++idx) {
        int rem = idx;
        for (size_t i = r; i-- > 0;) {
            js[i] = rem % gens[i].order;
            rem /= gens[i].order;
        }
        Character c;
        c.q_ = q;
        c.D_ = D;
        c.index_ = idx;
        int conj = 0;
        for (size_t i = 0; i < r; ++i) conj = conj * gens[i].order + (gens[i].order - js[i]) % gens[i].order;
        c.conj_index_ = conj;
        c.expo_.assign(static_cast<size_t>(q), -1);
        c.vals_.assign(static_cast<size_t>(q), cplx(0.0, 0.0));
        for (long long n = 0; n < q; ++n) {
            const auto& t = logs[static_cast<size_t>(n)];
            if (t.size() != r) continue;
            long long e = 0;
            for (size_t i = 0; i < r; ++i) e += static_cast<long long>(js[i]) * t[i] * (D / gens[i].order);
            e %= D;
            c.expo_[static_cast<size_t>(n)] = static_cast<int>(e);
            c.vals_[static_cast<size_t>(n)] = unit_root(e, D);
        }
        c.principal_ = idx == 0;
        c.parity_ = c.expo_[static_cast<size_t>((q - 1) % q)] == 0 ? Parity::Even : Parity::Odd;
        c.conductor_ = q;
        for (int f = 1; f < q; ++f) {
            if (q % f) continue;
            bool induced = true;
            for (long long n = 1; n < q && induced; ++n)
                if (c.expo_[static_cast<size_t>(n)] > 0 && n % f == 1 % f) induced = false;
            if (induced) {
                c.conductor_ = f;
                break;
            }
        }
        out.push_back(std::move(c));
    }

    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(q, out);
    return out;
}

Character character(int q, int index) {
    auto all = enumerate_characters(q);
    if (index < 0 || index >= static_cast<int>(all.size()))
        throw DomainError("character index " + std::to_string(index) + " out of range for modulus " +
                          std::to_string(q) + " (" + std::to_string(all.size()) + " characters)");
    return all[static_cast<size_t>(index)];
}

Character trivial_character() { return character(1, 0); }

Character primitive_character(const Character& chi) {
    const int q = chi.modulus();
    const int f = chi.conductor();
    if (f == q) return chi;
    // chi*(n) = chi(m) for any m = n mod f coprime to q
    std::vector<long long> lift(static_cast<size_t>(f), -1);
    for (long long n = 0; n < f; ++n) {
        if (std::gcd(n, static_cast<long long>(f)) != 1) continue;
        for (long long m = n; m < static_cast<long long>(q) * f + f; m += f) {
            if (std::gcd(m, static_cast<long long>(q)) == 1) {
                lift[static_cast<size_t>(n)] = m;
                break;
            }
        }
    }
    for (const Character& c : enumerate_characters(f)) {
        bool same = true;
        for (long long n = 0; n < f && same; ++n) {
            if (lift[static_cast<size_t>(n)] < 0) continue;
            long long e1 = chi.exponent(lift[static_cast<size_t>(n)]);
            long long e2 = c.exponent(n);
            if (e1 * c.denominator() != e2 * chi.denominator()) same = false;
        }
        if (same) return c;
    }
    throw Error("no primitive character found inducing the given character");
}

cplx gauss_sum(const Character& chi) {
    const int q = chi.modulus();
    Accumulator acc;
    for (long long h = 1; h <= q; ++h) {
        if (chi.exponent(h) < 0) continue;
        acc += chi(h) * unit_root(h, q);
    }
    return acc.value();
}

}  // namespace tbl
