#pragma once

#include <complex>
#include <vector>

namespace tbl {

using cplx = std::complex<double>;

enum class Parity { Even, Odd };

// Dirichlet character mod q. Values are stored as exact exponents e with
// chi(n) = exp(2 pi i e / D), D the exponent of (Z/qZ)*; e = -1 off the units.
class Character {
public:
    int modulus() const { return q_; }
    int index() const { return index_; }
    int denominator() const { return D_; }
    // -1 when gcd(n, q) > 1
    int exponent(long long n) const;
    cplx operator()(long long n) const;
    const std::vector<cplx>& table() const { return vals_; }

    int order() const;
    int conductor() const { return conductor_; }
    bool is_primitive() const { return conductor_ == q_; }
    bool is_principal() const { return principal_; }
    Parity parity() const { return parity_; }
    bool is_real() const;

    Character conjugate() const;

    bool operator==(const Character& o) const;

private:
    friend std::vector<Character> enumerate_characters(int q);

    int q_ = 1;
    int D_ = 1;
    int index_ = 0;
    int conj_index_ = 0;
    int conductor_ = 1;
    bool principal_ = true;
    Parity parity_ = Parity::Even;
    std::vector<int> expo_;
    std::vector<cplx> vals_;
};

// All phi(q) characters mod q in a fixed order; index 0 is principal.
// Order: lexicographic in the exponent tuple over the generators, taken by
// increasing prime, with -1 before 5 for the 2-part.
std::vector<Character> enumerate_characters(int q);

Character character(int q, int index);

// The character mod 1.
Character trivial_character();

// The primitive character inducing chi.
Character primitive_character(const Character& chi);

cplx gauss_sum(const Character& chi);

int euler_phi(int n);

// exp(2 pi i e / D) with exact values at multiples of 1/4.
cplx unit_root(long long e, long long D);

}  // namespace tbl
