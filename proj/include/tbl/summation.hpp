#pragma once

#include <cmath>
#include <complex>

namespace tbl {

// Neumaier-compensated running sum.
template <class T>
class BasicAccumulator {
public:
    BasicAccumulator& operator+=(T x) {
        T t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }
    T value() const { return sum_ + comp_; }

private:
    T sum_{};
    T comp_{};
};

class Accumulator {
public:
    Accumulator& operator+=(std::complex<double> z) {
        re_ += z.real();
        im_ += z.imag();
        return *this;
    }
    Accumulator& operator-=(std::complex<double> z) { return *this += -z; }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    BasicAccumulator<double> re_;
    BasicAccumulator<double> im_;
};

}  // namespace tbl
