#pragma once

#include <cmath>
#include <complex>

namespace struvint {

using Complex = std::complex<double>;

inline bool is_finite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Neumaier-compensated accumulator for complex partial sums. Summation order
// is the caller's; the compensation only removes the rounding drift.
class CompensatedSum {
public:
    void add(const Complex& term) {
        add_part(re_, re_c_, term.real());
        add_part(im_, im_c_, term.imag());
        abs_sum_ += std::abs(term);
    }

    Complex value() const { return {re_ + re_c_, im_ + im_c_}; }

    // Sum of |term| over everything added so far; used for roundoff bounds.
    double abs_sum() const { return abs_sum_; }

private:
    static void add_part(double& sum, double& comp, double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }

    double re_ = 0.0;
    double re_c_ = 0.0;
    double im_ = 0.0;
    double im_c_ = 0.0;
    double abs_sum_ = 0.0;
};

}  // namespace struvint
