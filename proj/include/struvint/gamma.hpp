#pragma once

#include <optional>

#include "struvint/complex.hpp"

namespace struvint {

// |Re z - n| and |Im z| below this puts z on the pole at n <= 0.
inline constexpr double kPoleTolerance = 1e-12;

// Direct products are used for integer Pochhammer subscripts up to this
// length. Up to kPochhammerScaledLimit the product continues with a separate
// binary exponent; longer ones go through the log-gamma ratio.
inline constexpr unsigned kPochhammerProductLimit = 64;
inline constexpr unsigned kPochhammerScaledLimit = 4096;

// Nearest non-positive integer if z sits on a gamma pole.
std::optional<long> gamma_pole(const Complex& z);

// Principal branch of log Gamma(z). Real positive z gives a zero imaginary
// part. Throws PoleError on the poles.
Complex log_gamma(const Complex& z);

// Gamma(z). Throws PoleError on the poles and RangeError on overflow.
Complex gamma(const Complex& z);

// Rising factorial (lambda)_k. (lambda)_0 == 1 for every lambda, including 0.
Complex pochhammer(const Complex& lambda, unsigned k);

// (lambda)_nu = Gamma(lambda + nu) / Gamma(lambda) for real nu >= 0.
// Integer nu defers to the integer overload.
Complex pochhammer(const Complex& lambda, double nu);

// lambda * (1 + lambda)_k / (lambda)_k, which equals lambda + k.
// Throws DomainError when (lambda)_k vanishes.
Complex pochhammer_shift(const Complex& lambda, unsigned k);

// log (lambda)_nu together with the degenerate outcomes that have no finite
// logarithm. `value` is meaningful only for Kind::finite and is defined
// modulo 2*pi*i.
struct LogPochhammer {
    enum class Kind { finite, zero, infinite };
    Kind kind = Kind::finite;
    Complex value{};
};

LogPochhammer log_pochhammer(const Complex& lambda, double nu);

}  // namespace struvint
