#include "struvint/gamma.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "struvint/errors.hpp"

namespace struvint {
namespace {

// Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficients).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczosCoeffs = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

constexpr double kHalfLogTwoPi = 0.91893853320467274178;
const double kLogPi = std::log(std::numbers::pi);
const double kMaxLog = std::log(std::numeric_limits<double>::max());

// Branch corrections further out than this are not attempted.
constexpr double kMaxReflectionShift = 1e7;

// Valid for Re z >= 0.5.
Complex lanczos_log_gamma(const Complex& z) {
    const Complex zm = z - 1.0;
    Complex series = kLanczosCoeffs[0];
    for (std::size_t k = 1; k < kLanczosCoeffs.size(); ++k) {
        series += kLanczosCoeffs[k] / (zm + static_cast<double>(k));
    }
    const Complex t = zm + kLanczosG + 0.5;
    return kHalfLogTwoPi + (zm + 0.5) * std::log(t) - t + std::log(series);
}

// sin(pi x) and cos(pi x) with exact argument reduction.
double sinpi(double x) {
    const double r = x - 2.0 * std::round(0.5 * x);
    if (r == 0.0 || std::abs(r) == 1.0) return 0.0;
    return std::sin(std::numbers::pi * r);
}

double cospi(double x) {
    const double r = x - 2.0 * std::round(0.5 * x);
    if (std::abs(r) == 0.5) return 0.0;
    return std::cos(std::numbers::pi * r);
}

// log sin(pi z), any branch.
Complex log_sinpi(const Complex& z) {
    const double x = z.real();
    const double y = z.imag();
    if (std::abs(y) < 20.0) {
        const Complex s{sinpi(x) * std::cosh(std::numbers::pi * y),
                        cospi(x) * std::sinh(std::numbers::pi * y)};
        return std::log(s);
    }
    // sin(pi z) = e^{-i pi z} (1 - e^{2 i pi z}) / (2i) for Im z > 0, and the
    // conjugate relation below the axis.
    const Complex i{0.0, 1.0};
    const double pi = std::numbers::pi;
    if (y > 0.0) {
        const Complex small = std::exp(2.0 * pi * i * z);
        return -i * pi * z + std::log(1.0 - small) - std::log(2.0 * i);
    }
    const Complex small = std::exp(-2.0 * pi * i * z);
    return i * pi * z + std::log(1.0 - small) - std::log(-2.0 * i);
}

// log Gamma for Re z < 0.5 via reflection; correct modulo 2 pi i.
Complex reflected_log_gamma(const Complex& z) {
    return kLogPi - log_sinpi(z) - lanczos_log_gamma(1.0 - z);
}

}  // namespace

std::optional<long> gamma_pole(const Complex& z) {
    if (std::abs(z.imag()) >= kPoleTolerance) return std::nullopt;
    const double nearest = std::round(z.real());
    if (nearest > 0.0 || std::abs(z.real() - nearest) >= kPoleTolerance) {
        return std::nullopt;
    }
    return static_cast<long>(nearest);
}

Complex log_gamma(const Complex& z_in) {
    // A signed zero imaginary part would flip arg() on the negative axis.
    const Complex z{z_in.real(), z_in.imag() == 0.0 ? 0.0 : z_in.imag()};
    if (!is_finite(z)) throw DomainError("log_gamma: non-finite argument");
    if (const auto pole = gamma_pole(z)) throw PoleError(*pole, "log_gamma");
    if (z.real() >= 0.5) return lanczos_log_gamma(z);

    const Complex reflected = reflected_log_gamma(z);

    // The principal branch obeys log Gamma(z) = log Gamma(z + m) - sum log(z + j)
    // with principal logs; only its imaginary part is needed to pick the branch.
    const double shift = std::ceil(0.5 - z.real());
    if (shift > kMaxReflectionShift) {
        throw RangeError("log_gamma: argument too far into the left half-plane");
    }
    const auto m = static_cast<long>(shift);
    double reference = lanczos_log_gamma(z + static_cast<double>(m)).imag();
    for (long j = 0; j < m; ++j) reference -= std::arg(z + static_cast<double>(j));

    const double two_pi = 2.0 * std::numbers::pi;
    const double turns = std::round((reference - reflected.imag()) / two_pi);
    return {reflected.real(), reflected.imag() + two_pi * turns};
}

Complex gamma(const Complex& z) {
    if (!is_finite(z)) throw DomainError("gamma: non-finite argument");
    if (const auto pole = gamma_pole(z)) throw PoleError(*pole, "gamma");
    if (z.imag() == 0.0 && z.real() < 171.0) return std::tgamma(z.real());
    const Complex lg = z.real() >= 0.5 ? lanczos_log_gamma(z) : reflected_log_gamma(z);
    if (lg.real() > kMaxLog) throw RangeError("gamma: result overflows double");
    return std::exp(lg);
}

Complex pochhammer(const Complex& lambda, unsigned k) {
    if (k == 0) return 1.0;
    if (!is_finite(lambda)) throw DomainError("pochhammer: non-finite argument");

    const auto pole = gamma_pole(lambda);
    if (k <= kPochhammerProductLimit || pole) {
        if (pole && static_cast<long>(k) > -*pole) return 0.0;
        Complex product = 1.0;
        for (unsigned j = 0; j < k; ++j) product *= lambda + static_cast<double>(j);
        if (!is_finite(product)) throw RangeError("pochhammer: result overflows double");
        return product;
    }

    if (k <= kPochhammerScaledLimit) {
        // Direct product with the binary exponent carried separately, which
        // keeps the product's accuracy without intermediate overflow.
        Complex product = 1.0;
        long exponent = 0;
        for (unsigned j = 0; j < k; ++j) {
            product *= lambda + static_cast<double>(j);
            const double m = std::max(std::abs(product.real()), std::abs(product.imag()));
            if (m > 0x1p500 || (m < 0x1p-500 && m > 0.0)) {
                int e = 0;
                std::frexp(m, &e);
                product = {std::ldexp(product.real(), -e), std::ldexp(product.imag(), -e)};
                exponent += e;
            }
        }
        if (product == 0.0) return 0.0;
        if (std::log(std::abs(product)) + static_cast<double>(exponent) * std::numbers::ln2 > kMaxLog) {
            throw RangeError("pochhammer: result overflows double");
        }
        const int e = static_cast<int>(std::clamp(exponent, -4000L, 4000L));
        return {std::ldexp(product.real(), e), std::ldexp(product.imag(), e)};
    }

    const Complex lg = log_gamma(lambda + static_cast<double>(k)) - log_gamma(lambda);
    if (lg.real() > kMaxLog) throw RangeError("pochhammer: result overflows double");
    return std::exp(lg);
}

Complex pochhammer(const Complex& lambda, double nu) {
    if (!(nu >= 0.0) || !std::isfinite(nu)) {
        throw DomainError("pochhammer: subscript must be a finite non-negative real");
    }
    if (nu == std::nearbyint(nu) && nu <= static_cast<double>(std::numeric_limits<unsigned>::max())) {
        return pochhammer(lambda, static_cast<unsigned>(nu));
    }
    const LogPochhammer lp = log_pochhammer(lambda, nu);
    switch (lp.kind) {
        case LogPochhammer::Kind::zero:
            return 0.0;
        case LogPochhammer::Kind::infinite:
            throw PoleError(*gamma_pole(lambda + nu), "pochhammer numerator");
        case LogPochhammer::Kind::finite:
            break;
    }
    if (lp.value.real() > kMaxLog) throw RangeError("pochhammer: result overflows double");
    return std::exp(lp.value);
}

Complex pochhammer_shift(const Complex& lambda, unsigned k) {
    const Complex denominator = pochhammer(lambda, k);
    if (denominator == 0.0) {
        throw DomainError("pochhammer_shift: division by zero, (lambda)_k vanishes");
    }
    return lambda * pochhammer(1.0 + lambda, k) / denominator;
}

LogPochhammer log_pochhammer(const Complex& lambda, double nu) {
    using Kind = LogPochhammer::Kind;
    if (nu == 0.0) return {Kind::finite, 0.0};

    const auto lambda_pole = gamma_pole(lambda);
    const bool integral = nu == std::nearbyint(nu);

    if (integral) {
        if (lambda_pole) {
            if (nu > static_cast<double>(-*lambda_pole)) return {Kind::zero, 0.0};
            Complex product = 1.0;
            for (double j = 0.0; j < nu; j += 1.0) product *= lambda + j;
            return {Kind::finite, std::log(product)};
        }
        if (nu <= kPochhammerProductLimit) {
            Complex product = 1.0;
            for (double j = 0.0; j < nu; j += 1.0) product *= lambda + j;
            if (product == 0.0) return {Kind::zero, 0.0};
            if (is_finite(product)) return {Kind::finite, std::log(product)};
        }
        return {Kind::finite, log_gamma(lambda + nu) - log_gamma(lambda)};
    }

    if (lambda_pole) return {Kind::zero, 0.0};
    if (gamma_pole(lambda + nu)) return {Kind::infinite, 0.0};
    return {Kind::finite, log_gamma(lambda + nu) - log_gamma(lambda)};
}

}  // namespace struvint
