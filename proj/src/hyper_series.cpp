#include "struvint/hyper_series.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "struvint/errors.hpp"
#include "struvint/gamma.hpp"

namespace struvint {
namespace {

const double kMaxLog = std::log(std::numeric_limits<double>::max());
const Complex kLogGammaThreeHalves = log_gamma(1.5);

bool is_integral(double w) { return w == std::round(w) && w <= 64.0; }

// Gamma(x + w) / Gamma(x) for integral w.
Complex gamma_step(const Complex& x, double w) { return pochhammer(x, static_cast<unsigned>(w)); }

void require_positive_argument(double z, const char* name) {
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw DomainError(std::string(name) + ": argument z must be a positive real");
    }
}

// Weighting applied to the k-th inner term; selects value or derivative.
enum class Derivative { none, first, second };

// (z/2)^{p+1} * sum_k s_k * w_k, where
//   s_k = (-c)^k (z/2)^{2k} / (Gamma(k + 3/2) Gamma(k + beta)),
// with the power prefactor lowered by one per derivative order.
SeriesResult struve_family(const Complex& p, const Complex& beta, const Complex& c, double z,
                           Derivative d, const SeriesControl& ctl, const char* name) {
    require_positive_argument(z, name);
    if (const auto pole = gamma_pole(beta)) {
        throw PoleError(*pole, std::string(name) + ": p + (b+2)/2 is a non-positive integer");
    }

    const double half = 0.5 * z;
    const double log_half = std::log(half);
    const Complex ratio = -c * half * half;

    Complex s = std::exp(-kLogGammaThreeHalves - log_gamma(beta));
    auto term = [&](unsigned k) {
        const double kk = static_cast<double>(k);
        if (k > 0) s *= ratio / ((kk + 0.5) * (kk - 1.0 + beta));
        switch (d) {
            case Derivative::none:
                return s;
            case Derivative::first:
                return s * (2.0 * kk + p + 1.0) * 0.5;
            case Derivative::second:
                return s * (2.0 * kk + p + 1.0) * (2.0 * kk + p) * 0.25;
        }
        return s;
    };
    SeriesResult r = detail::sum_series(term, ctl, name);

    const double lowered = d == Derivative::none ? 0.0 : (d == Derivative::first ? 1.0 : 2.0);
    const Complex log_prefactor = (p + 1.0 - lowered) * log_half;
    if (log_prefactor.real() > kMaxLog) {
        throw RangeError(std::string(name) + ": power prefactor overflows");
    }
    const Complex prefactor = std::exp(log_prefactor);
    r.value *= prefactor;
    r.tail_estimate *= std::abs(prefactor);
    if (!is_finite(r.value)) throw RangeError(std::string(name) + ": result not representable");
    return r;
}

Complex struve_beta(const StruveParams& params) {
    return params.p + (params.b + 2.0) / 2.0;
}

}  // namespace

double FoxWrightSpec::margin() const {
    double m = 1.0;
    for (const auto& l : lower) m += l.weight;
    for (const auto& u : upper) m -= u.weight;
    return m;
}

double FoxWrightSpec::boundary_radius() const {
    double log_rho = 0.0;
    for (const auto& u : upper) log_rho -= u.weight * std::log(u.weight);
    for (const auto& l : lower) log_rho += l.weight * std::log(l.weight);
    return std::exp(log_rho);
}

void FoxWrightSpec::validate() const {
    auto check = [](const std::vector<WeightedParam>& block, const char* which) {
        for (std::size_t j = 0; j < block.size(); ++j) {
            if (!(block[j].weight > 0.0) || !std::isfinite(block[j].weight)) {
                throw DomainError(std::string("fox_wright: ") + which + " weight " +
                                  std::to_string(j) + " must be a positive real");
            }
            if (!is_finite(block[j].value)) {
                throw DomainError(std::string("fox_wright: ") + which + " parameter " +
                                  std::to_string(j) + " is not finite");
            }
        }
    };
    check(upper, "upper");
    check(lower, "lower");
}

SeriesResult struve_h_paper(const Complex& nu, double z, const SeriesControl& ctl) {
    return struve_family(nu, nu + 0.5, 1.0, z, Derivative::none, ctl, "struve_h_paper");
}

SeriesResult struve_l_paper(const Complex& nu, double z, const SeriesControl& ctl) {
    return struve_family(nu, nu + 0.5, -1.0, z, Derivative::none, ctl, "struve_l_paper");
}

SeriesResult struve_w(const StruveParams& params, double z, const SeriesControl& ctl) {
    return struve_family(params.p, struve_beta(params), params.c, z, Derivative::none, ctl,
                         "struve_w");
}

SeriesResult struve_w_derivative(const StruveParams& params, double z, int order,
                                 const SeriesControl& ctl) {
    if (order != 1 && order != 2) {
        throw DomainError("struve_w_derivative: order must be 1 or 2");
    }
    return struve_family(params.p, struve_beta(params), params.c, z,
                         order == 1 ? Derivative::first : Derivative::second, ctl,
                         "struve_w_derivative");
}

SeriesResult fox_wright(const FoxWrightSpec& spec, const Complex& z, const SeriesControl& ctl) {
    spec.validate();
    if (!is_finite(z)) throw DomainError("fox_wright: argument is not finite");

    const double margin = spec.margin();
    if (z != 0.0) {
        if (margin < -1e-12) {
            throw DivergenceError("fox_wright: 1 + sum(B) - sum(A) = " + std::to_string(margin) +
                                  " < 0, series diverges");
        }
        if (std::abs(margin) <= 1e-12) {
            const double gate = 0.9 * spec.boundary_radius();
            if (std::abs(z) >= gate) {
                throw DivergenceError("fox_wright: |z| = " + std::to_string(std::abs(z)) +
                                      " outside the zero-margin radius gate " +
                                      std::to_string(gate));
            }
        }
    }

    // With integer weights and no parameter on a pole no term can reach a
    // pole, so a ratio recurrence from the k = 0 term applies and
    // Gamma(x + A)/Gamma(x) is a Pochhammer product.
    bool ratio_path = true;
    for (const auto* block : {&spec.upper, &spec.lower}) {
        for (const auto& w : *block) {
            if (!is_integral(w.weight) || gamma_pole(w.value)) ratio_path = false;
        }
    }
    if (ratio_path) {
        Complex log_first = 0.0;
        for (const auto& u : spec.upper) log_first += log_gamma(u.value);
        for (const auto& l : spec.lower) log_first -= log_gamma(l.value);
        if (log_first.real() > kMaxLog) throw RangeError("fox_wright: first term overflows");
        Complex current = std::exp(log_first);
        auto term = [&](unsigned k) -> Complex {
            if (k == 0) return current;
            if (z == 0.0) return 0.0;
            const double prev = static_cast<double>(k - 1);
            Complex ratio = z / static_cast<double>(k);
            for (const auto& u : spec.upper) ratio *= gamma_step(u.value + u.weight * prev, u.weight);
            for (const auto& l : spec.lower) ratio /= gamma_step(l.value + l.weight * prev, l.weight);
            current *= ratio;
            if (!is_finite(current)) {
                throw RangeError("fox_wright: term " + std::to_string(k) + " overflows");
            }
            return current;
        };
        return detail::sum_series(term, ctl, "fox_wright");
    }

    const double log_abs_z = z == 0.0 ? 0.0 : std::log(std::abs(z));
    const Complex unit_z = z == 0.0 ? Complex{1.0} : z / std::abs(z);
    Complex phase = 1.0;

    auto term = [&](unsigned k) -> Complex {
        if (k > 0) {
            if (z == 0.0) return 0.0;
            phase *= unit_z;
        }
        const double kk = static_cast<double>(k);
        Complex log_term = -log_gamma(kk + 1.0);
        if (k > 0) log_term += kk * log_abs_z;
        for (std::size_t j = 0; j < spec.upper.size(); ++j) {
            const Complex arg = spec.upper[j].value + spec.upper[j].weight * kk;
            if (const auto pole = gamma_pole(arg)) {
                throw PoleError(*pole, "fox_wright upper[" + std::to_string(j) + "] at k=" +
                                           std::to_string(k));
            }
            log_term += log_gamma(arg);
        }
        for (const auto& l : spec.lower) {
            const Complex arg = l.value + l.weight * kk;
            if (gamma_pole(arg)) return 0.0;  // 1/Gamma vanishes
            log_term -= log_gamma(arg);
        }
        if (log_term.real() > kMaxLog) {
            throw RangeError("fox_wright: term " + std::to_string(k) + " overflows");
        }
        return std::exp(log_term) * phase;
    };
    return detail::sum_series(term, ctl, "fox_wright");
}

SeriesResult pfq(std::span<const Complex> upper, std::span<const Complex> lower,
                 const Complex& z, const SeriesControl& ctl) {
    if (!is_finite(z)) throw DomainError("pfq: argument is not finite");
    for (std::size_t j = 0; j < lower.size(); ++j) {
        if (const auto pole = gamma_pole(lower[j])) {
            throw PoleError(*pole, "pfq lower[" + std::to_string(j) +
                                       "] is a non-positive integer");
        }
    }
    if (z != 0.0) {
        if (upper.size() > lower.size() + 1) {
            throw DivergenceError("pfq: p > q + 1 diverges for z != 0");
        }
        if (upper.size() == lower.size() + 1 && std::abs(z) >= 1.0) {
            throw DivergenceError("pfq: p = q + 1 requires |z| < 1");
        }
    }

    Complex t = 1.0;
    auto term = [&](unsigned k) {
        if (k > 0) {
            const double prev = static_cast<double>(k - 1);
            Complex ratio = z / static_cast<double>(k);
            for (const auto& a : upper) ratio *= a + prev;
            for (const auto& b : lower) ratio /= b + prev;
            t *= ratio;
        }
        return t;
    };
    return detail::sum_series(term, ctl, "pfq");
}

}  // namespace struvint
