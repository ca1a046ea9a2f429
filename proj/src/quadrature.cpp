#include "struvint/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "struvint/errors.hpp"
#include "struvint/gamma.hpp"

namespace struvint {
namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 61>;
using Gauss = boost::math::quadrature::gauss<double, 30>;

constexpr double kEps = std::numeric_limits<double>::epsilon();
const double kMaxLog = std::log(std::numeric_limits<double>::max());

// Panels narrower than this are not split further.
constexpr double kMinPanelWidth = 1e-45;

// Consecutive endpoint bisections without real error reduction before the
// endpoint is declared non-integrable.
constexpr int kStallLimit = 30;
constexpr double kStallRatio = 0.99;

struct Panel {
    double lo = 0.0;
    double hi = 0.0;
    Complex value{};
    double error = 0.0;
    // Panel variable is t with theta = t^(1/sigma) instead of theta itself.
    bool mapped = false;
};

// The theta-space integrand
//   a^mu (cosh t - 1)^{mu-1} sinh t (a e^t)^{-lambda} g(a (cosh t - 1)),
// with cosh t - 1 = 2 sinh^2(t/2) to keep small t exact.
class ThetaIntegrand {
public:
    ThetaIntegrand(const Integrand& g, double a, const Complex& mu, const Complex& lambda)
        : g_(g), a_(a), mu_(mu), lambda_(lambda), log_a_(std::log(a)), log_2a_(std::log(2.0 * a)) {}

    Complex operator()(double theta) {
        ++evaluations;
        const double sh = std::sinh(0.5 * theta);
        const double x = 2.0 * a_ * sh * sh;
        if (!(x > 0.0)) return 0.0;
        const Complex gx = g_(x);
        if (!is_finite(gx)) throw RangeError("integrate_kernel: integrand g is not finite");
        if (gx == 0.0) return 0.0;
        const Complex log_kernel = (mu_ - 1.0) * (log_2a_ + 2.0 * std::log(sh)) -
                                   lambda_ * (log_a_ + theta) + std::log(a_ * std::sinh(theta));
        const Complex log_f = log_kernel + std::log(gx);
        if (log_f.real() > kMaxLog) throw RangeError("integrate_kernel: integrand overflows");
        return std::exp(log_f);
    }

    unsigned evaluations = 0;

private:
    const Integrand& g_;
    double a_;
    Complex mu_;
    Complex lambda_;
    double log_a_;
    double log_2a_;
};

// Variable of the first unit of theta when Re(mu) < 1/2: theta = t^(1/sigma)
// with sigma = 2 Re(mu) turns the theta^(sigma-1) endpoint behaviour into a
// bounded integrand.
class EndpointMap {
public:
    explicit EndpointMap(double sigma) : sigma_(sigma), active_(sigma > 0.0 && sigma < 1.0) {}

    bool active() const { return active_; }

    template <class F>
    Complex operator()(F& f, double t) const {
        if (t <= 0.0) return 0.0;
        const double theta = std::pow(t, 1.0 / sigma_);
        const Complex v = f(theta);
        if (v == 0.0) return 0.0;
        return v * (theta / (sigma_ * t));
    }

private:
    double sigma_;
    bool active_;
};

Panel evaluate_panel(ThetaIntegrand& f, const EndpointMap& map, double lo, double hi,
                     bool mapped) {
    const auto& nodes = Kronrod::abscissa();
    const auto& kw = Kronrod::weights();
    const auto& gw = Gauss::weights();
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    auto eval = [&](double v) { return mapped ? map(f, v) : f(v); };

    // Gauss order 30 is even, so the Gauss nodes are the odd Kronrod indices.
    const Complex f0 = eval(center);
    Complex kronrod = f0 * kw[0];
    Complex gauss = 0.0;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const Complex pair = eval(center + half * nodes[i]) + eval(center - half * nodes[i]);
        kronrod += pair * kw[i];
        if (i % 2 == 1) gauss += pair * gw[i / 2];
    }
    kronrod *= half;
    gauss *= half;
    const double error = std::max(std::abs(kronrod - gauss), 2.0 * kEps * std::abs(kronrod));
    return {lo, hi, kronrod, error, mapped};
}

bool worse(const Panel& a, const Panel& b) { return a.error < b.error; }

Complex total_value(std::vector<Panel> panels) {
    std::sort(panels.begin(), panels.end(),
              [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
    CompensatedSum sum;
    for (const auto& p : panels) sum.add(p.value);
    return sum.value();
}

double total_error(const std::vector<Panel>& panels) {
    double e = 0.0;
    for (const auto& p : panels) e += p.error;
    return e;
}

}  // namespace

void QuadControl::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw DomainError("QuadControl: tolerances must be positive");
    }
    if (max_panels < 1) throw DomainError("QuadControl: max_panels must be >= 1");
    if (!(tail_safety >= 1.0)) throw DomainError("QuadControl: tail_safety must be >= 1");
    if (!(max_theta > 0.0)) throw DomainError("QuadControl: max_theta must be positive");
}

QuadResult integrate_kernel(const Integrand& g, double a, const Complex& mu,
                            const Complex& lambda_eff, const QuadControl& ctl) {
    ctl.validate();
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("integrate_kernel: a must be positive");
    if (!is_finite(mu) || !is_finite(lambda_eff)) {
        throw DomainError("integrate_kernel: mu and lambda_eff must be finite");
    }

    ThetaIntegrand f(g, a, mu, lambda_eff);
    const EndpointMap map(2.0 * mu.real());
    QuadResult result;
    std::vector<Panel> panels;

    // Extend the integration range chunk by chunk until the exponential
    // envelope certifies the remainder. theta = 1 is t = 1 under the map.
    double theta_end = 1.0;
    panels.push_back(evaluate_panel(f, map, 0.0, theta_end, map.active()));
    double envelope = std::abs(f(theta_end));
    double previous_rate = -1.0;
    double tail_bound = 0.0;
    bool tail_certified = false;
    while (true) {
        const double target =
            std::max(ctl.abs_tol, ctl.rel_tol * std::abs(total_value(panels))) / ctl.tail_safety;
        if (envelope == 0.0 && previous_rate != -1.0) {
            tail_bound = 0.0;
            tail_certified = true;
            break;
        }
        if (theta_end >= ctl.max_theta) break;
        if (panels.size() >= ctl.max_panels) {
            result.status = "max_panels reached while extending the tail";
            break;
        }
        const double step = std::clamp(0.25 * theta_end, 1.0, 8.0);
        const double next_end = std::min(theta_end + step, ctl.max_theta);
        panels.push_back(evaluate_panel(f, map, theta_end, next_end, false));
        const double next_envelope = std::abs(f(next_end));
        const double rate = (envelope > 0.0 && next_envelope > 0.0)
                                ? std::log(envelope / next_envelope) / (next_end - theta_end)
                                : (next_envelope == 0.0 ? std::numeric_limits<double>::infinity()
                                                        : -1.0);
        theta_end = next_end;
        envelope = next_envelope;
        if (rate > 0.0 && previous_rate > 0.0) {
            const double r = std::min(rate, previous_rate);
            tail_bound = envelope / r;
            if (tail_bound <= target) {
                tail_certified = true;
                previous_rate = rate;
                break;
            }
        }
        previous_rate = rate;
    }
    if (!tail_certified) {
        tail_bound = envelope * std::max(1.0, ctl.max_theta);
        result.converged = false;
        if (result.status == "ok") result.status = "tail not certified before max_theta";
    }

    // Global adaptive refinement: always split the panel with the largest
    // error estimate.
    std::make_heap(panels.begin(), panels.end(), worse);
    double left_error = -1.0;
    int stalled = 0;
    while (true) {
        const double target =
            std::max(ctl.abs_tol, ctl.rel_tol * std::abs(total_value(panels)));
        if (total_error(panels) <= target) break;
        if (panels.size() + 1 > ctl.max_panels) {
            result.converged = false;
            if (result.status == "ok") result.status = "tolerance not met within max_panels";
            break;
        }
        std::pop_heap(panels.begin(), panels.end(), worse);
        const Panel worst = panels.back();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (worst.hi - worst.lo < kMinPanelWidth || mid <= worst.lo || mid >= worst.hi) {
            std::push_heap(panels.begin(), panels.end(), worse);
            result.converged = false;
            result.status = "tolerance not met: panel width underflow";
            break;
        }
        panels.pop_back();
        const Panel left = evaluate_panel(f, map, worst.lo, mid, worst.mapped);
        const Panel right = evaluate_panel(f, map, mid, worst.hi, worst.mapped);
        if (worst.lo == 0.0) {
            if (left_error >= 0.0 && left.error > kStallRatio * left_error) {
                if (++stalled >= kStallLimit) {
                    throw NonIntegrableError(
                        "integrate_kernel: error estimate at theta = 0 does not decrease under "
                        "refinement; integrand is not integrable at x = 0");
                }
            } else {
                stalled = 0;
            }
            left_error = left.error;
        }
        panels.push_back(left);
        std::push_heap(panels.begin(), panels.end(), worse);
        panels.push_back(right);
        std::push_heap(panels.begin(), panels.end(), worse);
    }

    result.value = total_value(panels);
    result.error_estimate = total_error(panels) + tail_bound;
    result.panels_used = static_cast<unsigned>(panels.size());
    result.cutoff_theta = theta_end;
    result.evaluations = f.evaluations;
    if (!is_finite(result.value)) throw RangeError("integrate_kernel: result not representable");
    return result;
}

Complex oberhettinger_closed_form(double a, const Complex& mu, const Complex& lambda) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("oberhettinger: a must be positive");
    if (!(mu.real() > 0.0) || !(mu.real() < lambda.real())) {
        throw DomainError("oberhettinger: condition violated: 0 < Re(mu) < Re(lambda)");
    }
    if (mu.imag() == 0.0 && lambda.imag() == 0.0 && lambda.real() + mu.real() < 160.0) {
        const double m = mu.real();
        const double l = lambda.real();
        const double direct = 2.0 * l * std::pow(a, -l) * std::pow(0.5 * a, m) *
                              std::tgamma(2.0 * m) * std::tgamma(l - m) / std::tgamma(1.0 + l + m);
        if (std::isfinite(direct) && direct != 0.0) return direct;
    }
    const Complex log_value = -lambda * std::log(a) + mu * std::log(0.5 * a) +
                              log_gamma(2.0 * mu) + log_gamma(lambda - mu) -
                              log_gamma(1.0 + lambda + mu);
    if (log_value.real() > kMaxLog) throw RangeError("oberhettinger: value overflows");
    return 2.0 * lambda * std::exp(log_value);
}

}  // namespace struvint
