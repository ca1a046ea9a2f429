#include "struvint/identities.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "struvint/errors.hpp"
#include "struvint/gamma.hpp"
#include "struvint/hyper_series.hpp"

namespace struvint {
namespace {

const double kLog2 = std::numbers::ln2;
const double kMaxLog = std::log(std::numeric_limits<double>::max());

Complex checked_exp(const Complex& log_value, const char* what) {
    if (log_value.real() > kMaxLog) throw RangeError(std::string(what) + ": value overflows");
    return std::exp(log_value);
}

// p_j + (b + 2)/2
Complex lower_struve_param(const IntegralCase& c, std::size_t j) {
    return c.p[j] + (c.b + 2.0) / 2.0;
}

// Shared tail of both prefactors:
//   prod y_j^{p_j+1} / (Gamma(3/2)^n prod Gamma(p_j + (b+2)/2)), in log form.
Complex log_struve_normalization(const IntegralCase& c) {
    Complex s = -static_cast<double>(c.n()) * log_gamma(1.5);
    for (std::size_t j = 0; j < c.n(); ++j) {
        s += (c.p[j] + 1.0) * std::log(c.y[j]);
        s -= log_gamma(lower_struve_param(c, j));
    }
    return s;
}

void require_variant(const IntegralCase& c, Variant v, const char* where) {
    if (c.variant != v) {
        throw DomainError(std::string(where) + " needs a " + to_string(v) + " case");
    }
}

// K(x) = x + a + sqrt(x^2 + 2ax)
double kernel_base(double a, double x) { return x + a + std::sqrt(x * (x + 2.0 * a)); }

std::vector<double> uniform(std::size_t n, double w) { return std::vector<double>(n, w); }

void fill_per_variable_blocks(LauricellaSpec& spec, const IntegralCase& c) {
    spec.per_var_upper.assign(c.n(), {{1.0, 1.0}});
    spec.per_var_lower.clear();
    for (std::size_t j = 0; j < c.n(); ++j) {
        spec.per_var_lower.push_back({{1.5, 1.0}, {lower_struve_param(c, j), 1.0}});
    }
}

}  // namespace

const char* to_string(Variant v) {
    return v == Variant::theorem1 ? "theorem1" : "theorem2";
}

Variant variant_from_string(const std::string& name) {
    if (name == "theorem1") return Variant::theorem1;
    if (name == "theorem2") return Variant::theorem2;
    throw DomainError("unknown variant '" + name + "' (expected theorem1 or theorem2)");
}

Complex IntegralCase::p_sum() const {
    Complex s = 0.0;
    for (const auto& pj : p) s += pj;
    return s;
}

void IntegralCase::validate() const {
    if (p.empty()) throw DomainError("case: n must be >= 1 (p is empty)");
    if (y.size() != p.size()) {
        throw DomainError("case: p and y must have the same length n");
    }
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("case: a must be a positive real");
    for (std::size_t j = 0; j < y.size(); ++j) {
        if (!(y[j] > 0.0) || !std::isfinite(y[j])) {
            throw DomainError("case: y[" + std::to_string(j) + "] must be a positive real");
        }
        if (!is_finite(p[j])) throw DomainError("case: p[" + std::to_string(j) + "] not finite");
    }
    if (!is_finite(lambda) || !is_finite(mu) || !is_finite(b) || !is_finite(c)) {
        throw DomainError("case: lambda, mu, b, c must be finite");
    }

    const double n_real = static_cast<double>(n());
    const Complex ps = p_sum();
    if (variant == Variant::theorem1) {
        if (!(mu.real() > 0.0)) throw DomainError("condition violated: 0 < Re(mu)");
        if (!(mu.real() < (lambda + ps).real() + n_real)) {
            throw DomainError("condition violated: Re(mu) < Re(lambda + p) + n");
        }
    } else {
        if (!((mu + ps).real() > -n_real)) {
            throw DomainError("condition violated: Re(mu + p) > -n");
        }
        if (!(lambda.real() > mu.real())) {
            throw DomainError("condition violated: Re(lambda) > Re(mu)");
        }
        if (!((2.0 * mu + 2.0 * ps).real() + 2.0 * n_real > 0.0)) {
            throw DomainError("condition violated: Re(2mu + 2p + 2n) > 0");
        }
    }
}

Complex prefactor_theorem1(const IntegralCase& c) {
    require_variant(c, Variant::theorem1, "prefactor_theorem1");
    c.validate();
    const double n = static_cast<double>(c.n());
    const Complex shifted = c.lambda + c.p_sum() + n;  // lambda + p + n
    const Complex log_rest = (1.0 - c.mu - c.p_sum() - n) * kLog2 +
                             (c.mu - shifted) * std::log(c.a) + log_gamma(2.0 * c.mu) +
                             log_gamma(shifted - c.mu) - log_gamma(1.0 + shifted + c.mu) +
                             log_struve_normalization(c);
    return shifted * checked_exp(log_rest, "prefactor_theorem1");
}

Complex prefactor_theorem2(const IntegralCase& c) {
    require_variant(c, Variant::theorem2, "prefactor_theorem2");
    c.validate();
    const double n = static_cast<double>(c.n());
    const Complex ps = c.p_sum();
    const Complex shifted = c.lambda + ps + n;
    const Complex doubled = 2.0 * c.mu + 2.0 * ps + 2.0 * n;  // 2mu + 2p + 2n
    const Complex log_rest = (1.0 - c.mu - 2.0 * ps - 2.0 * n) * kLog2 +
                             (c.mu - c.lambda) * std::log(c.a) + log_gamma(c.lambda - c.mu) +
                             log_gamma(doubled) - log_gamma(1.0 + c.lambda + doubled - c.mu) +
                             log_struve_normalization(c);
    return shifted * checked_exp(log_rest, "prefactor_theorem2");
}

Complex prefactor(const IntegralCase& c) {
    return c.variant == Variant::theorem1 ? prefactor_theorem1(c) : prefactor_theorem2(c);
}

RhsSpec rhs_spec_theorem1(const IntegralCase& c) {
    require_variant(c, Variant::theorem1, "rhs_spec_theorem1");
    c.validate();
    const std::size_t n = c.n();
    const Complex shifted = c.lambda + c.p_sum() + static_cast<double>(n);
    RhsSpec out;
    out.spec.n = n;
    out.spec.global_upper = {{1.0 + shifted, uniform(n, 2.0)}, {shifted - c.mu, uniform(n, 2.0)}};
    out.spec.global_lower = {{shifted, uniform(n, 2.0)}, {1.0 + shifted + c.mu, uniform(n, 2.0)}};
    fill_per_variable_blocks(out.spec, c);
    for (std::size_t j = 0; j < n; ++j) {
        out.z.push_back(-c.c * c.y[j] * c.y[j] / (4.0 * c.a * c.a));
    }
    return out;
}

RhsSpec rhs_spec_theorem2(const IntegralCase& c) {
    require_variant(c, Variant::theorem2, "rhs_spec_theorem2");
    c.validate();
    const std::size_t n = c.n();
    const Complex ps = c.p_sum();
    const Complex shifted = c.lambda + ps + static_cast<double>(n);
    const Complex doubled = 2.0 * c.mu + 2.0 * ps + 2.0 * static_cast<double>(n);
    RhsSpec out;
    out.spec.n = n;
    out.spec.global_upper = {{doubled, uniform(n, 4.0)}, {1.0 + shifted, uniform(n, 2.0)}};
    out.spec.global_lower = {{1.0 + c.lambda - c.mu + doubled, uniform(n, 4.0)},
                             {shifted, uniform(n, 2.0)}};
    fill_per_variable_blocks(out.spec, c);
    for (std::size_t j = 0; j < n; ++j) out.z.push_back(-c.c * c.y[j] * c.y[j] / 16.0);
    return out;
}

RhsSpec rhs_spec(const IntegralCase& c) {
    return c.variant == Variant::theorem1 ? rhs_spec_theorem1(c) : rhs_spec_theorem2(c);
}

SeriesResult rhs_corollary(const IntegralCase& input, int which, const SeriesControl& ctl) {
    if (which < 1 || which > 4) throw DomainError("rhs_corollary: which must be 1, 2, 3 or 4");
    if (input.n() != 1) throw DomainError("rhs_corollary: corollaries need n = 1");
    require_variant(input, which % 2 == 1 ? Variant::theorem1 : Variant::theorem2,
                    "rhs_corollary");
    input.validate();

    const Complex mu = input.mu;
    const Complex lambda = input.lambda;
    const Complex p = input.p[0];
    const double y = input.y[0];
    const double a = input.a;

    if (which == 1 || which == 3) {
        Complex lower_struve;
        Complex argument;
        if (which == 1) {
            lower_struve = 1.0 + input.b / 2.0 + p;
            argument = -input.c * y * y / (4.0 * a * a);
        } else {
            lower_struve = 0.5 + p;
            argument = -y * y / (4.0 * a * a);
        }
        const Complex log_coeff = (-mu - p) * kLog2 + (mu - 1.0 - lambda - p) * std::log(a) +
                                  (p + 1.0) * std::log(y) + log_gamma(2.0 * mu) +
                                  log_gamma(1.0 + lambda + p - mu) - log_gamma(1.5) -
                                  log_gamma(2.0 + lambda + p + mu) - log_gamma(lower_struve);
        const Complex coeff = (1.0 + lambda + p) * checked_exp(log_coeff, "rhs_corollary");

        const Complex half_lp = lambda / 2.0 + p / 2.0;
        const std::vector<Complex> upper = {1.5 + half_lp, 0.5 + half_lp - mu / 2.0,
                                            1.0 + half_lp - mu / 2.0, 1.0};
        const std::vector<Complex> lower = {0.5 + half_lp, 1.0 + half_lp + mu / 2.0,
                                            1.5 + half_lp + mu / 2.0, lower_struve, 1.5};
        SeriesResult r = pfq(upper, lower, argument, ctl);
        r.value *= coeff;
        r.tail_estimate *= std::abs(coeff);
        return r;
    }

    Complex lower_struve;
    Complex argument;
    if (which == 2) {
        lower_struve = p + (input.b + 2.0) / 2.0;
        argument = -input.c * y * y / 16.0;
    } else {
        lower_struve = p + 0.5;
        argument = -y * y / 16.0;
    }
    const Complex log_coeff = (-mu - 2.0 * p - 1.0) * kLog2 + (mu - lambda) * std::log(a) +
                              (p + 1.0) * std::log(y) + log_gamma(lambda - mu);
    const Complex coeff = checked_exp(log_coeff, "rhs_corollary");

    FoxWrightSpec spec;
    spec.upper = {{1.0, 1.0}, {lambda + p + 2.0, 2.0}, {2.0 * mu + 2.0 * p + 2.0, 4.0}};
    spec.lower = {{1.5, 1.0},
                  {lower_struve, 1.0},
                  {lambda + p + 1.0, 2.0},
                  {lambda + mu + 2.0 * p + 3.0, 4.0}};
    SeriesResult r = fox_wright(spec, argument, ctl);
    r.value *= coeff;
    r.tail_estimate *= std::abs(coeff);
    return r;
}

Complex struve_product(const IntegralCase& c, double x, const SeriesControl& ctl) {
    if (!(x > 0.0)) throw DomainError("struve_product: x must be positive");
    const double k = kernel_base(c.a, x);
    Complex product = 1.0;
    for (std::size_t j = 0; j < c.n(); ++j) {
        const double u = c.variant == Variant::theorem1 ? c.y[j] / k : x * c.y[j] / k;
        product *= struve_w({c.p[j], c.b, c.c}, u, ctl).value;
    }
    return product;
}

Complex lhs_integrand(const IntegralCase& c, double x, const SeriesControl& ctl) {
    const Complex w = struve_product(c, x, ctl);
    if (w == 0.0) return 0.0;
    const Complex log_kernel = (c.mu - 1.0) * std::log(x) - c.lambda * std::log(kernel_base(c.a, x));
    return std::exp(log_kernel + std::log(w));
}

VerificationReport verify_case(const IntegralCase& c, const QuadControl& qctl,
                               const SeriesControl& sctl, double tol) {
    const auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.input = c;
    rep.tolerance = tol;
    auto finish = [&]() {
        rep.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return rep;
    };

    try {
        c.validate();
    } catch (const Error& e) {
        rep.reason = e.what();
        return finish();
    }

    try {
        const RhsSpec rhs = rhs_spec(c);
        rep.prefactor = prefactor(c);
        rep.series = lauricella_eval(rhs.spec, rhs.z, sctl);
        rep.rhs = rep.prefactor * rep.series.value;
    } catch (const Error& e) {
        rep.reason = std::string("series: ") + e.what();
        return finish();
    }

    try {
        auto g = [&c, &sctl](double x) { return struve_product(c, x, sctl); };
        rep.quadrature = integrate_kernel(g, c.a, c.mu, c.lambda, qctl);
        rep.lhs = rep.quadrature.value;
    } catch (const Error& e) {
        rep.reason = std::string("quadrature: ") + e.what();
        return finish();
    }

    rep.abs_err = std::abs(rep.lhs - rep.rhs);
    const double scale = std::abs(rep.rhs);
    if (scale < kRelativeFloor) {
        rep.rel_err = rep.abs_err;
        rep.pass = rep.abs_err <= kAbsoluteFloor;
    } else {
        rep.rel_err = rep.abs_err / scale;
        rep.pass = rep.rel_err <= tol;
    }
    if (!rep.quadrature.converged) {
        rep.pass = false;
        rep.reason = "quadrature: " + rep.quadrature.status;
    } else if (!rep.pass) {
        rep.reason = "relative error above tolerance";
    }
    return finish();
}

}  // namespace struvint
