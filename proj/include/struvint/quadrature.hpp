#pragma once

#include <functional>
#include <string>

#include "struvint/complex.hpp"

namespace struvint {

struct QuadControl {
    double rel_tol = 1e-11;
    double abs_tol = 1e-300;
    unsigned max_panels = 4000;
    // Tail truncation: the integral is cut at the first chunk boundary theta
    // where the exponential envelope |f(theta)| / rate certifies a remainder
    // below target / tail_safety, and never beyond max_theta.
    double tail_safety = 10.0;
    double max_theta = 200.0;

    void validate() const;
};

struct QuadResult {
    Complex value{};
    double error_estimate = 0.0;
    unsigned panels_used = 0;
    double cutoff_theta = 0.0;
    unsigned evaluations = 0;
    bool converged = true;
    std::string status = "ok";
};

// g maps x > 0 to the non-kernel part of the integrand. It must be pure; it
// is evaluated once per node.
using Integrand = std::function<Complex(double)>;

// Integral over (0, inf) of x^{mu-1} (x + a + sqrt(x^2 + 2ax))^{-lambda_eff} g(x) dx.
//
// Works in theta with x = a (cosh theta - 1), which turns the kernel into
// (a e^theta)^{-lambda_eff}. Panels are Gauss-Kronrod (30/61) with the
// embedded Gauss difference as error estimate. The panel touching theta = 0
// is bisected geometrically, which resolves the algebraic endpoint
// singularity (cosh theta - 1)^{mu-1} and any power behaviour of g at 0.
//
// Returns converged = false (with the best estimate) when the panel budget
// or max_theta is exhausted. Throws NonIntegrableError when refinement at
// theta = 0 stops reducing the error, DomainError on bad arguments.
QuadResult integrate_kernel(const Integrand& g, double a, const Complex& mu,
                            const Complex& lambda_eff, const QuadControl& ctl = {});

// 2 lambda a^{-lambda} (a/2)^mu Gamma(2mu) Gamma(lambda-mu) / Gamma(1+lambda+mu),
// valid for a > 0 and 0 < Re(mu) < Re(lambda).
Complex oberhettinger_closed_form(double a, const Complex& mu, const Complex& lambda);

}  // namespace struvint
