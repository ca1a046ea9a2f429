#pragma once

#include <span>
#include <vector>

#include "struvint/complex.hpp"
#include "struvint/series.hpp"

namespace struvint {

// A parameter paired with its positive weight, e.g. (alpha_j, A_j).
struct WeightedParam {
    Complex value{};
    double weight = 1.0;
};

// Upper and lower (parameter, weight) lists of a Fox-Wright pPsiq series.
struct FoxWrightSpec {
    std::vector<WeightedParam> upper;
    std::vector<WeightedParam> lower;

    // 1 + sum(B) - sum(A); the series is entire when positive.
    double margin() const;

    // prod A^{-A} * prod B^{B}: the radius of convergence when margin() == 0.
    double boundary_radius() const;

    // Throws DomainError unless every weight is positive and finite.
    void validate() const;
};

// Parameters of W_{p,b,c}.
struct StruveParams {
    Complex p{};
    Complex b{};
    Complex c{};
};

// The Struve series with denominator Gamma(k + 3/2) Gamma(k + nu + 1/2),
// z > 0.
SeriesResult struve_h_paper(const Complex& nu, double z, const SeriesControl& ctl = {});

// Non-alternating companion of struve_h_paper.
SeriesResult struve_l_paper(const Complex& nu, double z, const SeriesControl& ctl = {});

// Generalized Struve function
//   W_{p,b,c}(z) = sum_k (-c)^k (z/2)^{2k+p+1} / (Gamma(k+3/2) Gamma(k+p+(b+2)/2)),
// z > 0. W with b = 1, c = 1 is the classical Struve H_p.
SeriesResult struve_w(const StruveParams& params, double z, const SeriesControl& ctl = {});

// Term-wise first (order = 1) or second (order = 2) z-derivative of W.
SeriesResult struve_w_derivative(const StruveParams& params, double z, int order,
                                 const SeriesControl& ctl = {});

// Fox-Wright function
//   sum_k prod Gamma(alpha_j + A_j k) / prod Gamma(beta_j + B_j k) z^k / k!.
// Poles in the upper gammas are errors; poles in the lower gammas make the
// term vanish. Negative margin diverges; zero margin requires
// |z| < 0.9 * boundary_radius().
SeriesResult fox_wright(const FoxWrightSpec& spec, const Complex& z,
                        const SeriesControl& ctl = {});

// Generalized hypergeometric pFq. p = q + 1 needs |z| < 1; p > q + 1 only
// converges at z = 0.
SeriesResult pfq(std::span<const Complex> upper, std::span<const Complex> lower,
                 const Complex& z, const SeriesControl& ctl = {});

}  // namespace struvint
