#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "struvint/complex.hpp"
#include "struvint/hyper_series.hpp"
#include "struvint/series.hpp"

namespace struvint {

// A global parameter a_j with its per-variable weights (theta_j^(1..n)).
struct GlobalParam {
    Complex value{};
    std::vector<double> weights;
};

// Parameter structure of the Srivastava-Daoust generalized Lauricella series
//
//   F(z_1..z_n) = sum_{k_1..k_n >= 0} Omega(k) prod_m z_m^{k_m} / k_m!
//
// where Omega(k) is a ratio of Pochhammer symbols. Global blocks take the
// linear-form subscript k_1 w^(1) + ... + k_n w^(n); per-variable blocks of
// variable m take k_m * w.
struct LauricellaSpec {
    std::size_t n = 1;
    std::vector<GlobalParam> global_upper;
    std::vector<GlobalParam> global_lower;
    std::vector<std::vector<WeightedParam>> per_var_upper;  // size n
    std::vector<std::vector<WeightedParam>> per_var_lower;  // size n

    // Throws DomainError on shape mismatches or non-positive weights.
    void validate() const;

    // 1 + sum psi^(m) + sum delta^(m) - sum theta^(m) - sum phi^(m).
    double margin(std::size_t m) const;

    // Radius gate applied to z_m when margin(m) == 0.
    double boundary_radius(std::size_t m) const;
};

using MultiIndex = std::vector<unsigned>;

// Omega(k_1, ..., k_n). Throws PoleError naming the offending block when a
// denominator vanishes or a numerator is infinite.
Complex omega(const LauricellaSpec& spec, std::span<const unsigned> k);

// Visits every k with k_1 + ... + k_n == degree once, in ascending
// lexicographic order: (0,..,0,d) first and (d,0,..,0) last.
void for_each_in_shell(std::size_t n, unsigned degree,
                       const std::function<void(std::span<const unsigned>)>& visit);

std::vector<MultiIndex> shell_indices(std::size_t n, unsigned degree);

struct LauricellaResult {
    Complex value{};
    unsigned shells = 0;    // total degrees summed: 0 .. shells-1
    std::size_t terms = 0;  // multi-indices visited
    double tail_estimate = 0.0;
};

// Shell-by-shell summation in non-decreasing total degree. Stops once
// `ctl.consecutive_small` successive shells have sum |term| <= rel_tol * |S|;
// throws ConvergenceError after ctl.max_shells shells.
LauricellaResult lauricella_eval(const LauricellaSpec& spec, std::span<const Complex> z,
                                 const SeriesControl& ctl = {});

}  // namespace struvint
