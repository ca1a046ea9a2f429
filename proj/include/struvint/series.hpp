#pragma once

#include <cmath>
#include <deque>
#include <limits>
#include <string>
#include <string_view>

#include "struvint/complex.hpp"
#include "struvint/errors.hpp"

namespace struvint {

// Truncation policy shared by every infinite series in the library.
struct SeriesControl {
    double rel_tol = 1e-16;
    unsigned max_terms = 10000;
    // Consecutive below-tolerance terms (or shells) required before stopping.
    unsigned consecutive_small = 3;
    // Largest total degree summed by multi-variable series.
    unsigned max_shells = 400;

    void validate() const {
        if (!(rel_tol > 0.0)) throw DomainError("SeriesControl: rel_tol must be positive");
        if (max_terms < 1) throw DomainError("SeriesControl: max_terms must be >= 1");
        if (consecutive_small < 1) {
            throw DomainError("SeriesControl: consecutive_small must be >= 1");
        }
        if (max_shells < 1) throw DomainError("SeriesControl: max_shells must be >= 1");
    }
};

struct SeriesResult {
    Complex value{};
    unsigned terms = 0;
    // Magnitude of the trailing below-tolerance terms plus a roundoff bound.
    double tail_estimate = 0.0;
};

namespace detail {

// Sums term(0), term(1), ... in ascending order until `consecutive_small`
// successive terms satisfy |t_k| <= rel_tol * |S_k|. `term` is called exactly
// once per index, in order, so it may carry recurrence state.
template <class TermFn>
SeriesResult sum_series(TermFn&& term, const SeriesControl& ctl, std::string_view name) {
    ctl.validate();
    CompensatedSum sum;
    std::deque<double> window;
    unsigned small_run = 0;
    for (unsigned k = 0; k < ctl.max_terms; ++k) {
        const Complex t = term(k);
        if (!is_finite(t)) {
            throw RangeError(std::string(name) + ": term " + std::to_string(k) +
                             " is not representable");
        }
        sum.add(t);
        const double mag = std::abs(t);
        if (mag <= ctl.rel_tol * std::abs(sum.value())) {
            ++small_run;
            window.push_back(mag);
            if (window.size() > ctl.consecutive_small) window.pop_front();
        } else {
            small_run = 0;
            window.clear();
        }
        if (small_run >= ctl.consecutive_small) {
            double tail = 4.0 * std::numeric_limits<double>::epsilon() * sum.abs_sum();
            for (double w : window) tail += w;
            return {sum.value(), k + 1, tail};
        }
    }
    throw ConvergenceError(std::string(name) + ": no convergence within " +
                           std::to_string(ctl.max_terms) + " terms");
}

}  // namespace detail
}  // namespace struvint
