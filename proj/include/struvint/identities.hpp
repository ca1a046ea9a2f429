#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "struvint/complex.hpp"
#include "struvint/lauricella.hpp"
#include "struvint/quadrature.hpp"
#include "struvint/series.hpp"

namespace struvint {

// Which of the two product-of-Struve integrals a case instantiates:
//   theorem1: W factors evaluated at y_j / K(x)
//   theorem2: W factors evaluated at x y_j / K(x)
// with K(x) = x + a + sqrt(x^2 + 2ax).
enum class Variant { theorem1, theorem2 };

const char* to_string(Variant v);
Variant variant_from_string(const std::string& name);

struct IntegralCase {
    Variant variant = Variant::theorem1;
    double a = 1.0;
    Complex lambda{};
    Complex mu{};
    Complex b{};
    Complex c{};
    std::vector<Complex> p;
    std::vector<double> y;

    std::size_t n() const { return p.size(); }

    // p_1 + ... + p_n.
    Complex p_sum() const;

    // Throws DomainError("condition violated: ...") naming the first failed
    // inequality of the variant, or describing the malformed field.
    void validate() const;
};

// Gamma/power coefficient multiplying the Lauricella series on the right-hand
// side of the theorem1 identity.
Complex prefactor_theorem1(const IntegralCase& c);

// Same for theorem2.
Complex prefactor_theorem2(const IntegralCase& c);

Complex prefactor(const IntegralCase& c);

// Lauricella parameters and arguments of the right-hand side.
struct RhsSpec {
    LauricellaSpec spec;
    std::vector<Complex> z;
};

RhsSpec rhs_spec_theorem1(const IntegralCase& c);
RhsSpec rhs_spec_theorem2(const IntegralCase& c);
RhsSpec rhs_spec(const IntegralCase& c);

// Single-factor closed forms (n = 1):
//   1: theorem1 through a 4F5,   2: theorem2 through a 3Psi4,
//   3: form 1 with b = -1, c = 1, 4: form 2 with b = -1, c = 1.
// Forms 3 and 4 substitute b = -1, c = 1 regardless of the case's values.
// Forms 1 and 3 need a theorem1 case, 2 and 4 a theorem2 case.
SeriesResult rhs_corollary(const IntegralCase& c, int which, const SeriesControl& ctl = {});

// prod_j W_{p_j,b,c}(u_j(x)), the non-kernel part of the left-hand integrand.
Complex struve_product(const IntegralCase& c, double x, const SeriesControl& ctl = {});

// Full left-hand integrand x^{mu-1} K(x)^{-lambda} prod_j W_{p_j,b,c}(u_j(x)).
Complex lhs_integrand(const IntegralCase& c, double x, const SeriesControl& ctl = {});

// Relative error is measured against max(|rhs|, kRelativeFloor); below the
// floor the comparison is absolute against kAbsoluteFloor.
inline constexpr double kRelativeFloor = 1e-300;
inline constexpr double kAbsoluteFloor = 1e-12;

struct VerificationReport {
    IntegralCase input;
    Complex lhs{};
    Complex rhs{};
    Complex prefactor{};
    QuadResult quadrature;
    LauricellaResult series;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    // Empty on success; otherwise why the case failed.
    std::string reason;
    double wall_seconds = 0.0;
};

// Evaluates the left side by quadrature and the right side as prefactor x
// Lauricella series, and compares them. Never throws for numerical or domain
// failures of the case; those land in `reason` with pass = false.
VerificationReport verify_case(const IntegralCase& c, const QuadControl& qctl = {},
                               const SeriesControl& sctl = {}, double tol = 1e-6);

}  // namespace struvint
