#include <doctest.h>

#include <cmath>

#include "oracle/mp_oracle.hpp"
#include "struvint/errors.hpp"
#include "struvint/quadrature.hpp"

using namespace struvint;

namespace {

double rel(const Complex& got, const Complex& want) {
    return std::abs(got - want) / std::abs(want);
}

const Integrand one = [](double) { return Complex{1.0}; };

}  // namespace

TEST_CASE("closed form") {
    CHECK(oberhettinger_closed_form(1.0, 1.0, 2.0).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(oberhettinger_closed_form(2.0, 1.0, 2.0).real() == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK_THROWS_AS(oberhettinger_closed_form(1.0, 2.0, 1.0), DomainError);
    CHECK_THROWS_WITH_AS(oberhettinger_closed_form(1.0, -0.1, 1.0),
                         doctest::Contains("0 < Re(mu) < Re(lambda)"), DomainError);
    CHECK_THROWS_AS(oberhettinger_closed_form(0.0, 0.5, 1.0), DomainError);
    for (double a : {0.3, 1.0, 4.0}) {
        for (double mu : {0.2, 1.1, 3.0}) {
            for (double lambda : {mu + 0.4, mu + 5.0}) {
                CHECK(rel(oberhettinger_closed_form(a, mu, lambda),
                          Complex{oracle::oberhettinger(a, mu, lambda)}) < 1e-14);
            }
        }
    }
}

TEST_CASE("quadrature reproduces the closed form") {
    const auto r = integrate_kernel(one, 1.0, 1.0, 2.0);
    CHECK(r.converged);
    CHECK(rel(r.value, Complex{1.0 / 3.0}) < 1e-11);
    CHECK(r.error_estimate >= 0.0);
    CHECK(r.panels_used <= QuadControl{}.max_panels);
    CHECK(r.cutoff_theta > 0.0);

    const auto s = integrate_kernel(one, 2.0, 0.5, 1.5);
    CHECK(rel(s.value, oberhettinger_closed_form(2.0, 0.5, 1.5)) < 1e-10);
}

TEST_CASE("baseline grid") {
    QuadControl ctl;
    ctl.rel_tol = 1e-12;
    for (double a : {0.5, 1.0, 2.0}) {
        for (double mu : {0.3, 1.0, 1.7}) {
            for (double dl : {0.5, 2.0}) {
                const auto r = integrate_kernel(one, a, mu, mu + dl, ctl);
                CHECK(r.converged);
                CHECK(rel(r.value, oberhettinger_closed_form(a, mu, mu + dl)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("zero integrand") {
    const auto r = integrate_kernel([](double) { return Complex{0.0}; }, 1.0, 0.5, 2.0);
    CHECK(r.value == Complex{0.0});
    CHECK(r.error_estimate == 0.0);
}

TEST_CASE("a-scaling follows the closed form") {
    const Complex mu = 0.7;
    const Complex lambda = 2.4;
    const Complex base = integrate_kernel(one, 1.0, mu, lambda).value;
    for (double a : {0.25, 3.0, 10.0}) {
        const Complex scaled = integrate_kernel(one, a, mu, lambda).value;
        CHECK(rel(scaled, base * std::pow(a, mu - lambda)) <= 1e-12);
    }
}

TEST_CASE("tightening the tolerance never worsens the baseline") {
    for (double mu : {0.3, 1.7}) {
        double previous = INFINITY;
        for (double tol : {1e-6, 1e-8, 1e-10, 1e-12}) {
            QuadControl ctl;
            ctl.rel_tol = tol;
            const double err =
                rel(integrate_kernel(one, 1.0, mu, mu + 0.5, ctl).value,
                    oberhettinger_closed_form(1.0, mu, mu + 0.5));
            CHECK(err <= std::max(previous, 1e-14));
            previous = err;
        }
    }
}

TEST_CASE("complex parameters") {
    const Complex mu{0.8, 0.3};
    const Complex lambda{2.1, -0.2};
    CHECK(rel(integrate_kernel(one, 1.0, mu, lambda).value,
              oberhettinger_closed_form(1.0, mu, lambda)) <= 1e-9);
}

TEST_CASE("strong endpoint singularity") {
    // x^{-0.95} near 0.
    QuadControl ctl;
    ctl.rel_tol = 1e-10;
    const auto r = integrate_kernel(one, 1.0, 0.05, 1.0, ctl);
    CHECK(r.converged);
    CHECK(rel(r.value, oberhettinger_closed_form(1.0, 0.05, 1.0)) <= 1e-9);
}

TEST_CASE("non-integrable endpoint is detected") {
    CHECK_THROWS_AS(integrate_kernel(one, 1.0, -0.2, 2.0), NonIntegrableError);
    CHECK_THROWS_AS(integrate_kernel(one, 1.0, 0.0, 2.0), NonIntegrableError);
}

TEST_CASE("budget exhaustion is flagged, not thrown") {
    QuadControl ctl;
    ctl.max_panels = 2;
    ctl.rel_tol = 1e-14;
    const auto r = integrate_kernel(one, 1.0, 0.3, 0.8, ctl);
    CHECK_FALSE(r.converged);
    CHECK(r.status != "ok");
    CHECK(r.panels_used <= 2);
}

TEST_CASE("slowly decaying tail stops at max_theta") {
    QuadControl ctl;
    ctl.max_theta = 20.0;
    const auto r = integrate_kernel(one, 1.0, 1.0, 1.0 + 1e-3, ctl);
    CHECK_FALSE(r.converged);
    CHECK(r.cutoff_theta <= 20.0);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(integrate_kernel(one, 0.0, 0.5, 2.0), DomainError);
    CHECK_THROWS_AS(integrate_kernel(one, -1.0, 0.5, 2.0), DomainError);
    QuadControl bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(integrate_kernel(one, 1.0, 0.5, 2.0, bad), DomainError);
    bad = {};
    bad.max_panels = 0;
    CHECK_THROWS_AS(integrate_kernel(one, 1.0, 0.5, 2.0, bad), DomainError);
}
