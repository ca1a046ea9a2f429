#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracle/mp_oracle.hpp"
#include "oracle/reference_values.hpp"
#include "struvint/errors.hpp"
#include "struvint/gamma.hpp"
#include "struvint/hyper_series.hpp"
#include "struvint/identities.hpp"

using namespace struvint;

namespace {

double rel(const Complex& got, const Complex& want) {
    return std::abs(got - want) / std::abs(want);
}

IntegralCase make(Variant v, double a, Complex mu, Complex lambda, Complex b, Complex c,
                  std::vector<Complex> p, std::vector<double> y) {
    IntegralCase k;
    k.variant = v;
    k.a = a;
    k.mu = mu;
    k.lambda = lambda;
    k.b = b;
    k.c = c;
    k.p = std::move(p);
    k.y = std::move(y);
    return k;
}

QuadControl tight() {
    QuadControl q;
    q.rel_tol = 1e-12;
    return q;
}

}  // namespace

TEST_CASE("variant names") {
    CHECK(std::string(to_string(Variant::theorem1)) == "theorem1");
    CHECK(variant_from_string("theorem2") == Variant::theorem2);
    CHECK_THROWS_AS(variant_from_string("theorem3"), DomainError);
}

TEST_CASE("case validation names the violated condition") {
    auto t1 = make(Variant::theorem1, 1, 0.75, 2, 1, 1, {1}, {1});
    CHECK_NOTHROW(t1.validate());
    CHECK(t1.p_sum() == Complex{1.0});

    auto bad = t1;
    bad.mu = -0.1;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("condition violated: 0 < Re(mu)"),
                         DomainError);
    bad.mu = 4.5;
    CHECK_THROWS_WITH_AS(bad.validate(),
                         doctest::Contains("condition violated: Re(mu) < Re(lambda + p) + n"),
                         DomainError);
    bad = t1;
    bad.y = {1, 2};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = t1;
    bad.y = {-1};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = t1;
    bad.a = 0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = t1;
    bad.p = {};
    bad.y = {};
    CHECK_THROWS_AS(bad.validate(), DomainError);

    auto t2 = make(Variant::theorem2, 1, 0.6, 3, 1, 1, {0.5}, {1});
    CHECK_NOTHROW(t2.validate());
    bad = t2;
    bad.mu = 3.5;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("condition violated: Re(lambda) > Re(mu)"),
                         DomainError);
    bad = t2;
    bad.mu = -2.0;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("condition violated: Re(mu + p) > -n"),
                         DomainError);
    // The paper's condition admits Re(mu) <= 0 when Re(mu + p) + n > 0.
    bad = t2;
    bad.mu = -0.5;
    CHECK_NOTHROW(bad.validate());
}

TEST_CASE("prefactors against the extended-precision formula") {
    const auto t1 = make(Variant::theorem1, 1.3, 0.75, 2.2, 0.4, 1, {0.5, 1.2}, {0.7, 1.9});
    CHECK(rel(prefactor_theorem1(t1),
              Complex{oracle::prefactor_theorem1(1.3, 0.75, 2.2, 0.4, {0.5, 1.2}, {0.7, 1.9})}) <
          1e-13);
    const auto t2 = make(Variant::theorem2, 0.8, 0.6, 3.1, 1.5, 1, {0.5, 1.0, 0.3},
                         {0.5, 1.0, 2.0});
    CHECK(rel(prefactor_theorem2(t2), Complex{oracle::prefactor_theorem2(
                                          0.8, 0.6, 3.1, 1.5, {0.5, 1.0, 0.3}, {0.5, 1.0, 2.0})}) <
          1e-13);
    CHECK(prefactor(t1) == prefactor_theorem1(t1));
    CHECK(prefactor(t2) == prefactor_theorem2(t2));
}

TEST_CASE("theorem-1 prefactor equals the printed single-factor form") {
    const double a = 1, y = 1, p = 1, b = 1, mu = 0.75, lambda = 2;
    const auto k = make(Variant::theorem1, a, mu, lambda, b, 1, {p}, {y});
    const double printed = (1 + lambda + p) * std::pow(2.0, -mu - p) *
                           std::pow(a, mu - 1 - lambda - p) * std::pow(y, p + 1) *
                           std::tgamma(2 * mu) * std::tgamma(1 + lambda + p - mu) /
                           (std::tgamma(1.5) * std::tgamma(2 + lambda + p + mu) *
                            std::tgamma(1 + b / 2 + p));
    CHECK(rel(prefactor_theorem1(k), Complex{printed}) < 1e-14);
}

TEST_CASE("prefactor vanishes as y -> 0") {
    auto k = make(Variant::theorem1, 1, 0.75, 2, 1, 1, {0.5, 1}, {1e-40, 1});
    CHECK(std::abs(prefactor(k)) < 1e-55);
    k.variant = Variant::theorem2;
    k.lambda = 3;
    CHECK(std::abs(prefactor(k)) < 1e-55);
}

TEST_CASE("right-hand side specs") {
    const auto k1 = make(Variant::theorem1, 2, 0.75, 2, 1, {0.5, 0.1}, {1, 0.5}, {1, 3});
    const RhsSpec r1 = rhs_spec_theorem1(k1);
    CHECK(r1.spec.n == 2);
    CHECK_NOTHROW(r1.spec.validate());
    for (std::size_t m = 0; m < 2; ++m) CHECK(r1.spec.margin(m) == doctest::Approx(2.0));
    CHECK(rel(r1.z[0], -k1.c / 16.0) < 1e-15);
    CHECK(rel(r1.z[1], -k1.c * 9.0 / 16.0) < 1e-15);
    CHECK(rel(r1.spec.global_upper[0].value, 1.0 + k1.lambda + 1.5 + 2.0) < 1e-15);

    const auto k2 = make(Variant::theorem2, 2, 0.75, 2, 1, 1, {1, 0.5}, {1, 3});
    const RhsSpec r2 = rhs_spec_theorem2(k2);
    for (std::size_t m = 0; m < 2; ++m) CHECK(r2.spec.margin(m) == doctest::Approx(2.0));
    CHECK(rel(r2.z[1], Complex{-9.0 / 16.0}) < 1e-15);
    CHECK(r2.spec.global_upper[0].weights == std::vector<double>{4.0, 4.0});
}

TEST_CASE("c = 0 makes the right side the prefactor") {
    for (Variant v : {Variant::theorem1, Variant::theorem2}) {
        const auto k = make(v, 1, 0.75, 3, 1, 0, {0.5, 1}, {0.5, 1.5});
        const auto r = verify_case(k);
        CHECK(r.series.value == Complex{1.0});
        CHECK(r.rhs == prefactor(k));
    }
}

TEST_CASE("corollary 1 and 2 series agree with the Lauricella route") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (Variant v : {Variant::theorem1, Variant::theorem2}) {
        for (int i = 0; i < 20; ++i) {
            const double mu = 0.2 + 1.5 * u(rng);
            const auto k = make(v, 0.5 + 1.5 * u(rng), mu, mu + 0.3 + 3 * u(rng),
                                Complex{-0.5 + 2.5 * u(rng), 0.3 * u(rng)}, -1.0 + 2.0 * u(rng),
                                {2.5 * u(rng)}, {0.2 + 1.8 * u(rng)});
            const RhsSpec r = rhs_spec(k);
            const Complex lauricella = prefactor(k) * lauricella_eval(r.spec, r.z).value;
            CHECK(rel(rhs_corollary(k, v == Variant::theorem1 ? 1 : 2).value, lauricella) <= 1e-12);
        }
    }
}

TEST_CASE("corollaries 3 and 4 are 1 and 2 at b = -1, c = 1") {
    const auto k1 = make(Variant::theorem1, 1.5, 0.8, 2.5, 0.7, 0.3, {1.2}, {0.9});
    auto k1s = k1;
    k1s.b = -1;
    k1s.c = 1;
    CHECK(rel(rhs_corollary(k1, 3).value, rhs_corollary(k1s, 1).value) <= 1e-13);
    const auto k2 = make(Variant::theorem2, 0.7, 0.8, 2.5, 0.7, 0.3, {1.2}, {0.9});
    auto k2s = k2;
    k2s.b = -1;
    k2s.c = 1;
    CHECK(rel(rhs_corollary(k2, 4).value, rhs_corollary(k2s, 2).value) <= 1e-13);
}

TEST_CASE("rhs_corollary preconditions") {
    const auto k1 = make(Variant::theorem1, 1, 0.75, 2, 1, 1, {1}, {1});
    CHECK_THROWS_AS(rhs_corollary(k1, 2), DomainError);
    CHECK_THROWS_AS(rhs_corollary(k1, 5), DomainError);
    const auto k2 = make(Variant::theorem1, 1, 0.75, 2, 1, 1, {1, 1}, {1, 1});
    CHECK_THROWS_AS(rhs_corollary(k2, 1), DomainError);
}

TEST_CASE("integrand shape") {
    const auto k1 = make(Variant::theorem1, 1, 0.75, 2, 1, 1, {1}, {1});
    // theta = 1: x = cosh 1 - 1 gives K = e.
    const double x = std::cosh(1.0) - 1.0;
    const Complex want = std::pow(x, -0.25) * std::exp(-2.0) *
                         struve_w({1.0, 1.0, 1.0}, std::exp(-1.0)).value;
    CHECK(rel(lhs_integrand(k1, x), want) < 1e-14);

    // theorem2 Struve arguments tend to y/2.
    const auto k2 = make(Variant::theorem2, 1, 0.6, 3, 1, 1, {0.5}, {1.3});
    const Complex far = struve_product(k2, 1e8);
    CHECK(rel(far, struve_w({0.5, 1.0, 1.0}, 0.65).value) <= 1e-7);

    // theorem1 decay order at large x.
    const double big = 1e6;
    const Complex r1 = lhs_integrand(k1, big);
    const Complex r2 = lhs_integrand(k1, 2 * big);
    const double order = std::log(std::abs(r2 / r1)) / std::log(2.0);
    CHECK(order == doctest::Approx(0.75 - 2 - 1 - 1 - 1).epsilon(1e-5));
}

TEST_CASE("verify_case reference cases") {
    const auto k = make(Variant::theorem1, 1, 0.75, 2, 1, 1, {1}, {1});
    const auto r = verify_case(k);
    CHECK(r.pass);
    CHECK(r.reason.empty());
    CHECK(r.rel_err <= 1e-6);
    CHECK(r.tolerance == 1e-6);
    CHECK(r.quadrature.converged);

    const auto k2 = make(Variant::theorem2, 1, 0.6, 3, 1, 1, {0.5, 1}, {0.5, 1});
    CHECK(verify_case(k2).pass);
}

TEST_CASE("both sides match an independent quadrature of the integral") {
    struct Row {
        IntegralCase k;
        Complex want;
    };
    const Row rows[] = {
        {make(Variant::theorem1, 1, 0.75, 2, 1, 1, {1}, {1}), reference::lhs_t1_n1},
        {make(Variant::theorem1, 1, 0.75, 3, 1, 1, {0.5, 1}, {0.5, 1.5}), reference::lhs_t1_n2},
        {make(Variant::theorem2, 1, 0.6, 3, 1, 1, {0.5, 1}, {0.5, 1}), reference::lhs_t2_n2},
        {make(Variant::theorem1, 1, {0.6, 0.2}, {2.5, -0.3}, 1, 1, {1}, {1}),
         reference::lhs_t1_complex},
        {make(Variant::theorem2, 2, 1.2, 3.5, 1, 1, {0.3}, {1.7}), reference::lhs_t2_a2},
    };
    for (const auto& row : rows) {
        const auto r = verify_case(row.k, tight());
        CHECK(r.pass);
        CHECK(rel(r.lhs, row.want) <= 1e-10);
        CHECK(rel(r.rhs, row.want) <= 1e-12);
    }
}

TEST_CASE("verify_case records failures instead of throwing") {
    auto bad = make(Variant::theorem1, 1, 5, 2, 1, 1, {0.5}, {1});
    auto r = verify_case(bad);
    CHECK_FALSE(r.pass);
    CHECK(r.reason.find("condition violated") != std::string::npos);

    // Struve denominator pole: p + (b + 2)/2 = 0.
    auto pole = make(Variant::theorem1, 1, 0.75, 4, -2, 1, {0}, {1});
    r = verify_case(pole);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.reason.empty());

    QuadControl starved;
    starved.max_panels = 1;
    r = verify_case(make(Variant::theorem1, 1, 0.75, 2, 1, 1, {1}, {1}), starved);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.reason.empty());
}

TEST_CASE("tiny right-hand sides fall back to an absolute comparison") {
    auto k = make(Variant::theorem1, 1, 0.75, 2, 1, 1, {0.5}, {1e-200});
    k.y = {1e-250};
    k.p = {1.5};
    const auto r = verify_case(k);
    CHECK(std::abs(r.rhs) < kRelativeFloor);
    CHECK(r.pass);
    CHECK(r.abs_err <= kAbsoluteFloor);
}
