#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle/reference_values.hpp"
#include "struvint/errors.hpp"
#include "struvint/gamma.hpp"

using namespace struvint;

namespace {

double rel(const Complex& got, const Complex& want) {
    return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST_CASE("log_gamma at simple points") {
    CHECK(std::abs(log_gamma(1.0)) < 1e-15);
    CHECK(log_gamma(0.5).real() == doctest::Approx(std::log(std::sqrt(std::numbers::pi))).epsilon(1e-15));
    CHECK(log_gamma(5.0).real() == doctest::Approx(std::log(24.0)).epsilon(1e-15));
    CHECK(log_gamma(5.0).imag() == 0.0);
}

TEST_CASE("log_gamma of positive reals has zero imaginary part") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(1e-3, 150.0);
    for (int i = 0; i < 200; ++i) CHECK(log_gamma(u(rng)).imag() == 0.0);
}

TEST_CASE("gamma at simple points and poles") {
    CHECK(struvint::gamma(5.0).real() == doctest::Approx(24.0).epsilon(1e-15));
    CHECK(struvint::gamma(0.5).real() == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-15));
    try {
        struvint::gamma(-3.0);
        FAIL("expected a pole");
    } catch (const PoleError& e) {
        CHECK(e.location() == -3);
    }
    CHECK_THROWS_AS(log_gamma(Complex{0.0, 1e-13}), PoleError);
    CHECK_NOTHROW(struvint::gamma(Complex{-3.0, 1e-9}));
    CHECK_THROWS_AS(struvint::gamma(200.0), RangeError);
    CHECK_THROWS_AS(struvint::gamma(Complex{200.0, 1.0}), RangeError);
    CHECK_THROWS_AS(struvint::gamma(Complex{NAN, 0.0}), DomainError);
}

TEST_CASE("gamma_pole detection tolerance") {
    CHECK(gamma_pole(0.0) == 0L);
    CHECK(gamma_pole(-4.0 + 5e-13) == -4L);
    CHECK_FALSE(gamma_pole(-4.0 + 1e-11).has_value());
    CHECK_FALSE(gamma_pole(1.0).has_value());
    CHECK_FALSE(gamma_pole(Complex{-2.0, 1e-11}).has_value());
}

TEST_CASE("gamma and log_gamma against the 50-digit reference") {
    const Complex args[] = {reference::gamma_arg_0, reference::gamma_arg_1, reference::gamma_arg_2,
                            reference::gamma_arg_3, reference::gamma_arg_4, reference::gamma_arg_5,
                            reference::gamma_arg_6, reference::gamma_arg_7};
    const Complex g[] = {reference::gamma_0, reference::gamma_1, reference::gamma_2,
                         reference::gamma_3, reference::gamma_4, reference::gamma_5,
                         reference::gamma_6, reference::gamma_7};
    const Complex lg[] = {reference::log_gamma_0, reference::log_gamma_1, reference::log_gamma_2,
                          reference::log_gamma_3, reference::log_gamma_4, reference::log_gamma_5,
                          reference::log_gamma_6, reference::log_gamma_7};
    for (int i = 0; i < 8; ++i) {
        CAPTURE(i);
        CHECK(rel(struvint::gamma(args[i]), g[i]) < 1e-13);
        // Principal branch: the imaginary part must match, not just mod 2 pi.
        CHECK(std::abs(log_gamma(args[i]) - lg[i]) < 1e-13 * std::max(1.0, std::abs(lg[i])));
    }
}

TEST_CASE("recurrence gamma(z+1) = z gamma(z) over random z") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> re(0.0, 10.0);
    std::uniform_real_distribution<double> im(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const Complex z{re(rng), im(rng)};
        if (z.real() < 1e-6) continue;
        const Complex g1 = struvint::gamma(z + 1.0);
        CHECK(std::abs(g1 - z * struvint::gamma(z)) / std::abs(g1) <= 1e-12);
    }
}

TEST_CASE("reflection region is consistent with the recurrence") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> re(-6.0, 0.5);
    std::uniform_real_distribution<double> im(-3.0, 3.0);
    for (int i = 0; i < 300; ++i) {
        const Complex z{re(rng), im(rng)};
        if (gamma_pole(z) || std::abs(z - std::round(z.real())) < 1e-3) continue;
        const Complex g1 = struvint::gamma(z + 1.0);
        CHECK(std::abs(g1 - z * struvint::gamma(z)) / std::abs(g1) <= 1e-12);
        // log_gamma(z+1) - log_gamma(z) = log z exactly on the principal branch
        // only up to 2 pi i; compare exponentials.
        CHECK(std::abs(std::exp(log_gamma(z + 1.0) - log_gamma(z)) - z) / std::abs(z) <= 1e-12);
    }
}

TEST_CASE("pochhammer") {
    CHECK(pochhammer(Complex{2.5, 1.0}, 0u) == Complex{1.0});
    CHECK(pochhammer(0.0, 0u) == Complex{1.0});
    CHECK(pochhammer(3.0, 4u) == Complex{360.0});
    CHECK(pochhammer(0.5, 2u) == Complex{0.75});
    CHECK(pochhammer(-2.0, 5u) == Complex{0.0});
    CHECK(pochhammer(-2.0, 2u) == Complex{2.0});
    CHECK(rel(pochhammer(1.5, 2.5), struvint::gamma(4.0) / struvint::gamma(1.5)) < 1e-14);
    CHECK(pochhammer(-3.0, 4.0) == Complex{0.0});
}

TEST_CASE("pochhammer step identity across the product/ratio threshold") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int i = 0; i < 50; ++i) {
        const Complex lambda{u(rng), u(rng) - 2.5};
        for (unsigned k : {0u, 5u, 63u, 64u, 65u, 90u}) {
            const Complex lhs = pochhammer(lambda, k + 1);
            const Complex rhs = pochhammer(lambda, k) * (lambda + static_cast<double>(k));
            CHECK(std::abs(lhs - rhs) / std::abs(lhs) <= 1e-13);
        }
    }
}

TEST_CASE("pochhammer overflow is a range error") {
    CHECK_THROWS_AS(pochhammer(100.0, 300u), RangeError);
}

TEST_CASE("pochhammer_shift recovers lambda + k") {
    CHECK(pochhammer_shift(2.0, 3).real() == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(pochhammer_shift(0.5, 0) == Complex{0.5});
    CHECK(rel(pochhammer_shift(Complex{1.5, 0.5}, 4), Complex{5.5, 0.5}) < 1e-14);
    CHECK_THROWS_AS(pochhammer_shift(-2.0, 4), DomainError);

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    std::uniform_int_distribution<unsigned> kd(0, 100);
    for (int i = 0; i < 200; ++i) {
        const Complex lambda{u(rng), u(rng)};
        if (std::abs(lambda.imag()) < 0.1) continue;
        const unsigned k = kd(rng);
        const Complex want = lambda + static_cast<double>(k);
        CHECK(rel(pochhammer_shift(lambda, k), want) <= 1e-12);
    }
}

TEST_CASE("log_pochhammer degenerate kinds") {
    CHECK(log_pochhammer(-2.0, 3.0).kind == LogPochhammer::Kind::zero);
    CHECK(log_pochhammer(-2.0, 1.0).kind == LogPochhammer::Kind::finite);
    CHECK(log_pochhammer(-2.5, 0.5).kind == LogPochhammer::Kind::infinite);
    const auto lp = log_pochhammer(Complex{1.25, 0.5}, 3.5);
    REQUIRE(lp.kind == LogPochhammer::Kind::finite);
    CHECK(rel(std::exp(lp.value), pochhammer(Complex{1.25, 0.5}, 3.5)) < 1e-13);
}
