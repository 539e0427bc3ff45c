#include "extremal_sl/grid.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

using namespace extremal_sl;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("build validates nodal values") {
    CHECK_THROWS_AS(GridFunction::build({1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction::build({}), std::invalid_argument);
    CHECK_THROWS_AS(
        GridFunction::build({1.0, std::numeric_limits<double>::quiet_NaN(), 1.0}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        GridFunction::build({1.0, std::numeric_limits<double>::infinity(), 1.0}),
        std::invalid_argument);

    const GridFunction f = GridFunction::build({0.0, 1.0, 0.0});
    CHECK(f.n() == 2);
    CHECK(f.size() == 3);
    CHECK(f.h() == doctest::Approx(0.5));
    CHECK(f.min_value() == 0.0);
    CHECK(f.max_value() == 1.0);
    CHECK(f[1] == 1.0);
    CHECK(f.node(2) == doctest::Approx(1.0));
}

TEST_CASE("trapezoid rule: exact on linears, h^2 on quadratics") {
    for (std::size_t n : {7u, 64u}) {
        const GridFunction f = sample([](double x) { return 3.0 * x - 1.0; }, n);
        CHECK(std::abs(integrate(f) - 0.5) < 1e-14);
    }
    const GridFunction g = sample([](double x) { return x * x; }, 4096);
    // Euler-Maclaurin terminates for quadratics: error is exactly h^2/6.
    const double h = g.h();
    CHECK(std::abs(integrate(g) - (1.0 / 3.0 + h * h / 6.0)) < 1e-15);
}

TEST_CASE("integrate is linear in the integrand") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    std::vector<double> fv(258), gv(258), combo(258);
    const double a = 0.7, b = -1.3;
    for (std::size_t i = 0; i < fv.size(); ++i) {
        fv[i] = unif(rng);
        gv[i] = unif(rng);
        combo[i] = a * fv[i] + b * gv[i];
    }
    const double lhs = integrate(GridFunction::build(combo));
    const double rhs = a * integrate(GridFunction::build(fv)) +
                       b * integrate(GridFunction::build(gv));
    CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(lhs)));
}

TEST_CASE("inner product and norm agree with integrate") {
    const GridFunction f = sample([](double x) { return 1.0 + x; }, 128);
    const GridFunction f2 = sample([](double x) { return (1.0 + x) * (1.0 + x); }, 128);
    CHECK(inner_product(f, f) == doctest::Approx(integrate(f2)).epsilon(1e-15));
    CHECK(l2_norm(f) == doctest::Approx(std::sqrt(integrate(f2))).epsilon(1e-15));
    const GridFunction g = sample([](double x) { return x; }, 64);
    CHECK_THROWS_AS(inner_product(f, g), std::invalid_argument);
}

TEST_CASE("power_integral: frozen oracle for the deep negative power") {
    // Reference value of the continuum integral of (1 + 0.1 cos(pi x))^-18,
    // frozen from a 50-digit evaluation: 2.1141607671040699.  The integrand
    // extends to a smooth periodic function, so the trapezoid value at
    // n = 8192 matches far better than the tolerance used here.
    const GridFunction y =
        sample([](double x) { return 1.0 + 0.1 * std::cos(kPi * x); }, 8192);
    const double ours = power_integral(y, -18.0);
    CHECK(std::abs(ours - 2.1141607671040699) < 1e-6);

    // Independent runtime oracle over the same continuum integral.
    const double simpson = oracles::adaptive_simpson(
        [](double x) { return std::pow(1.0 + 0.1 * std::cos(kPi * x), -18.0); },
        0.0, 1.0, 1e-11);
    CHECK(std::abs(simpson - 2.1141607671040699) < 1e-9);
    CHECK(std::abs(ours - simpson) < 1e-6);
}

TEST_CASE("power_integral: definition and domain errors") {
    const GridFunction y = sample([](double x) { return 1.5 + x; }, 33);
    std::vector<double> powed(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        powed[i] = std::pow(y[i], -7.5);
    CHECK(power_integral(y, -7.5) == integrate(GridFunction::build(powed)));

    CHECK(power_integral(GridFunction::constant(2.0, 16), -2.0) ==
          doctest::Approx(0.25).epsilon(1e-15));
    CHECK(power_integral(GridFunction::constant(5.0, 16), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(power_integral(GridFunction::build({0.0, 1.0, 1.0}), -2.0),
                    std::domain_error);
    CHECK_THROWS_AS(power_integral(GridFunction::build({-1.0, 1.0, 1.0}), -2.0),
                    std::domain_error);
}

TEST_CASE("gen_mean: constants, closed form, monotonicity in the exponent") {
    CHECK(gen_mean(GridFunction::constant(3.0, 8), -2.5) ==
          doctest::Approx(3.0).epsilon(1e-14));
    CHECK(gen_mean(GridFunction::constant(3.0, 8), 0.5) ==
          doctest::Approx(3.0).epsilon(1e-14));

    // (integral of x^(1/2))^2 = 4/9; sqrt has unbounded slope at 0, so the
    // trapezoid value converges like h^(3/2).
    const GridFunction lin = sample([](double x) { return x; }, 8192);
    CHECK(std::abs(gen_mean(lin, 0.5) - 4.0 / 9.0) < 5e-6);

    // Nondecreasing in s for q(x) = x ...
    double prev = -std::numeric_limits<double>::infinity();
    for (double s : {0.3, 0.45, 0.6, 0.75, 0.9}) {
        const double m = gen_mean(lin, s);
        CHECK(m >= prev - 1e-12);
        prev = m;
    }
    // ... and across negative exponents for a strictly positive q.
    const GridFunction q =
        sample([](double x) { return std::exp(0.4 * std::cos(2.0 * kPi * x)); }, 129);
    prev = -std::numeric_limits<double>::infinity();
    for (double s : {-2.0, -1.0, -0.5, 0.3, 0.9, 1.5, 2.0}) {
        const double m = gen_mean(q, s);
        CHECK(m >= prev - 1e-12);
        prev = m;
    }

    CHECK_THROWS_AS(gen_mean(q, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gen_mean(lin, -1.0), std::domain_error);   // q(0) = 0
}

TEST_CASE("GammaParam: validation, exponents, threshold") {
    CHECK_THROWS_AS(GammaParam(0.0), std::invalid_argument);
    CHECK_THROWS_AS(GammaParam(1.0), std::invalid_argument);
    CHECK_THROWS_AS(GammaParam(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(GammaParam(1.5), std::invalid_argument);

    const GammaParam nine(0.9);
    CHECK(nine.p == doctest::Approx(-18.0).epsilon(1e-13));
    CHECK(nine.r == doctest::Approx(-19.0).epsilon(1e-13));
    const GammaParam half(0.5);
    CHECK(half.p == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(half.r == doctest::Approx(-3.0).epsilon(1e-15));

    for (double g : {0.1, 0.3, 0.5, 0.7, 0.9, 0.95}) {
        const GammaParam gp(g);
        CHECK(gp.r == doctest::Approx(gp.p - 1.0).epsilon(1e-12));
        CHECK(gp.p < 0.0);
    }

    // 1 - 2/pi^2, frozen to 17 digits.
    CHECK(std::abs(GammaParam::threshold() - 0.79735763271532446) < 1e-16);
}

TEST_CASE("sample rejects callables that blow up") {
    CHECK_THROWS_AS(sample([](double x) { return 1.0 / x; }, 8),
                    std::invalid_argument);
}
