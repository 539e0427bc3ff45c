#include "extremal_sl/optimize.hpp"

#include "extremal_sl/sturm.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace extremal_sl;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("below threshold the constant wins: m_hat returns to 1") {
    MinimizeConfig cfg;
    cfg.n = 512;
    std::vector<double> history;
    cfg.on_iterate = [&](std::size_t, double G) { history.push_back(G); };

    const OptimReport rep = minimize_G(GammaParam(0.5), cfg);
    CHECK(rep.m_hat >= 1.0 - 1e-3);
    CHECK(rep.m_hat <= 1.0 + 1e-9);
    CHECK(rep.converged);
    CHECK(rep.grad_norm <= 1e-8);
    CHECK(rep.iterations < cfg.max_iters);
    CHECK(rep.minimizer.min_value() > 0.0);
    CHECK(l2_norm(rep.minimizer) == doctest::Approx(1.0).epsilon(1e-10));
    // The minimizer flattens out.
    CHECK(rep.minimizer.max_value() - rep.minimizer.min_value() < 1e-4);

    // Accepted iterates never increase the objective.
    REQUIRE(history.size() >= 2);
    for (std::size_t i = 1; i < history.size(); ++i)
        CHECK(history[i] <= history[i - 1] + 1e-15);
}

TEST_CASE("threshold gamma stays inside the unit window") {
    MinimizeConfig cfg;
    cfg.n = 512;
    const OptimReport rep = minimize_G(GammaParam(GammaParam::threshold()), cfg);
    CHECK(rep.m_hat <= 1.0 + 1e-9);
    CHECK(rep.m_hat >= 1.0 - 1e-3);
}

TEST_CASE("above threshold on the production grid: gamma = 0.9") {
    MinimizeConfig cfg;
    cfg.n = 4096;
    const OptimReport rep = minimize_G(GammaParam(0.9), cfg);
    CHECK(rep.m_hat <= 0.96);
    CHECK(rep.m_hat >= 0.8);
    CHECK(rep.converged);
    CHECK(rep.duality_gap <= 1e-3);
    CHECK(power_integral(rep.extremal_potential, 0.9) ==
          doctest::Approx(1.0).epsilon(1e-8));
    // At a critical point with mu = m_hat, the Euler-Lagrange residual of the
    // (rescaled) minimizer nearly vanishes.
    CHECK(el_residual(rep.minimizer, rep.m_hat, GammaParam(0.9)) <= 1e-3);
}

TEST_CASE("restarting from a different admissible point lands at the same level") {
    MinimizeConfig a;
    a.n = 256;
    const OptimReport ra = minimize_G(GammaParam(0.9), a);

    MinimizeConfig b;
    b.n = 256;
    b.y0 = sample(
        [](double x) {
            return 1.0 + 0.2 * std::cos(kPi * x) + 0.05 * std::cos(2.0 * kPi * x);
        },
        256);
    const OptimReport rb = minimize_G(GammaParam(0.9), b);
    CHECK(std::abs(ra.m_hat - rb.m_hat) <= 1e-3);
}

TEST_CASE("scan: trend, bookkeeping, validation") {
    MinimizeConfig cfg;
    cfg.n = 256;
    const ScanResult scan = scan_gamma({0.5, 0.7, 0.9}, cfg);
    REQUIRE(scan.reports.size() == 3);
    CHECK(scan.violations.empty());
    CHECK(scan.reports[0].gamma == doctest::Approx(0.5));
    CHECK(scan.reports[2].gamma == doctest::Approx(0.9));
    CHECK(scan.reports[2].m_hat < scan.reports[0].m_hat + 1e-3);

    CHECK_THROWS_AS(scan_gamma({}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(scan_gamma({0.9, 0.5}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(scan_gamma({0.5, 1.2}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(scan_gamma({-0.5, 0.5}, cfg), std::invalid_argument);
}

TEST_CASE("Euler-Lagrange residual: zero at the constant, large off criticality") {
    const GammaParam gp(0.9);
    CHECK(el_residual(GridFunction::constant(1.0, 256), 1.0, gp) < 1e-12);
    // A strongly non-critical pair must be flagged as such.
    const GridFunction y =
        sample([](double x) { return 1.0 + 0.3 * std::cos(kPi * x); }, 256);
    CHECK(el_residual(y, 1.0, gp) >= 0.1);
    CHECK_THROWS_AS(el_residual(GridFunction::build({0.0, 1.0, 1.0}), 1.0, gp),
                    std::domain_error);
}

TEST_CASE("minimize_G validates its configuration") {
    MinimizeConfig cfg;
    cfg.n = 128;
    cfg.y0 = GridFunction::constant(1.0, 64);   // wrong grid
    CHECK_THROWS_AS(minimize_G(GammaParam(0.5), cfg), std::invalid_argument);

    MinimizeConfig bad;
    bad.n = 128;
    bad.zeta = 0.0;
    CHECK_THROWS_AS(minimize_G(GammaParam(0.5), bad), std::invalid_argument);
}
