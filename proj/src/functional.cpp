#include "extremal_sl/functional.hpp"

#include "extremal_sl/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace extremal_sl {

namespace {

// Shared ingredients of J, G and their differential.  The constraint integral
// P = trapz y^p is accumulated in log space: p is a large negative power, so
// direct summation of y^p can overflow long before the functional itself
// stops being representable.
struct Parts {
    double dirichlet;   // sum (y_{i+1}-y_i)^2 / h
    double l2sq;        // trapz y^2
    double log_powint;  // log trapz y^p
};

Parts compute_parts(const GridFunction& y, const GammaParam& gp) {
    if (!(y.min_value() > 0.0))
        throw std::domain_error("functional: trial function must be strictly positive");
    const std::size_t n = y.n();
    const double h = y.h();

    long double dir = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const long double dy = static_cast<long double>(y[i + 1]) - y[i];
        dir += dy * dy;
    }
    dir /= h;

    auto w = [&](std::size_t i) -> long double { return (i == 0 || i == n) ? 0.5L : 1.0L; };
    long double l2 = 0.0L;
    for (std::size_t i = 0; i <= n; ++i)
        l2 += w(i) * static_cast<long double>(y[i]) * y[i];
    l2 *= h;

    std::vector<double> z(n + 1);
    double zmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= n; ++i) {
        z[i] = gp.p * std::log(y[i]);
        zmax = std::max(zmax, z[i]);
    }
    long double s = 0.0L;
    for (std::size_t i = 0; i <= n; ++i)
        s += w(i) * std::exp(static_cast<long double>(z[i]) - zmax);
    const double log_powint =
        zmax + static_cast<double>(std::log(s * static_cast<long double>(h)));

    return Parts{static_cast<double>(dir), static_cast<double>(l2), log_powint};
}

} // namespace

FunctionalValue evaluate(const GridFunction& y, const GammaParam& gp) {
    const Parts parts = compute_parts(y, gp);
    const double constraint_term =
        std::exp((gp.gamma - 1.0) / gp.gamma * parts.log_powint);
    const double J = parts.dirichlet + constraint_term;
    return FunctionalValue{J, J / parts.l2sq, parts.l2sq, std::exp(parts.log_powint)};
}

GridFunction gradient(const GridFunction& y, const GammaParam& gp) {
    const Parts parts = compute_parts(y, gp);
    const double constraint_term =
        std::exp((gp.gamma - 1.0) / gp.gamma * parts.log_powint);
    const double G = (parts.dirichlet + constraint_term) / parts.l2sq;

    const std::size_t n = y.n();
    const double inv_h2 = static_cast<double>(n) * static_cast<double>(n);
    std::vector<double> g(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        double lap;
        if (i == 0)
            lap = 2.0 * (y[0] - y[1]) * inv_h2;
        else if (i == n)
            lap = 2.0 * (y[n] - y[n - 1]) * inv_h2;
        else
            lap = (2.0 * y[i] - y[i - 1] - y[i + 1]) * inv_h2;
        // P^{-1/gamma} y^r, evaluated in log space for the same reason as P.
        const double nonlinear =
            std::exp(gp.r * std::log(y[i]) - parts.log_powint / gp.gamma);
        g[i] = 2.0 / parts.l2sq * (lap + nonlinear - G * y[i]);
    }
    return GridFunction::build(std::move(g));
}

double second_variation_min_eig(const GammaParam& gp, std::size_t n) {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double closed = pi2 - 2.0 / (1.0 - gp.gamma);
    // The quadratic form of the second variation at the constant function
    // acts on nonconstant modes as -v'' - 2/(1-gamma) v (the rank-one mean
    // term drops on mean-zero directions), so its smallest eigenvalue is the
    // first nonzero Neumann eigenvalue shifted by -2/(1-gamma).
    const SpectralResult mode = lambda_k(GridFunction::constant(0.0, n), 2);
    const double discrete = mode.lambda - 2.0 / (1.0 - gp.gamma);
    if (std::abs(closed - discrete) > 1e-3)
        throw std::runtime_error(
            "second_variation_min_eig: discretization disagrees with closed form");
    return closed;
}

GridFunction qstar(const GridFunction& y, const GammaParam& gp) {
    const Parts parts = compute_parts(y, gp);
    const double expo = 2.0 / (gp.gamma - 1.0);
    const std::size_t n = y.n();
    std::vector<double> q(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        q[i] = std::exp(expo * std::log(y[i]) - parts.log_powint / gp.gamma);
    return GridFunction::build(std::move(q));
}

bool positivity_bound_check(const GridFunction& y, const GammaParam& gp, double eps) {
    if (!(eps > 0.0) || !(eps < 1.0))
        throw std::invalid_argument("positivity_bound_check: eps must lie in (0,1)");
    const FunctionalValue fv = evaluate(y, gp);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const bool premise = fv.G < 0.25 * pi2 * (1.0 - eps) * (1.0 - eps);
    if (!premise)
        return true;
    return y.min_value() > eps * std::sqrt(fv.l2sq);
}

} // namespace extremal_sl
