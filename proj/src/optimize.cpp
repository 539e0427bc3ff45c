#include "extremal_sl/optimize.hpp"

#include "extremal_sl/parallel.hpp"
#include "extremal_sl/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace extremal_sl {

namespace {

// Clip to the positivity floor, then rescale to unit trapezoid L2 norm.  The
// objective is scale-invariant, so the normalization is a pure gauge fix that
// keeps iterates from drifting to zero or infinity.
void project(std::vector<double>& y, double zeta, std::size_t n) {
    for (double& v : y) v = std::max(v, zeta);
    auto w = [&](std::size_t i) { return (i == 0 || i == n) ? 0.5L : 1.0L; };
    long double s = 0.0L;
    for (std::size_t i = 0; i <= n; ++i)
        s += w(i) * static_cast<long double>(y[i]) * y[i];
    const double nrm = std::sqrt(static_cast<double>(s / static_cast<long double>(n)));
    for (double& v : y) v /= nrm;
}

// Thomas solve of (I - d^2/dx^2) d = g with the mirror Neumann closure.  The
// matrix is strictly diagonally dominant, so no pivoting is needed.
std::vector<double> sobolev_solve(const std::vector<double>& g, std::size_t n) {
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    const std::size_t N = n + 1;
    std::vector<double> diag(N, 1.0 + 2.0 * n2);
    std::vector<double> sup(N - 1, -n2), sub(N - 1, -n2), rhs(g);
    sup.front() = -2.0 * n2;
    sub.back() = -2.0 * n2;
    for (std::size_t i = 1; i < N; ++i) {
        const double m = sub[i - 1] / diag[i - 1];
        diag[i] -= m * sup[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    std::vector<double> d(N);
    d[N - 1] = rhs[N - 1] / diag[N - 1];
    for (std::size_t ip = N - 1; ip-- > 0;)
        d[ip] = (rhs[ip] - sup[ip] * d[ip + 1]) / diag[ip];
    return d;
}

double pairing(const std::vector<double>& f, const std::vector<double>& g, std::size_t n) {
    auto w = [&](std::size_t i) { return (i == 0 || i == n) ? 0.5L : 1.0L; };
    long double s = 0.0L;
    for (std::size_t i = 0; i <= n; ++i)
        s += w(i) * static_cast<long double>(f[i]) * g[i];
    return static_cast<double>(s / static_cast<long double>(n));
}

std::vector<double> default_start(std::size_t n, double amplitude) {
    std::vector<double> y(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        y[i] = 1.0 + amplitude *
                         std::cos(std::numbers::pi * static_cast<double>(i) /
                                  static_cast<double>(n));
    return y;
}

} // namespace

OptimReport minimize_G(const GammaParam& gp, const MinimizeConfig& cfg) {
    if (cfg.n < 2)
        throw std::invalid_argument("minimize_G: need n >= 2 grid intervals");
    if (!(cfg.zeta > 0.0))
        throw std::invalid_argument("minimize_G: positivity floor must be positive");

    const std::size_t n = cfg.n;
    std::vector<double> y;
    if (cfg.y0) {
        if (cfg.y0->n() != n)
            throw std::invalid_argument("minimize_G: starting point is on the wrong grid");
        y.assign(cfg.y0->values().begin(), cfg.y0->values().end());
    } else {
        y = default_start(n, cfg.init_amplitude);
    }
    project(y, cfg.zeta, n);

    auto as_grid = [](const std::vector<double>& v) {
        return GridFunction::build(std::vector<double>(v));
    };

    FunctionalValue fv = evaluate(as_grid(y), gp);
    double grad_norm = 0.0;
    double step = 1.0;
    std::size_t iters = 0;
    bool converged = false;

    std::vector<double> g_vec(n + 1), trial(n + 1);
    for (std::size_t it = 0; it < cfg.max_iters; ++it) {
        const GridFunction g = gradient(as_grid(y), gp);
        g_vec.assign(g.values().begin(), g.values().end());
        grad_norm = std::sqrt(pairing(g_vec, g_vec, n));
        if (cfg.on_iterate)
            cfg.on_iterate(it, fv.G);
        if (grad_norm <= cfg.grad_tol) {
            converged = true;
            break;
        }

        const std::vector<double> d = sobolev_solve(g_vec, n);
        const double slope = pairing(g_vec, d, n);   // > 0: d is a descent direction
        if (!(slope > 0.0))
            break;   // numerically flat; nothing left to gain

        step = std::min(step * 4.0, 1e6);
        bool accepted = false;
        double trial_G = fv.G;
        while (step >= 1e-18) {
            for (std::size_t i = 0; i <= n; ++i)
                trial[i] = y[i] - step * d[i];
            project(trial, cfg.zeta, n);
            trial_G = evaluate(as_grid(trial), gp).G;
            if (trial_G <= fv.G - 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted)
            break;   // line search exhausted: at the numerical floor
        y = trial;
        fv = evaluate(as_grid(y), gp);
        iters = it + 1;
    }

    GridFunction minimizer = as_grid(y);
    {
        const GridFunction g = gradient(minimizer, gp);
        g_vec.assign(g.values().begin(), g.values().end());
        grad_norm = std::sqrt(pairing(g_vec, g_vec, n));
        converged = grad_norm <= cfg.grad_tol;
    }
    GridFunction potential = qstar(minimizer, gp);
    const double lambda1 = lambda_k(potential, 1).lambda;

    return OptimReport{gp.gamma,
                       fv.G,
                       std::move(minimizer),
                       std::move(potential),
                       grad_norm,
                       std::abs(lambda1 - fv.G),
                       iters,
                       converged};
}

ScanResult scan_gamma(const std::vector<double>& gammas,
                      const MinimizeConfig& cfg,
                      double slack) {
    if (gammas.empty())
        throw std::invalid_argument("scan_gamma: need at least one gamma");
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        if (!(gammas[i] > 0.0) || !(gammas[i] < 1.0))
            throw std::invalid_argument("scan_gamma: gammas must lie strictly in (0,1)");
        if (i > 0 && !(gammas[i] > gammas[i - 1]))
            throw std::invalid_argument("scan_gamma: gammas must be strictly increasing");
    }

    std::vector<std::optional<OptimReport>> slots(gammas.size());
    parallel_for(gammas.size(), [&](std::size_t i) {
        slots[i] = minimize_G(GammaParam(gammas[i]), cfg);
    });

    ScanResult result;
    result.slack = slack;
    result.reports.reserve(gammas.size());
    for (auto& slot : slots)
        result.reports.push_back(std::move(*slot));
    for (std::size_t i = 0; i + 1 < result.reports.size(); ++i)
        if (result.reports[i + 1].m_hat > result.reports[i].m_hat + slack)
            result.violations.push_back(i);
    return result;
}

double el_residual(const GridFunction& y, double mu, const GammaParam& gp) {
    if (!(y.min_value() > 0.0))
        throw std::domain_error("el_residual: trial function must be strictly positive");
    const std::size_t n = y.n();
    const double inv_h2 = static_cast<double>(n) * static_cast<double>(n);

    // Rescale so the constraint integral is exactly 1; the residual is only
    // meaningful on that gauge slice.  s = P^{-1/p}, computed in log space.
    std::vector<double> z(n + 1);
    double zmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= n; ++i) {
        z[i] = gp.p * std::log(y[i]);
        zmax = std::max(zmax, z[i]);
    }
    auto w = [&](std::size_t i) { return (i == 0 || i == n) ? 0.5L : 1.0L; };
    long double s = 0.0L;
    for (std::size_t i = 0; i <= n; ++i)
        s += w(i) * std::exp(static_cast<long double>(z[i]) - zmax);
    const double log_powint =
        zmax + static_cast<double>(std::log(s / static_cast<long double>(n)));
    const double scale = std::exp(-log_powint / gp.p);

    std::vector<double> ys(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        ys[i] = scale * y[i];

    long double acc = 0.0L;
    for (std::size_t i = 0; i <= n; ++i) {
        double lap;
        if (i == 0)
            lap = 2.0 * (ys[0] - ys[1]) * inv_h2;
        else if (i == n)
            lap = 2.0 * (ys[n] - ys[n - 1]) * inv_h2;
        else
            lap = (2.0 * ys[i] - ys[i - 1] - ys[i + 1]) * inv_h2;
        const double res = lap + std::pow(ys[i], gp.r) - mu * ys[i];
        acc += w(i) * static_cast<long double>(res) * res;
    }
    return std::sqrt(static_cast<double>(acc / static_cast<long double>(n)));
}

} // namespace extremal_sl
