#pragma once

#include "extremal_sl/grid.hpp"

#include <vector>

namespace extremal_sl {

/// Everything about the positivity window of f_alpha(t) = alpha t^(2 gamma)
/// - t^2 - 1 on (0, infinity) at one alpha: the two simple roots, the interior
/// maximizer between them, and the singular integral
///
///     I0 = integral over (omega_minus, omega_plus) of dt / sqrt(f_alpha(t)),
///
/// with a quadrature error estimate.
struct PeriodProfile {
    double alpha;
    double omega_minus;
    double tau;          ///< (alpha*gamma)^(1/(2-2gamma)), where f_alpha peaks
    double omega_plus;
    double I0;
    double err;
};

/// Smallest alpha for which f_alpha has a positivity window:
/// gamma^-gamma * (1-gamma)^(gamma-1).  At this alpha the window degenerates
/// to the single tangency point tau.
double alpha_min(const GammaParam& gp);

struct RootPair {
    double omega_minus;
    double tau;
    double omega_plus;
};

/// Both roots of f_alpha, refined to 1e-13 absolute.  Requires
/// alpha > alpha_min (std::domain_error otherwise: the window is empty).
RootPair roots(const GammaParam& gp, double alpha);

/// The period integral at one alpha.  The substitution
/// t = omega_minus + (omega_plus - omega_minus) sin^2(theta) absorbs both
/// inverse-square-root endpoint singularities; the resulting smooth periodic
/// integrand is driven below `tol` by midpoint-rule doubling.
PeriodProfile I0(const GammaParam& gp, double alpha, double tol = 1e-10);

/// Limit of I0 as alpha decreases to alpha_min, by polynomial extrapolation
/// in sqrt(alpha - alpha_min) from alpha = alpha_min*(1 + 10^-k), k = 2..6.
/// Equals pi/sqrt(2(1-gamma)) analytically.
double I0_limit(const GammaParam& gp, double tol = 1e-11);

struct MonotonicityScan {
    std::vector<PeriodProfile> rows;     ///< one per alpha, input order
    bool strictly_increasing;            ///< beyond twice the error estimates
};

/// Evaluates I0 on a strictly increasing alpha grid (all > alpha_min) and
/// reports whether consecutive values increase by more than the combined
/// quadrature error margins.
MonotonicityScan monotonicity_scan(const GammaParam& gp,
                                   const std::vector<double>& alphas,
                                   double tol = 1e-10);

struct TrajectorySample {
    double x;
    double y;
    double yp;
};

/// Half-oscillation of y'' = y^r - mu y started at y(0) = y0, y'(0) = 0.
struct Trajectory {
    double mu;
    double y0;
    std::vector<TrajectorySample> samples;   ///< accepted integrator steps
    double energy;        ///< E = (y')^2 + mu y^2 + ((1-gamma)/gamma) y^p at x = 0
    double alpha_hat;     ///< (gamma/(1-gamma))^(1-gamma) * mu^-gamma * E
    double half_period;   ///< first x > 0 where y' changes sign
    double energy_drift;  ///< max |E(x) - E(0)| along the samples
};

struct ShootConfig {
    double rtol = 1e-12;
    double atol = 1e-12;
    double x_max = 100.0;   ///< abort if no sign change of y' by here
};

/// Integrates the oscillation with an embedded Dormand-Prince 5(4) scheme and
/// locates the first turning point of y' by bisection on the step that
/// brackets it.  Requires mu > 0 and y0 > 0 away from the constant
/// equilibrium mu^(1/(r-1)) (std::invalid_argument).
Trajectory shoot(const GammaParam& gp, double mu, double y0,
                 const ShootConfig& cfg = {});

/// Relative mismatch between the measured half period and the quadrature
/// prediction (1-gamma) * I0(alpha_hat) / sqrt(mu).
double period_identity_check(const GammaParam& gp, double mu, double y0);

} // namespace extremal_sl
