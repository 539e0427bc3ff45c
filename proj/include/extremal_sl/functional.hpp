#pragma once

#include "extremal_sl/grid.hpp"

#include <cstddef>

namespace extremal_sl {

/// The variational objective at a strictly positive trial function y:
///
///     J = sum (y_{i+1}-y_i)^2 / h  +  (trapz y^p)^((gamma-1)/gamma),
///     G = J / trapz y^2,
///
/// with p = 2*gamma/(gamma-1).  The forward-difference Dirichlet sum is the
/// discrete counterpart of the integral of (y')^2.  G is invariant under
/// y -> c y for c > 0.
struct FunctionalValue {
    double J;
    double G;
    double l2sq;     ///< trapz y^2
    double powint;   ///< trapz y^p
};

/// Throws std::domain_error unless min(y) > 0.
FunctionalValue evaluate(const GridFunction& y, const GammaParam& gp);

/// L2-Riesz representative of the exact differential of the discrete G:
/// the trapezoid pairing of the result with any direction v equals
/// d/dt G(y + t v) at t = 0, to rounding.  In particular the pairing with y
/// itself vanishes (zero-homogeneity).
GridFunction gradient(const GridFunction& y, const GammaParam& gp);

/// Smallest eigenvalue of the second variation at the constant trial
/// function, restricted to nonconstant modes: pi^2 - 2/(1-gamma) in closed
/// form.  Cross-checks the closed form against the discretized quadratic-form
/// operator on a grid with n intervals and throws std::runtime_error if they
/// disagree by more than 1e-3.  Negative exactly when gamma exceeds
/// GammaParam::threshold().
double second_variation_min_eig(const GammaParam& gp, std::size_t n = 4096);

/// The potential induced by a trial function,
/// q = (trapz y^p)^(-1/gamma) * y^(2/(gamma-1)), which satisfies
/// trapz q^gamma = 1 and realizes equality in the duality bound
/// lambda_1(q) <= G(y).  Requires min(y) > 0.
GridFunction qstar(const GridFunction& y, const GammaParam& gp);

/// Quantitative positivity: returns true iff G(y) < (pi^2/4)(1-eps)^2
/// implies min(y) > eps * ||y||_L2 (vacuously true when the premise fails).
/// Requires eps in (0,1); throws std::invalid_argument otherwise.
bool positivity_bound_check(const GridFunction& y, const GammaParam& gp, double eps);

} // namespace extremal_sl
