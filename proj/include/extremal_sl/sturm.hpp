#pragma once

#include "extremal_sl/grid.hpp"

#include <cstddef>

namespace extremal_sl {

/// k-th eigenpair (1-based, ascending) of -y'' + q y = lambda y on [0,1]
/// with Neumann conditions y'(0) = y'(1) = 0, discretized on q's grid.
struct SpectralResult {
    std::size_t k;
    double lambda;
    GridFunction eigenfunction;   ///< trapezoid-L2 normalized, positive at x = 0
    double residual;              ///< ||B v - lambda v|| / (||B|| ||v||), symmetrized system
};

/// Computes the k-th eigenpair for a nonnegative potential q, 1 <= k <= n-1.
/// Throws std::invalid_argument on a negative potential entry or k out of
/// range.  Deterministic: repeated calls give identical results.
SpectralResult lambda_k(const GridFunction& q, std::size_t k);

/// Rescales q >= 0 (not identically zero) by the constant that puts it on the
/// constraint surface: the trapezoid integral of (C q)^gamma equals 1.
GridFunction normalize_to_A_gamma(const GridFunction& q, const GammaParam& gp);

/// Eliminates the leading h^2 error term from values computed with n and 2n
/// grid intervals.
inline double richardson(double coarse, double fine) {
    return (4.0 * fine - coarse) / 3.0;
}

} // namespace extremal_sl
