#pragma once

// Test-side reference implementations, kept deliberately independent of the
// library code paths they are used to check.

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

// Recursive adaptive Simpson with an absolute error budget.
inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double a, double b, double fa, double fm,
                                   double fb, double whole, double tol,
                                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0)
        return left + right + delta / 15.0;
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol, int depth = 48) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Smallest Neumann eigenvalue of -y'' + q y on the same uniform grid as the
// library, but through a different algebraic route: plain (unshifted-spectrum)
// inverse power iteration on the nodal mirror-closure operator plus identity,
// solved with an unpivoted Thomas sweep, with a positive-form Rayleigh
// quotient.  q holds the n+1 nodal values.
inline double neumann_lambda1_oracle(const std::vector<double>& q,
                                     int max_iters = 100) {
    const std::size_t N = q.size();
    if (N < 3)
        throw std::invalid_argument("oracle: need at least 3 nodes");
    const std::size_t n = N - 1;
    const double n2 = static_cast<double>(n) * static_cast<double>(n);

    auto solve_a_plus_identity = [&](std::vector<double> rhs) {
        // (A + I) z = rhs, A the nodal operator; strictly diagonally dominant.
        std::vector<double> diag(N), sup(N - 1, -n2), sub(N - 1, -n2);
        sup[0] = -2.0 * n2;
        sub[N - 2] = -2.0 * n2;
        for (std::size_t i = 0; i < N; ++i)
            diag[i] = 2.0 * n2 + q[i] + 1.0;
        for (std::size_t i = 1; i < N; ++i) {
            const double m = sub[i - 1] / diag[i - 1];
            diag[i] -= m * sup[i - 1];
            rhs[i] -= m * rhs[i - 1];
        }
        rhs[N - 1] /= diag[N - 1];
        for (std::size_t ip = N - 1; ip-- > 0;)
            rhs[ip] = (rhs[ip] - sup[ip] * rhs[ip + 1]) / diag[ip];
        return rhs;
    };

    auto rayleigh = [&](const std::vector<double>& y) {
        long double num = 0.0L, den = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            const long double dy = static_cast<long double>(y[i + 1]) - y[i];
            num += dy * dy * static_cast<long double>(n);
        }
        for (std::size_t i = 0; i <= n; ++i) {
            const long double w = (i == 0 || i == n) ? 0.5L : 1.0L;
            const long double yy = static_cast<long double>(y[i]) * y[i];
            num += w * static_cast<long double>(q[i]) * yy / static_cast<long double>(n);
            den += w * yy / static_cast<long double>(n);
        }
        return static_cast<double>(num / den);
    };

    std::vector<double> y(N, 1.0);
    double lam = rayleigh(y);
    for (int it = 0; it < max_iters; ++it) {
        std::vector<double> z = solve_a_plus_identity(y);
        double nrm = 0.0;
        for (double v : z) nrm += v * v;
        nrm = std::sqrt(nrm);
        for (double& v : z) v /= nrm;
        const double lam_new = rayleigh(z);
        y = std::move(z);
        if (std::abs(lam_new - lam) <= 1e-14 * (1.0 + std::abs(lam_new))) {
            lam = lam_new;
            break;
        }
        lam = lam_new;
    }
    return lam;
}

} // namespace oracles
