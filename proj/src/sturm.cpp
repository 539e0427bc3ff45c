#include "extremal_sl/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace extremal_sl {

namespace {

// The Neumann operator is discretized with mirror ghost nodes, which makes the
// boundary rows of A0 + diag(q) nonsymmetric:
//
//     (A y)_0 = (2 y_0 - 2 y_1)/h^2 + q_0 y_0.
//
// Conjugating with D = diag(sqrt(w)), w the trapezoid weights (1/2,1,...,1,1/2),
// restores symmetry: B = D A D^{-1} is tridiagonal with off-diagonal
// -sqrt(2)/h^2 at both ends and -1/h^2 inside, and shares the spectrum of A.
// Eigenvectors map back by y_i = v_i / sqrt(w_i).
struct Tridiag {
    std::vector<double> diag;   // size N
    std::vector<double> off;    // size N-1
    std::vector<double> off2;   // off[i]^2, precomputed for the Sturm counts
    double scale;               // max Gershgorin row sum, used to normalize residuals
};

Tridiag symmetrized_operator(const GridFunction& q) {
    const std::size_t N = q.size();
    const double n2 = static_cast<double>(q.n()) * static_cast<double>(q.n());
    Tridiag T;
    T.diag.resize(N);
    T.off.assign(N - 1, -n2);
    T.off.front() = -std::sqrt(2.0) * n2;
    T.off.back() = -std::sqrt(2.0) * n2;
    for (std::size_t i = 0; i < N; ++i)
        T.diag[i] = 2.0 * n2 + q[i];
    T.off2.resize(N - 1);
    for (std::size_t i = 0; i + 1 < N; ++i)
        T.off2[i] = T.off[i] * T.off[i];
    T.scale = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        double row = std::abs(T.diag[i]);
        if (i > 0) row += std::abs(T.off[i - 1]);
        if (i + 1 < N) row += std::abs(T.off[i]);
        T.scale = std::max(T.scale, row);
    }
    return T;
}

// Number of eigenvalues of B strictly below x, via the signs of the LDL^T
// pivots of B - x I.  A vanishing pivot is nudged off zero; the count is then
// still correct for a nearby x, which bisection tolerates.
std::size_t count_below(const Tridiag& T, double x) {
    const std::size_t N = T.diag.size();
    std::size_t count = 0;
    long double t = static_cast<long double>(T.diag[0]) - x;
    if (t < 0.0L) ++count;
    for (std::size_t i = 1; i < N; ++i) {
        long double denom = t;
        if (denom == 0.0L)
            denom = -1e-300L;
        t = (static_cast<long double>(T.diag[i]) - x) - T.off2[i - 1] / denom;
        if (t < 0.0L) ++count;
    }
    return count;
}

// Returns a tight bracket around the k-th smallest eigenvalue.
std::pair<double, double> bisect_kth(const Tridiag& T, std::size_t k) {
    const std::size_t N = T.diag.size();
    double lo = T.diag[0], hi = T.diag[0];
    for (std::size_t i = 0; i < N; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(T.off[i - 1]);
        if (i + 1 < N) radius += std::abs(T.off[i]);
        lo = std::min(lo, T.diag[i] - radius);
        hi = std::max(hi, T.diag[i] + radius);
    }
    const double eps = std::numeric_limits<double>::epsilon();
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (count_below(T, mid) >= k)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 4.0 * eps * std::max({std::abs(lo), std::abs(hi), 1.0}))
            break;
    }
    return {lo, hi};
}

// Solves (B - sigma I) z = rhs in place by LU with partial pivoting (the
// shifted matrix is nearly singular by design, so pivoting is not optional).
// Returns false on a hard breakdown.
bool solve_shifted(const Tridiag& T, double sigma, std::vector<double>& z) {
    const std::size_t N = T.diag.size();
    std::vector<double> a(N), b(N, 0.0), c(N, 0.0);   // diag, super1, super2
    std::vector<double> sub(N - 1);
    for (std::size_t i = 0; i < N; ++i) a[i] = T.diag[i] - sigma;
    for (std::size_t i = 0; i + 1 < N; ++i) {
        b[i] = T.off[i];
        sub[i] = T.off[i];
    }
    for (std::size_t i = 0; i + 1 < N; ++i) {
        if (std::abs(sub[i]) > std::abs(a[i])) {
            std::swap(a[i], sub[i]);
            std::swap(b[i], a[i + 1]);
            if (i + 2 < N) std::swap(c[i], b[i + 1]);
            std::swap(z[i], z[i + 1]);
        }
        if (a[i] == 0.0)
            return false;
        const double m = sub[i] / a[i];
        a[i + 1] -= m * b[i];
        if (i + 2 < N) b[i + 1] -= m * c[i];
        z[i + 1] -= m * z[i];
    }
    if (a[N - 1] == 0.0)
        return false;
    z[N - 1] /= a[N - 1];
    if (N >= 2)
        z[N - 2] = (z[N - 2] - b[N - 2] * z[N - 1]) / a[N - 2];
    for (std::size_t ip = N - 2; ip-- > 0;)
        z[ip] = (z[ip] - b[ip] * z[ip + 1] - c[ip] * z[ip + 2]) / a[ip];
    return true;
}

double norm2(const std::vector<double>& v) {
    long double s = 0.0L;
    for (double x : v) s += static_cast<long double>(x) * x;
    return std::sqrt(static_cast<double>(s));
}

// Rayleigh quotient evaluated through the nodal quadratic form
//
//     rho = [ sum (y_{i+1}-y_i)^2/h + h sum w_i q_i y_i^2 ] / (h sum w_i y_i^2),
//
// whose terms are all nonnegative for q >= 0.  This dodges the cancellation
// that makes the naive v^T B v lose ~||B|| eps of absolute accuracy.
double rayleigh_nodal(const GridFunction& q, const std::vector<double>& y) {
    const std::size_t n = q.n();
    const double h = q.h();
    long double num_d = 0.0L, num_q = 0.0L, den = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const long double dy = static_cast<long double>(y[i + 1]) - y[i];
        num_d += dy * dy;
    }
    num_d /= h;
    auto w = [&](std::size_t i) -> long double { return (i == 0 || i == n) ? 0.5L : 1.0L; };
    for (std::size_t i = 0; i <= n; ++i) {
        const long double yy = static_cast<long double>(y[i]) * y[i];
        num_q += w(i) * static_cast<long double>(q[i]) * yy;
        den += w(i) * yy;
    }
    num_q *= h;
    den *= h;
    return static_cast<double>((num_d + num_q) / den);
}

} // namespace

SpectralResult lambda_k(const GridFunction& q, std::size_t k) {
    const std::size_t n = q.n();
    if (k < 1 || k > n - 1)
        throw std::invalid_argument("lambda_k: index k must satisfy 1 <= k <= n-1");
    if (q.min_value() < 0.0)
        throw std::invalid_argument("lambda_k: potential must be nonnegative");

    const Tridiag T = symmetrized_operator(q);
    const auto [lo, hi] = bisect_kth(T, k);
    double sigma = 0.5 * (lo + hi);

    const std::size_t N = q.size();
    std::vector<double> v(N), z(N), y(N);
    std::mt19937 rng(0x5eedu + static_cast<unsigned>(k));
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (double& x : v) x = unif(rng);

    double rho = sigma, rho_prev = std::numeric_limits<double>::infinity();
    const double sqrt2 = std::sqrt(2.0);
    for (int iter = 0; iter < 40; ++iter) {
        z = v;
        if (!solve_shifted(T, sigma, z)) {
            sigma += 16.0 * std::numeric_limits<double>::epsilon() * T.scale + 1e-300;
            continue;
        }
        const double zn = norm2(z);
        if (!(zn > 0.0) || !std::isfinite(zn)) {
            sigma += 16.0 * std::numeric_limits<double>::epsilon() * T.scale + 1e-300;
            continue;
        }
        for (double& x : z) x /= zn;
        // Back to nodal values for the cancellation-free Rayleigh quotient.
        y = z;
        y.front() *= sqrt2;
        y.back() *= sqrt2;
        rho = rayleigh_nodal(q, y);
        if (iter >= 1 && std::abs(rho - rho_prev) <= 1e-15 * (1.0 + std::abs(rho)))
            break;
        rho_prev = rho;
        v = z;
    }
    if (!std::isfinite(rho) || !(norm2(z) > 0.0))
        throw std::runtime_error("lambda_k: inverse iteration failed to converge");

    // Residual of the symmetrized eigenpair, relative to the operator scale.
    double res = 0.0;
    {
        long double s = 0.0L;
        for (std::size_t i = 0; i < N; ++i) {
            long double Bz = static_cast<long double>(T.diag[i]) * z[i];
            if (i > 0) Bz += static_cast<long double>(T.off[i - 1]) * z[i - 1];
            if (i + 1 < N) Bz += static_cast<long double>(T.off[i]) * z[i + 1];
            const long double r = Bz - static_cast<long double>(rho) * z[i];
            s += r * r;
        }
        res = std::sqrt(static_cast<double>(s)) / T.scale;
    }

    GridFunction ef = GridFunction::build(std::move(y));
    const double nrm = l2_norm(ef);
    std::vector<double> scaled(ef.values().begin(), ef.values().end());
    double sign = 1.0;
    for (double x : scaled) {
        if (std::abs(x) > 1e-8 * nrm) {
            sign = (x > 0.0) ? 1.0 : -1.0;
            break;
        }
    }
    for (double& x : scaled) x *= sign / nrm;

    return SpectralResult{k, rho, GridFunction::build(std::move(scaled)), res};
}

GridFunction normalize_to_A_gamma(const GridFunction& q, const GammaParam& gp) {
    if (q.min_value() < 0.0)
        throw std::invalid_argument("normalize_to_A_gamma: potential must be nonnegative");
    const double I = power_integral(q, gp.gamma);
    if (!(I > 0.0))
        throw std::invalid_argument("normalize_to_A_gamma: potential must not vanish identically");
    const double C = std::pow(I, -1.0 / gp.gamma);
    std::vector<double> scaled(q.values().begin(), q.values().end());
    for (double& x : scaled) x *= C;
    return GridFunction::build(std::move(scaled));
}

} // namespace extremal_sl
