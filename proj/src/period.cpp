#include "extremal_sl/period.hpp"

#include "extremal_sl/parallel.hpp"
#include "extremal_sl/rootfind.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace extremal_sl {

namespace {

// Evaluated in extended precision: close to the tangency threshold the value
// at the profile's peak is tiny compared with the individual terms, and the
// quadrature error estimate would otherwise stall on double rounding noise.
double profile(double alpha, double two_gamma, double t) {
    const long double tl = t;
    return static_cast<double>(static_cast<long double>(alpha) *
                                   std::pow(tl, static_cast<long double>(two_gamma)) -
                               tl * tl - 1.0L);
}

double profile_deriv(double alpha, double two_gamma, double t) {
    const long double tl = t;
    return static_cast<double>(static_cast<long double>(alpha) *
                                   static_cast<long double>(two_gamma) *
                                   std::pow(tl, static_cast<long double>(two_gamma) - 1.0L) -
                               2.0L * tl);
}

// A couple of Newton polish steps after the bracketed solve; the roots are
// simple, so this lands at full double accuracy, which keeps the quadrature
// nodes nearest the endpoints on the correct side of the sign change.
double polish_root(double alpha, double two_gamma, double x) {
    for (int i = 0; i < 2; ++i) {
        const double d = profile_deriv(alpha, two_gamma, x);
        if (d == 0.0)
            break;
        const double step = profile(alpha, two_gamma, x) / d;
        if (!std::isfinite(step) || std::abs(step) > 0.1 * x)
            break;
        x -= step;
    }
    return x;
}

} // namespace

double alpha_min(const GammaParam& gp) {
    const double g = gp.gamma;
    const double a = std::exp(-g * std::log(g) + (g - 1.0) * std::log(1.0 - g));
    // Tangency consistency: at the critical alpha the peak of the profile
    // just touches zero.
    const double tau = std::pow(a * g, 1.0 / (2.0 - 2.0 * g));
    if (std::abs(profile(a, 2.0 * g, tau)) > 1e-10)
        throw std::runtime_error("alpha_min: tangency check failed");
    return a;
}

RootPair roots(const GammaParam& gp, double alpha) {
    const double two_gamma = 2.0 * gp.gamma;
    const double amin = alpha_min(gp);
    if (!(alpha > amin))
        throw std::domain_error("roots: alpha must exceed alpha_min, the window is empty");
    const double tau = std::pow(alpha * gp.gamma, 1.0 / (2.0 - two_gamma));
    const double ftau = profile(alpha, two_gamma, tau);
    if (!(ftau > 0.0))
        throw std::domain_error("roots: profile peak is not positive; alpha too close to alpha_min");

    auto f = [&](double t) { return profile(alpha, two_gamma, t); };

    double lo = tau;
    for (int i = 0; i < 2000 && f(lo) > 0.0; ++i) lo *= 0.5;
    if (!(f(lo) < 0.0) && f(lo) != 0.0)
        throw std::runtime_error("roots: failed to bracket the lower root");
    double omega_minus = find_root(f, lo, tau, 1e-13);
    omega_minus = polish_root(alpha, two_gamma, omega_minus);

    double hi = 2.0 * tau;
    for (int i = 0; i < 2000 && f(hi) > 0.0; ++i) hi *= 2.0;
    if (!(f(hi) < 0.0) && f(hi) != 0.0)
        throw std::runtime_error("roots: failed to bracket the upper root");
    double omega_plus = find_root(f, tau, hi, 1e-13);
    omega_plus = polish_root(alpha, two_gamma, omega_plus);

    return RootPair{omega_minus, tau, omega_plus};
}

PeriodProfile I0(const GammaParam& gp, double alpha, double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("I0: tolerance must be positive");
    const RootPair rp = roots(gp, alpha);
    const double two_gamma = 2.0 * gp.gamma;
    const double L = rp.omega_plus - rp.omega_minus;
    const double slope_lo = profile_deriv(alpha, two_gamma, rp.omega_minus);
    const double slope_hi = -profile_deriv(alpha, two_gamma, rp.omega_plus);

    // t = omega_minus + L sin^2(theta) turns dt/sqrt(f) into
    // L sin(2 theta) dtheta / sqrt(f), smooth up to both ends; near an
    // endpoint sin(2 theta)/sqrt(f) tends to a finite slope ratio.  The
    // integrand extends to a smooth periodic function, so the midpoint rule
    // converges spectrally under doubling.
    auto integrand = [&](double theta) {
        const double s2 = std::sin(theta) * std::sin(theta);
        const double t = rp.omega_minus + L * s2;
        double fv = profile(alpha, two_gamma, t);
        if (fv <= 0.0) {
            // Only reachable by rounding within a few ulps of an endpoint;
            // fall back to the linearized profile there.
            const double near_lo = slope_lo * (t - rp.omega_minus);
            const double near_hi = slope_hi * (rp.omega_plus - t);
            fv = std::max(std::min(near_lo, near_hi),
                          std::numeric_limits<double>::min());
        }
        return L * std::sin(2.0 * theta) / std::sqrt(fv);
    };

    const double half_pi = 0.5 * std::numbers::pi;
    auto midpoint = [&](std::size_t m) {
        const double dtheta = half_pi / static_cast<double>(m);
        long double s = 0.0L;
        for (std::size_t j = 0; j < m; ++j)
            s += integrand((static_cast<double>(j) + 0.5) * dtheta);
        return static_cast<double>(s * static_cast<long double>(dtheta));
    };

    std::size_t m = 16;
    double prev = midpoint(m);
    for (; m <= (1u << 22); ) {
        m *= 2;
        const double cur = midpoint(m);
        const double err = std::abs(cur - prev);
        if (err <= tol)
            return PeriodProfile{alpha, rp.omega_minus, rp.tau, rp.omega_plus, cur, err};
        prev = cur;
    }
    throw std::runtime_error("I0: quadrature failed to reach the requested tolerance");
}

double I0_limit(const GammaParam& gp, double tol) {
    const double amin = alpha_min(gp);
    constexpr int k_lo = 2, k_hi = 6;
    constexpr int npts = k_hi - k_lo + 1;
    std::array<double, npts> u{}, val{};
    for (int k = k_lo; k <= k_hi; ++k) {
        const double alpha = amin * (1.0 + std::pow(10.0, -k));
        u[k - k_lo] = std::sqrt(alpha - amin);
        val[k - k_lo] = I0(gp, alpha, tol).I0;
    }
    // Neville tableau evaluated at u = 0.
    for (int j = 1; j < npts; ++j)
        for (int i = 0; i + j < npts; ++i)
            val[i] = (u[i] * val[i + 1] - u[i + j] * val[i]) / (u[i] - u[i + j]);
    return val[0];
}

MonotonicityScan monotonicity_scan(const GammaParam& gp,
                                   const std::vector<double>& alphas,
                                   double tol) {
    if (alphas.empty())
        throw std::invalid_argument("monotonicity_scan: need at least one alpha");
    for (std::size_t i = 1; i < alphas.size(); ++i)
        if (!(alphas[i] > alphas[i - 1]))
            throw std::invalid_argument("monotonicity_scan: alphas must be strictly increasing");

    std::vector<std::optional<PeriodProfile>> slots(alphas.size());
    parallel_for(alphas.size(), [&](std::size_t i) {
        slots[i] = I0(gp, alphas[i], tol);
    });

    MonotonicityScan scan;
    scan.rows.reserve(alphas.size());
    for (auto& slot : slots)
        scan.rows.push_back(*slot);
    scan.strictly_increasing = true;
    for (std::size_t i = 0; i + 1 < scan.rows.size(); ++i) {
        const double margin = 2.0 * (scan.rows[i].err + scan.rows[i + 1].err);
        if (!(scan.rows[i + 1].I0 - scan.rows[i].I0 > margin))
            scan.strictly_increasing = false;
    }
    return scan;
}

namespace {

struct OdeState {
    double y;
    double v;
};

struct DopriStep {
    OdeState next;
    double err;   // scaled error estimate; accept when <= 1
};

// One embedded Dormand-Prince 5(4) step.  Returns err = infinity when a stage
// leaves the positive-y domain, which the caller treats as a rejection.
template <typename Rhs>
DopriStep dopri5_step(const Rhs& rhs, const OdeState& u, double h,
                      double atol, double rtol) {
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                     a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double inf = std::numeric_limits<double>::infinity();
    auto stage = [&](const OdeState& s, OdeState& k) {
        if (!(s.y > 0.0))
            return false;
        k = rhs(s);
        return true;
    };

    OdeState k1{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{};
    if (!stage(u, k1)) return {u, inf};
    OdeState s2{u.y + h * a21 * k1.y, u.v + h * a21 * k1.v};
    if (!stage(s2, k2)) return {u, inf};
    OdeState s3{u.y + h * (a31 * k1.y + a32 * k2.y),
                u.v + h * (a31 * k1.v + a32 * k2.v)};
    if (!stage(s3, k3)) return {u, inf};
    OdeState s4{u.y + h * (a41 * k1.y + a42 * k2.y + a43 * k3.y),
                u.v + h * (a41 * k1.v + a42 * k2.v + a43 * k3.v)};
    if (!stage(s4, k4)) return {u, inf};
    OdeState s5{u.y + h * (a51 * k1.y + a52 * k2.y + a53 * k3.y + a54 * k4.y),
                u.v + h * (a51 * k1.v + a52 * k2.v + a53 * k3.v + a54 * k4.v)};
    if (!stage(s5, k5)) return {u, inf};
    OdeState s6{u.y + h * (a61 * k1.y + a62 * k2.y + a63 * k3.y + a64 * k4.y + a65 * k5.y),
                u.v + h * (a61 * k1.v + a62 * k2.v + a63 * k3.v + a64 * k4.v + a65 * k5.v)};
    if (!stage(s6, k6)) return {u, inf};

    OdeState un{u.y + h * (b1 * k1.y + b3 * k3.y + b4 * k4.y + b5 * k5.y + b6 * k6.y),
                u.v + h * (b1 * k1.v + b3 * k3.v + b4 * k4.v + b5 * k5.v + b6 * k6.v)};
    if (!stage(un, k7)) return {u, inf};

    const double err_y =
        h * (e1 * k1.y + e3 * k3.y + e4 * k4.y + e5 * k5.y + e6 * k6.y + e7 * k7.y);
    const double err_v =
        h * (e1 * k1.v + e3 * k3.v + e4 * k4.v + e5 * k5.v + e6 * k6.v + e7 * k7.v);
    const double sc_y = atol + rtol * std::max(std::abs(u.y), std::abs(un.y));
    const double sc_v = atol + rtol * std::max(std::abs(u.v), std::abs(un.v));
    const double ry = err_y / sc_y, rv = err_v / sc_v;
    const double err = std::sqrt(0.5 * (ry * ry + rv * rv));
    if (!std::isfinite(err))
        return {u, inf};
    return {un, err};
}

} // namespace

Trajectory shoot(const GammaParam& gp, double mu, double y0, const ShootConfig& cfg) {
    if (!(mu > 0.0))
        throw std::invalid_argument("shoot: mu must be positive");
    if (!(y0 > 0.0))
        throw std::invalid_argument("shoot: y0 must be positive");
    const double y_c = std::pow(mu, 0.5 * (gp.gamma - 1.0));   // 1/(r-1) = (gamma-1)/2
    if (std::abs(y0 - y_c) <= 1e-10 * std::max(1.0, y_c))
        throw std::invalid_argument("shoot: y0 coincides with the constant equilibrium");

    const double coeff = (1.0 - gp.gamma) / gp.gamma;
    auto energy_at = [&](const OdeState& s) {
        return s.v * s.v + mu * s.y * s.y + coeff * std::pow(s.y, gp.p);
    };
    auto rhs = [&](const OdeState& s) {
        return OdeState{s.v, std::pow(s.y, gp.r) - mu * s.y};
    };

    Trajectory traj;
    traj.mu = mu;
    traj.y0 = y0;
    OdeState u{y0, 0.0};
    double x = 0.0;
    traj.samples.push_back({x, u.y, u.v});
    traj.energy = energy_at(u);
    traj.alpha_hat = std::pow(gp.gamma / (1.0 - gp.gamma), 1.0 - gp.gamma) *
                     std::pow(mu, -gp.gamma) * traj.energy;
    traj.energy_drift = 0.0;

    double h = 1e-3;
    const double h_min = 1e-14;
    int sign0 = 0;
    bool found = false;
    double event_x = 0.0;
    OdeState event_u{};

    for (std::size_t step = 0; step < 2000000 && !found; ++step) {
        if (x >= cfg.x_max)
            break;
        h = std::min(h, cfg.x_max - x);
        if (h < h_min)
            break;
        const DopriStep trial = dopri5_step(rhs, u, h, cfg.atol, cfg.rtol);
        if (trial.err > 1.0) {
            h = std::max(h * std::max(0.2, 0.9 * std::pow(trial.err, -0.2)), h_min);
            if (h <= h_min)
                throw std::runtime_error("shoot: step size underflow");
            continue;
        }
        const double x_new = x + h;
        const OdeState u_new = trial.next;

        if (sign0 == 0 && u_new.v != 0.0)
            sign0 = (u_new.v > 0.0) ? 1 : -1;
        const bool flipped =
            sign0 != 0 && (u_new.v == 0.0 || ((u_new.v > 0.0) ? 1 : -1) != sign0);
        if (flipped) {
            // Bisect within the accepted step for the turning point; a single
            // fixed-size substep is at least as accurate as the full accepted
            // step, so the event location inherits the integration tolerance.
            double lo = 0.0, hi = h;
            OdeState u_hi = u_new;
            for (int it = 0; it < 80 && (hi - lo) > 1e-13; ++it) {
                const double mid = 0.5 * (lo + hi);
                const OdeState u_mid = dopri5_step(rhs, u, mid, cfg.atol, cfg.rtol).next;
                const int s = (u_mid.v > 0.0) ? 1 : ((u_mid.v < 0.0) ? -1 : 0);
                if (s == sign0) {
                    lo = mid;
                } else {
                    hi = mid;
                    u_hi = u_mid;
                }
            }
            event_x = x + hi;
            event_u = u_hi;
            found = true;
            break;   // the overshooting tail of this step is not recorded
        }

        traj.samples.push_back({x_new, u_new.y, u_new.v});
        traj.energy_drift =
            std::max(traj.energy_drift, std::abs(energy_at(u_new) - traj.energy));
        x = x_new;
        u = u_new;
        const double grow = (trial.err > 0.0)
                                ? std::min(5.0, std::max(0.2, 0.9 * std::pow(trial.err, -0.2)))
                                : 5.0;
        h = std::min(h * grow, 0.1);
    }

    if (!found)
        throw std::runtime_error("shoot: no turning point found before x_max");

    traj.samples.push_back({event_x, event_u.y, event_u.v});
    traj.energy_drift =
        std::max(traj.energy_drift, std::abs(energy_at(event_u) - traj.energy));
    traj.half_period = event_x;
    return traj;
}

double period_identity_check(const GammaParam& gp, double mu, double y0) {
    const Trajectory traj = shoot(gp, mu, y0);
    const PeriodProfile prof = I0(gp, traj.alpha_hat, 1e-11);
    const double predicted = (1.0 - gp.gamma) * prof.I0 / std::sqrt(mu);
    return std::abs(traj.half_period - predicted) / predicted;
}

} // namespace extremal_sl
