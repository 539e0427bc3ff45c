#pragma once

#include <cmath>
#include <stdexcept>

namespace extremal_sl {

/// Finds a root of f in [a, b] given f(a) and f(b) of opposite sign (either
/// may be zero).  Illinois-damped false position: secant-like steps always
/// land inside the bracket, and the damping keeps the bracket itself
/// shrinking even when plain regula falsi would pin one endpoint.  Stops once
/// the bracket is narrower than xtol (absolute) or the residual vanishes.
template <typename F>
double find_root(F&& f, double a, double b, double fa, double fb, double xtol) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument("find_root: endpoints do not bracket a root");
    int retained = 0;   // which endpoint survived the last update
    for (int iter = 0; iter < 200 && (b - a) > xtol; ++iter) {
        double x = (a * fb - b * fa) / (fb - fa);
        if (!(x > a) || !(x < b))
            x = 0.5 * (a + b);
        const double fx = f(x);
        if (fx == 0.0)
            return x;
        if ((fx > 0.0) == (fa > 0.0)) {
            a = x;
            fa = fx;
            if (retained == -1) fb *= 0.5;
            retained = -1;
        } else {
            b = x;
            fb = fx;
            if (retained == +1) fa *= 0.5;
            retained = +1;
        }
    }
    return 0.5 * (a + b);
}

template <typename F>
double find_root(F&& f, double a, double b, double xtol) {
    const double fa = f(a), fb = f(b);
    return find_root(f, a, b, fa, fb, xtol);
}

} // namespace extremal_sl
