#include "extremal_sl/grid.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace extremal_sl {

GridFunction GridFunction::build(std::vector<double> values) {
    if (values.size() < 3)
        throw std::invalid_argument("GridFunction: need at least 3 nodes (n >= 2)");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("GridFunction: nodal values must be finite");
    return GridFunction(std::move(values));
}

GridFunction GridFunction::constant(double c, std::size_t n) {
    if (n < 2)
        throw std::invalid_argument("GridFunction: need n >= 2 intervals");
    return build(std::vector<double>(n + 1, c));
}

double GridFunction::min_value() const {
    return *std::min_element(values_.begin(), values_.end());
}

double GridFunction::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

GammaParam::GammaParam(double g) : gamma(g) {
    if (!(g > 0.0) || !(g < 1.0))
        throw std::invalid_argument("GammaParam: gamma must lie strictly in (0,1)");
    p = 2.0 * g / (g - 1.0);
    r = (g + 1.0) / (g - 1.0);
}

double GammaParam::threshold() {
    return 1.0 - 2.0 / (std::numbers::pi * std::numbers::pi);
}

// Accumulate in extended precision so that integrate() behaves linearly to
// well below 1e-12 even on the finest grids used by the tests.
double integrate(const GridFunction& f) {
    const std::size_t n = f.n();
    long double s = 0.5L * (static_cast<long double>(f[0]) + f[n]);
    for (std::size_t i = 1; i < n; ++i)
        s += f[i];
    return static_cast<double>(s * f.h());
}

double inner_product(const GridFunction& f, const GridFunction& g) {
    if (f.size() != g.size())
        throw std::invalid_argument("inner_product: grid size mismatch");
    const std::size_t n = f.n();
    long double s = 0.5L * (static_cast<long double>(f[0]) * g[0] +
                            static_cast<long double>(f[n]) * g[n]);
    for (std::size_t i = 1; i < n; ++i)
        s += static_cast<long double>(f[i]) * g[i];
    return static_cast<double>(s * f.h());
}

double l2_norm(const GridFunction& f) {
    return std::sqrt(inner_product(f, f));
}

double power_integral(const GridFunction& y, double p) {
    if (p < 0.0 && !(y.min_value() > 0.0))
        throw std::domain_error("power_integral: negative power needs strictly positive values");
    const std::size_t n = y.n();
    auto term = [&](std::size_t i) -> long double {
        const double t = std::pow(y[i], p);
        if (!std::isfinite(t))
            throw std::domain_error("power_integral: y^p overflows or is undefined at a node");
        return static_cast<long double>(t);
    };
    long double s = 0.5L * (term(0) + term(n));
    for (std::size_t i = 1; i < n; ++i)
        s += term(i);
    return static_cast<double>(s * y.h());
}

double gen_mean(const GridFunction& q, double s) {
    if (s == 0.0)
        throw std::invalid_argument("gen_mean: exponent must be nonzero");
    if (s < 0.0 && !(q.min_value() > 0.0))
        throw std::domain_error("gen_mean: negative exponent needs strictly positive values");
    return std::pow(power_integral(q, s), 1.0 / s);
}

} // namespace extremal_sl
