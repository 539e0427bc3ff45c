#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace extremal_sl {

/// A real-valued function on [0,1] sampled at the n+1 nodes x_i = i*h of a
/// uniform grid with n intervals, h = 1/n.  Values are immutable after
/// construction and guaranteed finite.
class GridFunction {
public:
    /// Validates and takes ownership of nodal values.  Requires at least
    /// 3 nodes (n >= 2) and all entries finite; throws std::invalid_argument.
    static GridFunction build(std::vector<double> values);

    /// Constant function c on a grid with n intervals.
    static GridFunction constant(double c, std::size_t n);

    std::size_t n() const { return values_.size() - 1; }   ///< interval count
    std::size_t size() const { return values_.size(); }    ///< node count, n+1
    double h() const { return 1.0 / static_cast<double>(n()); }
    double node(std::size_t i) const { return static_cast<double>(i) * h(); }

    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }

    double min_value() const;
    double max_value() const;

private:
    explicit GridFunction(std::vector<double> v) : values_(std::move(v)) {}
    std::vector<double> values_;
};

/// Sample a callable at the grid nodes.  The callable must produce finite
/// values at every node or build() rejects the result.
template <typename F>
GridFunction sample(F&& f, std::size_t n) {
    std::vector<double> v(n + 1);
    const double h = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i <= n; ++i)
        v[i] = f(static_cast<double>(i) * h);
    return GridFunction::build(std::move(v));
}

/// Exponent bundle for a fixed gamma in (0,1).  Both derived exponents are
/// negative: p = 2*gamma/(gamma-1) < -2 is the power appearing inside the
/// constraint integral, r = (gamma+1)/(gamma-1) = p - 1 drives the
/// Euler-Lagrange nonlinearity.
struct GammaParam {
    double gamma;
    double p;
    double r;

    explicit GammaParam(double g);   // throws std::invalid_argument unless 0 < g < 1

    /// 1 - 2/pi^2, where pi^2 - 2/(1-gamma) changes sign.
    static double threshold();
};

/// Trapezoid rule on the grid: h * (v_0/2 + v_1 + ... + v_{n-1} + v_n/2).
double integrate(const GridFunction& f);

/// Trapezoid inner product of two functions on the same grid.
double inner_product(const GridFunction& f, const GridFunction& g);

/// sqrt of the trapezoid integral of f^2.
double l2_norm(const GridFunction& f);

/// Trapezoid integral of y^p, taken nodewise.  For p < 0 the function must
/// be strictly positive (std::domain_error otherwise).
double power_integral(const GridFunction& y, double p);

/// Generalized mean (integral q^s)^(1/s); s must be nonzero
/// (std::invalid_argument), and q strictly positive when s < 0
/// (std::domain_error).  Nondecreasing in s for fixed q.
double gen_mean(const GridFunction& q, double s);

} // namespace extremal_sl
