#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fconv/descriptor.hpp"

namespace fconv {

using cplx = std::complex<double>;

/**
 * Uniform lattice on [-L, L) together with its dual frequency lattice.
 *
 * Spatial nodes are t_j = -L + j*dx for j = 0..n-1 with dx = 2L/n.
 * Frequency nodes are x_k = k*dxi for k = -n/2..n/2-1 with dxi = pi/L,
 * stored at index m = k + n/2. The product dx*dxi equals 2*pi/n.
 */
class Grid {
public:
    Grid(double half_width, std::size_t size);

    double half_width() const noexcept { return half_width_; }
    std::size_t size() const noexcept { return size_; }
    double spatial_step() const noexcept { return 2.0 * half_width_ / static_cast<double>(size_); }
    double freq_step() const noexcept;

    double spatial_node(std::size_t j) const noexcept {
        return -half_width_ + static_cast<double>(j) * spatial_step();
    }
    // Signed wavenumber k of storage index m.
    std::ptrdiff_t wavenumber(std::size_t m) const noexcept {
        return static_cast<std::ptrdiff_t>(m) - static_cast<std::ptrdiff_t>(size_ / 2);
    }
    double frequency_node(std::size_t m) const noexcept {
        return static_cast<double>(wavenumber(m)) * freq_step();
    }
    // The frequency window is [-frequency_limit, frequency_limit).
    double frequency_limit() const noexcept;

    std::vector<double> spatial_nodes() const;
    std::vector<double> frequency_nodes() const;

    bool operator==(const Grid&) const = default;

private:
    double half_width_;
    std::size_t size_;
};

// Throws InvalidArgument unless L > 0, n even and n >= 8.
Grid make_grid(double half_width, std::size_t size);

enum class Domain { spatial, frequency };

/// Complex samples on the spatial or the frequency nodes of a grid.
class GridFunction {
public:
    GridFunction(Grid grid, std::vector<cplx> values, Domain domain = Domain::spatial);

    static GridFunction zeros(const Grid& grid, Domain domain = Domain::spatial);

    const Grid& grid() const noexcept { return grid_; }
    Domain domain() const noexcept { return domain_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const cplx> values() const noexcept { return values_; }
    cplx operator[](std::size_t j) const noexcept { return values_[j]; }
    // Coordinate of sample j: t_j for spatial, x_j for frequency samples.
    double node(std::size_t j) const noexcept {
        return domain_ == Domain::spatial ? grid_.spatial_node(j) : grid_.frequency_node(j);
    }

    GridFunction& operator+=(const GridFunction& other);
    GridFunction& operator-=(const GridFunction& other);
    GridFunction& operator*=(cplx scale);

private:
    Grid grid_;
    std::vector<cplx> values_;
    Domain domain_;
};

GridFunction operator+(GridFunction lhs, const GridFunction& rhs);
GridFunction operator-(GridFunction lhs, const GridFunction& rhs);
GridFunction operator*(cplx scale, GridFunction f);

GridFunction pointwise_product(const GridFunction& f, const GridFunction& g);
GridFunction abs(const GridFunction& f);
double max_abs(const GridFunction& f);
double max_abs_diff(const GridFunction& f, const GridFunction& g);

// Throws InvalidArgument when grids or domains differ.
void require_compatible(const GridFunction& f, const GridFunction& g, std::string_view op);

/**
 * Real-valued closed-form function of one variable, built from a small
 * family of elementary descriptors:
 *
 *   const(c)               c
 *   indicator(c,d)         1 on [c, d), else 0
 *   closed_indicator(c,d)  1 on [c, d], else 0
 *   gaussian(s)            exp(-t^2 / (2 s^2))
 *   normal(s)              exp(-t^2 / (2 s^2)) / (s sqrt(2 pi))
 *   bump                   exp(1/(t^2-1)) for |t| < 1, else 0
 *   rational_decay(k)      (1 + t^2)^(-k)
 *   poly_gauss(k)          t^k exp(-t^2)
 *   translate(e,h)         e(t - h)
 *   dilate(e,s)            e(t / s)
 *   scale(e,c)             c * e(t)
 *   sum(e1,e2), product(e1,e2)
 */
class FunctionExpr {
public:
    struct Node;

    static FunctionExpr parse(std::string_view text);
    static FunctionExpr from_node(const DescriptorNode& node);

    static FunctionExpr constant(double c);
    static FunctionExpr indicator(double c, double d);
    static FunctionExpr closed_indicator(double c, double d);
    static FunctionExpr gaussian(double s);
    static FunctionExpr normal(double s);
    static FunctionExpr bump();
    static FunctionExpr rational_decay(double k);
    static FunctionExpr poly_gauss(int k);

    FunctionExpr translate(double h) const;
    FunctionExpr dilate(double s) const;
    FunctionExpr scale(double c) const;
    friend FunctionExpr operator+(const FunctionExpr& a, const FunctionExpr& b);
    friend FunctionExpr operator*(const FunctionExpr& a, const FunctionExpr& b);

    double operator()(double t) const;
    std::string describe() const;

private:
    explicit FunctionExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// The compactly supported smooth bump exp(1/(x^2-1)) on (-1, 1).
double bump_value(double x) noexcept;

// values[j] = expr(t_j). Throws EvaluationError on a non-finite value.
GridFunction sample(const FunctionExpr& expr, const Grid& grid);
// Samples on the frequency nodes x_k instead.
GridFunction sample_frequency(const FunctionExpr& expr, const Grid& grid);

/// Trapezoid rule over [-L, L] with the function taken as 0 beyond the
/// window: dx * sum(values) - dx/2 * values[0]. Frequency samples use dxi.
cplx quadrature(const GridFunction& f);

enum class Direction { forward, inverse };
enum class TransformPath { fast, direct };

/**
 * Discrete transform pair for (F f)(x) = int f(t) e^{itx} dt.
 *
 *   forward: F(x_k) = dx * sum_j f(t_j) e^{i t_j x_k}
 *   inverse: f(t_j) = dxi/(2 pi) * sum_k F(x_k) e^{-i t_j x_k}
 *
 * The forward direction requires spatial samples and returns frequency samples;
 * inverse the opposite (InvalidArgument otherwise). The direct path is the O(n^2)
 * summation and agrees with the fast path to roughly 1e-12.
 */
GridFunction dft_pair(const GridFunction& f, Direction direction,
                      TransformPath path = TransformPath::fast);

// CSV rows "index,t,re,im" with a header line; for frequency samples the
// t column holds the frequency node.
void write_csv(std::ostream& os, const GridFunction& f);

}  // namespace fconv
