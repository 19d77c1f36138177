#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lcnet {

/// Uniform grid on [a, b] with n nodes, endpoints included.
struct GridMeta {
  double a = 0.0;
  double b = 1.0;
  std::size_t n = 2;

  /// Validating factory: requires b > a and n >= 2.
  static GridMeta uniform(double a, double b, std::size_t n);

  double spacing() const { return (b - a) / static_cast<double>(n - 1); }
  double node(std::size_t i) const;
  std::vector<double> nodes() const;

  bool operator==(const GridMeta&) const = default;
};

/// Composite trapezoid rule for the integral of f over the grid,
/// evaluated as h * (interior sum + (f_0 + f_{n-1}) / 2).
double trapezoid(const GridMeta& grid, std::span<const double> f);

/// Trapezoid weights w_i (h/2 at the ends, h inside).
std::vector<double> trapezoid_weights(const GridMeta& grid);

/// Trapezoid approximation of the pairing sum_i w_i f_i g_i.
double trapezoid_pairing(const GridMeta& grid, std::span<const double> f,
                         std::span<const double> g);

/// Finite-difference weights for the derivative of the given order at x0,
/// using arbitrary distinct nodes (Fornberg's recursion).
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order);

/// Nodal approximation of the order-th derivative of f.
///
/// Interior nodes use a centred stencil: order + 1 points for even orders,
/// order + 2 for odd ones. Nodes too close to an end fall back to a
/// one-sided stencil of order + 2 points (order + 1 if the grid is smaller).
/// Both are second order accurate and exact on polynomials of degree <= order.
/// Requires grid.n >= order + 1.
std::vector<double> derivative(const GridMeta& grid, std::span<const double> f, int order);

}  // namespace lcnet
