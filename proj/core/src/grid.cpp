#include "lcnet/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lcnet/errors.hpp"

namespace lcnet {

GridMeta GridMeta::uniform(double a, double b, std::size_t n) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
    throw std::invalid_argument("grid requires finite endpoints with b > a");
  }
  if (n < 2) {
    throw std::invalid_argument("grid requires at least 2 nodes");
  }
  return GridMeta{a, b, n};
}

double GridMeta::node(std::size_t i) const {
  // Pin the right endpoint so that node(n-1) == b exactly.
  if (i + 1 == n) return b;
  return a + static_cast<double>(i) * spacing();
}

std::vector<double> GridMeta::nodes() const {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = node(i);
  return x;
}

namespace {

void require_size(const GridMeta& grid, std::size_t size) {
  if (size != grid.n) {
    throw ShapeError("grid has " + std::to_string(grid.n) + " nodes but data has " +
                     std::to_string(size) + " entries");
  }
}

}  // namespace

double trapezoid(const GridMeta& grid, std::span<const double> f) {
  require_size(grid, f.size());
  double interior = 0.0;
  for (std::size_t i = 1; i + 1 < f.size(); ++i) interior += f[i];
  return grid.spacing() * (interior + 0.5 * (f.front() + f.back()));
}

std::vector<double> trapezoid_weights(const GridMeta& grid) {
  const double h = grid.spacing();
  std::vector<double> w(grid.n, h);
  w.front() = 0.5 * h;
  w.back() = 0.5 * h;
  return w;
}

double trapezoid_pairing(const GridMeta& grid, std::span<const double> f,
                         std::span<const double> g) {
  require_size(grid, f.size());
  require_size(grid, g.size());
  double interior = 0.0;
  for (std::size_t i = 1; i + 1 < f.size(); ++i) interior += f[i] * g[i];
  return grid.spacing() * (interior + 0.5 * (f.front() * g.front() + f.back() * g.back()));
}

std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order) {
  if (order < 0) throw std::invalid_argument("derivative order must be nonnegative");
  const std::size_t count = nodes.size();
  if (count < static_cast<std::size_t>(order) + 1) {
    throw std::invalid_argument("stencil needs at least order + 1 nodes");
  }
  const auto m = static_cast<std::size_t>(order);
  // c[j][k]: weight of node j for the k-th derivative.
  std::vector<std::vector<double>> c(count, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < count; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(count);
  for (std::size_t j = 0; j < count; ++j) w[j] = c[j][m];
  return w;
}

std::vector<double> derivative(const GridMeta& grid, std::span<const double> f, int order) {
  require_size(grid, f.size());
  if (order < 0) throw std::invalid_argument("derivative order must be nonnegative");
  const std::size_t n = grid.n;
  const auto alpha = static_cast<std::size_t>(order);
  if (n < alpha + 1) {
    throw std::invalid_argument("derivative of order " + std::to_string(order) +
                                " needs at least " + std::to_string(alpha + 1) +
                                " grid nodes, grid has " + std::to_string(n));
  }
  if (order == 0) return {f.begin(), f.end()};

  const std::size_t central_width = alpha + 1 + (alpha % 2);
  const std::size_t half = central_width / 2;
  const std::size_t side_width = std::min(n, alpha + 2);
  const double scale = std::pow(grid.spacing(), -static_cast<double>(order));

  // Stencils depend only on the offset pattern; cache the central one.
  std::vector<double> offsets(central_width);
  for (std::size_t j = 0; j < central_width; ++j) {
    offsets[j] = static_cast<double>(j) - static_cast<double>(half);
  }
  const std::vector<double> central = fd_weights(0.0, offsets, order);

  std::vector<double> out(n);
  std::vector<double> side_offsets(side_width);
  for (std::size_t i = 0; i < n; ++i) {
    const bool fits = i >= half && i + half < n && central_width <= n;
    double acc = 0.0;
    if (fits) {
      for (std::size_t j = 0; j < central_width; ++j) acc += central[j] * f[i - half + j];
    } else {
      const std::size_t start = (i < n / 2) ? 0 : n - side_width;
      for (std::size_t j = 0; j < side_width; ++j) {
        side_offsets[j] = static_cast<double>(start + j) - static_cast<double>(i);
      }
      const std::vector<double> w = fd_weights(0.0, side_offsets, order);
      for (std::size_t j = 0; j < side_width; ++j) acc += w[j] * f[start + j];
    }
    out[i] = acc * scale;
  }
  return out;
}

}  // namespace lcnet
