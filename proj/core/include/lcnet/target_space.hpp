#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lcnet/grid.hpp"

namespace lcnet {

/// Shape of a point of the target space: a grid function (grid set) or a
/// plain coefficient vector (grid empty).
struct TargetShape {
  std::size_t size = 0;
  std::optional<GridMeta> grid;

  static TargetShape on_grid(const GridMeta& g) { return {g.n, g}; }
  static TargetShape coefficients(std::size_t n) { return {n, std::nullopt}; }

  bool operator==(const TargetShape&) const = default;
};

/// A point of the discretized target space T. Values are always finite;
/// elements combine only when their shapes match exactly.
class TargetElement {
 public:
  TargetElement() = default;
  explicit TargetElement(std::vector<double> values,
                         std::optional<GridMeta> grid = std::nullopt);

  static TargetElement zeros(const TargetShape& shape);

  const std::vector<double>& values() const { return values_; }
  const std::optional<GridMeta>& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  TargetShape shape() const { return {values_.size(), grid_}; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// this += factor * other, in place.
  TargetElement& add_scaled(double factor, const TargetElement& other);

  friend TargetElement operator+(const TargetElement& x, const TargetElement& y);
  friend TargetElement operator-(const TargetElement& x, const TargetElement& y);
  friend TargetElement operator*(double factor, const TargetElement& x);

  bool operator==(const TargetElement&) const = default;

 private:
  std::vector<double> values_;
  std::optional<GridMeta> grid_;
};

/// Throws ShapeError unless x and y live in the same space.
void require_compatible(const TargetElement& x, const TargetElement& y);

/// (sum_i w_i |t_i|^q)^(1/q) with trapezoid weights; counting weights when
/// the element carries no grid.
struct LqQuadrature {
  double q = 2.0;
};

/// max_i |D^order t (x_i)|, finite-difference derivative. Order 0 is the
/// sup norm and also applies to grid-less elements.
struct SupDerivative {
  int order = 0;
};

/// max over nodes with |x_i| <= radius of |x_i^alpha (D^beta t)(x_i)|.
struct SchwartzWeighted {
  int alpha = 0;
  int beta = 0;
  double radius = 8.0;
};

/// |<t', t>| with trapezoid weights on grids, plain dot product otherwise.
struct DualPairing {
  std::vector<double> test;
};

/// A continuous seminorm on the discretized target space.
class Seminorm {
 public:
  using Variant = std::variant<LqQuadrature, SupDerivative, SchwartzWeighted, DualPairing>;

  static Seminorm lq(double q);
  static Seminorm sup_derivative(int order);
  static Seminorm schwartz(int alpha, int beta, double radius = 8.0);
  static Seminorm dual_pairing(std::vector<double> test);

  const Variant& variant() const { return variant_; }
  bool is_dual() const { return std::holds_alternative<DualPairing>(variant_); }

  /// Short stable identifier used in reports, e.g. "L2", "sup_d1", "schwartz_a1_b0".
  std::string name() const;

  double operator()(const TargetElement& t) const;

 private:
  explicit Seminorm(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

double seminorm_eval(const Seminorm& rho, const TargetElement& t);

struct SeminormFamily {
  std::string name;
  std::vector<Seminorm> members;

  /// Throws std::invalid_argument on an empty member list.
  static SeminormFamily make(std::string name, std::vector<Seminorm> members);

  std::size_t size() const { return members.size(); }
  const Seminorm& operator[](std::size_t i) const { return members.at(i); }
};

/// Per family member, the largest seminorm over diffs (0 for an empty list).
std::vector<double> family_sup_error(const SeminormFamily& family,
                                     std::span<const TargetElement> diffs);

}  // namespace lcnet
