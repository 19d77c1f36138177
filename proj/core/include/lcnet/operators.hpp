#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "lcnet/input_space.hpp"
#include "lcnet/target_space.hpp"

namespace lcnet {

/// Continuous kernel K(x, s) on the input interval.
struct Kernel {
  enum class Kind { Gaussian, Zero, One };
  Kind kind = Kind::Gaussian;
  /// Gaussian: K(x, s) = exp(-((x - s) / length)^2).
  double length = 1.0;

  double operator()(double x, double s) const;
  std::string name() const;
};

/// (F f)(x_i) = sum_k w_k K(x_i, s_k) f(s_k), trapezoid weights on f's grid.
/// The output grid defaults to f's grid and must span the same interval.
TargetElement integral_operator_apply(const Kernel& kernel, const InputPoint& f,
                                      std::optional<GridMeta> output_grid = std::nullopt);

/// Solves -u'' = f with u = 0 at both ends by the three-point scheme
/// (Thomas algorithm). Requires a function input with at least 3 nodes.
TargetElement poisson_solve_1d(const InputPoint& f);

enum class ScalarMap { Sin, Square, ExpNeg };
ScalarMap scalar_map_from_name(std::string_view name);
std::string to_string(ScalarMap g);

/// Pointwise g(f). Function inputs give grid functions; sequence and matrix
/// inputs give coefficient vectors.
TargetElement superposition_apply(ScalarMap g, const InputPoint& f);

enum class MatrixMap { RowSums, SinOfTraceTimesBasis };
MatrixMap matrix_map_from_name(std::string_view name);
std::string to_string(MatrixMap map);

/// RowSums: vector of row sums. SinOfTraceTimesBasis: sin(tr Z) e_1 in
/// R^output_dim (Z must be square).
TargetElement matrix_map_apply(MatrixMap map, const InputPoint& z, std::size_t output_dim = 3);

struct IntegralKernelOp {
  Kernel kernel;
};
struct Poisson1DOp {};
struct SuperpositionOp {
  ScalarMap map = ScalarMap::Sin;
};
struct MatrixMapOp {
  MatrixMap map = MatrixMap::RowSums;
  std::size_t output_dim = 3;
};

/// A ground-truth operator F : E -> T.
struct OperatorSpec {
  std::variant<IntegralKernelOp, Poisson1DOp, SuperpositionOp, MatrixMapOp> op;

  std::string name() const;
  /// Output shape for inputs of `input`; throws ShapeError when the operator
  /// does not accept that input kind.
  TargetShape output_shape(const InputShape& input) const;
  TargetElement operator()(const InputPoint& s) const;
};

}  // namespace lcnet
