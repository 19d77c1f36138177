#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lcnet/grid.hpp"

namespace lcnet {

enum class InputKind { Function, Sequence, Matrix };

std::string to_string(InputKind kind);

/// Shape of a discretized input. Functions carry a grid, sequences a
/// truncation length (rows), matrices rows x cols stored row-major.
struct InputShape {
  InputKind kind = InputKind::Sequence;
  std::optional<GridMeta> grid;
  std::size_t rows = 0;
  std::size_t cols = 1;

  static InputShape function(const GridMeta& g) { return {InputKind::Function, g, g.n, 1}; }
  static InputShape sequence(std::size_t length) {
    return {InputKind::Sequence, std::nullopt, length, 1};
  }
  static InputShape matrix(std::size_t rows, std::size_t cols) {
    return {InputKind::Matrix, std::nullopt, rows, cols};
  }

  std::size_t size() const { return rows * cols; }
  bool operator==(const InputShape&) const = default;
};

/// A point s of the input space S.
class InputPoint {
 public:
  InputPoint() = default;
  InputPoint(InputShape shape, std::vector<double> values);

  static InputPoint function(const GridMeta& grid, std::vector<double> values) {
    return {InputShape::function(grid), std::move(values)};
  }
  static InputPoint sequence(std::vector<double> values) {
    const std::size_t n = values.size();
    return {InputShape::sequence(n), std::move(values)};
  }
  static InputPoint matrix(std::size_t rows, std::size_t cols, std::vector<double> values) {
    return {InputShape::matrix(rows, cols), std::move(values)};
  }

  const InputShape& shape() const { return shape_; }
  InputKind kind() const { return shape_.kind; }
  const std::vector<double>& values() const { return values_; }

  friend InputPoint operator+(const InputPoint& x, const InputPoint& y);
  friend InputPoint operator*(double factor, const InputPoint& x);

  bool operator==(const InputPoint&) const = default;

 private:
  InputShape shape_;
  std::vector<double> values_;
};

enum class FunctionalKind { QuadraturePairing, SequenceDot, MatrixTrace, Zero };

std::string to_string(FunctionalKind kind);

/// A continuous linear functional on S.
///
/// QuadraturePairing stores phi on the input grid, SequenceDot the
/// coefficients a_1..a_N, MatrixTrace the weight matrix W (row-major).
/// Zero has no coefficients and applies to every input kind.
class LinearFunctional {
 public:
  static LinearFunctional quadrature(const GridMeta& grid, std::vector<double> phi);
  static LinearFunctional sequence_dot(std::vector<double> a);
  static LinearFunctional matrix_trace(std::size_t rows, std::size_t cols, std::vector<double> w);
  static LinearFunctional zero();

  /// Functional of the kind that matches `shape`, with the given coefficients.
  static LinearFunctional for_shape(const InputShape& shape, std::vector<double> coefficients);

  FunctionalKind kind() const { return kind_; }
  const InputShape& shape() const { return shape_; }
  const std::vector<double>& coefficients() const { return coefficients_; }

  /// True when this functional can be applied to points of `shape`.
  bool accepts(const InputShape& shape) const;

  bool operator==(const LinearFunctional&) const = default;

 private:
  LinearFunctional(FunctionalKind kind, InputShape shape, std::vector<double> coefficients);

  FunctionalKind kind_ = FunctionalKind::Zero;
  InputShape shape_;
  std::vector<double> coefficients_;
};

/// l(s). Throws ShapeError when the functional does not accept s.
double apply_functional(const LinearFunctional& l, const InputPoint& s);

/// Recipe for drawing a random functional on inputs of a given shape.
///
/// Function inputs get phi = scale * sum_k z_k b_k(t) over the trigonometric
/// basis 1, sin(pi t), cos(pi t), sin(2 pi t), ... in t = (x - a) / (b - a),
/// truncated to `modes` terms. Sequences and matrices get scale * z entrywise.
/// z is standard normal.
struct FunctionalSpec {
  InputShape shape;
  double scale = 1.0;
  std::size_t modes = 7;
};

/// Deterministic in (spec, seed). scale == 0 yields the Zero functional.
LinearFunctional random_functional(const FunctionalSpec& spec, std::uint64_t seed);

/// f = sum_{k=1..K} c_k sin(k pi t) with |c_k| <= radii[k-1], t = (x - a) / (b - a).
struct BandLimited {
  GridMeta grid;
  std::vector<double> radii;
};

/// |s_n| <= radii[n-1], n = 1..N.
struct SequenceBox {
  std::vector<double> radii;
};

/// ||Z||_F <= radius.
struct MatrixBall {
  std::size_t rows = 2;
  std::size_t cols = 2;
  double radius = 1.0;
};

struct EnsembleSpec {
  std::variant<BandLimited, SequenceBox, MatrixBall> family;
  std::size_t count = 1;

  InputShape shape() const;
  std::string family_name() const;
};

/// Finite sample of a compact parametric set. `parameters[i]` holds the
/// generating parameters of `samples[i]` (sine coefficients, sequence
/// entries, or matrix entries).
struct CompactEnsemble {
  EnsembleSpec spec;
  std::uint64_t seed = 0;
  std::vector<InputPoint> samples;
  std::vector<std::vector<double>> parameters;

  std::size_t size() const { return samples.size(); }
};

/// Samples uniformly in the parameter box (or Frobenius ball). Every sample
/// satisfies its bound exactly; the result is a pure function of (spec, seed).
CompactEnsemble sample_ensemble(const EnsembleSpec& spec, std::uint64_t seed);

/// Mixes a root seed with a stream index into an independent 64-bit seed.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

}  // namespace lcnet
