#include "lcnet/input_space.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <type_traits>
#include <string>

#include "lcnet/errors.hpp"

namespace lcnet {

std::string to_string(InputKind kind) {
  switch (kind) {
    case InputKind::Function: return "function";
    case InputKind::Sequence: return "sequence";
    case InputKind::Matrix: return "matrix";
  }
  return "unknown";
}

std::string to_string(FunctionalKind kind) {
  switch (kind) {
    case FunctionalKind::QuadraturePairing: return "quadrature_pairing";
    case FunctionalKind::SequenceDot: return "sequence_dot";
    case FunctionalKind::MatrixTrace: return "matrix_trace";
    case FunctionalKind::Zero: return "zero";
  }
  return "unknown";
}

namespace {

std::string describe(const InputShape& s) {
  switch (s.kind) {
    case InputKind::Function:
      return "function on " + std::to_string(s.grid ? s.grid->n : 0) + " nodes";
    case InputKind::Sequence:
      return "sequence of length " + std::to_string(s.rows);
    case InputKind::Matrix:
      return std::to_string(s.rows) + "x" + std::to_string(s.cols) + " matrix";
  }
  return "unknown";
}

void validate_shape(const InputShape& shape) {
  if (shape.kind == InputKind::Function) {
    if (!shape.grid) throw ShapeError("function input needs a grid");
    if (shape.rows != shape.grid->n || shape.cols != 1) {
      throw ShapeError("function input shape disagrees with its grid");
    }
  } else if (shape.grid) {
    throw ShapeError(to_string(shape.kind) + " input must not carry a grid");
  }
  if (shape.kind == InputKind::Sequence && shape.cols != 1) {
    throw ShapeError("sequence input must have a single column");
  }
  if (shape.size() == 0) throw ShapeError("input shape must be nonempty");
}

void require_finite(const std::vector<double>& values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument(std::string(what) + " entry " + std::to_string(i) +
                                  " is not finite");
    }
  }
}

}  // namespace

InputPoint::InputPoint(InputShape shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  validate_shape(shape_);
  if (values_.size() != shape_.size()) {
    throw ShapeError(describe(shape_) + " needs " + std::to_string(shape_.size()) +
                     " values, got " + std::to_string(values_.size()));
  }
  require_finite(values_, "input point");
}

InputPoint operator+(const InputPoint& x, const InputPoint& y) {
  if (x.shape_ != y.shape_) {
    throw ShapeError("cannot add " + describe(x.shape_) + " and " + describe(y.shape_));
  }
  std::vector<double> v(x.values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = x.values_[i] + y.values_[i];
  return {x.shape_, std::move(v)};
}

InputPoint operator*(double factor, const InputPoint& x) {
  std::vector<double> v(x.values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = factor * x.values_[i];
  return {x.shape_, std::move(v)};
}

LinearFunctional::LinearFunctional(FunctionalKind kind, InputShape shape,
                                   std::vector<double> coefficients)
    : kind_(kind), shape_(std::move(shape)), coefficients_(std::move(coefficients)) {
  if (kind_ == FunctionalKind::Zero) return;
  validate_shape(shape_);
  if (coefficients_.size() != shape_.size()) {
    throw ShapeError(to_string(kind_) + " on " + describe(shape_) + " needs " +
                     std::to_string(shape_.size()) + " coefficients, got " +
                     std::to_string(coefficients_.size()));
  }
  require_finite(coefficients_, "functional coefficient");
}

LinearFunctional LinearFunctional::quadrature(const GridMeta& grid, std::vector<double> phi) {
  return {FunctionalKind::QuadraturePairing, InputShape::function(grid), std::move(phi)};
}

LinearFunctional LinearFunctional::sequence_dot(std::vector<double> a) {
  const std::size_t n = a.size();
  return {FunctionalKind::SequenceDot, InputShape::sequence(n), std::move(a)};
}

LinearFunctional LinearFunctional::matrix_trace(std::size_t rows, std::size_t cols,
                                                std::vector<double> w) {
  return {FunctionalKind::MatrixTrace, InputShape::matrix(rows, cols), std::move(w)};
}

LinearFunctional LinearFunctional::zero() { return {FunctionalKind::Zero, InputShape{}, {}}; }

LinearFunctional LinearFunctional::for_shape(const InputShape& shape,
                                             std::vector<double> coefficients) {
  switch (shape.kind) {
    case InputKind::Function:
      return {FunctionalKind::QuadraturePairing, shape, std::move(coefficients)};
    case InputKind::Sequence:
      return {FunctionalKind::SequenceDot, shape, std::move(coefficients)};
    case InputKind::Matrix:
      return {FunctionalKind::MatrixTrace, shape, std::move(coefficients)};
  }
  throw std::invalid_argument("unknown input kind");
}

bool LinearFunctional::accepts(const InputShape& shape) const {
  return kind_ == FunctionalKind::Zero || shape_ == shape;
}

double apply_functional(const LinearFunctional& l, const InputPoint& s) {
  if (l.kind() == FunctionalKind::Zero) return 0.0;
  if (!l.accepts(s.shape())) {
    throw ShapeError(to_string(l.kind()) + " functional on " + describe(l.shape()) +
                     " cannot be applied to " + describe(s.shape()));
  }
  const auto& c = l.coefficients();
  const auto& v = s.values();
  if (l.kind() == FunctionalKind::QuadraturePairing) {
    return trapezoid_pairing(*s.shape().grid, c, v);
  }
  // Truncated sequence dot and tr(W^T Z) are both the plain entrywise sum.
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += c[i] * v[i];
  return acc;
}

LinearFunctional random_functional(const FunctionalSpec& spec, std::uint64_t seed) {
  validate_shape(spec.shape);
  if (!std::isfinite(spec.scale) || spec.scale < 0.0) {
    throw std::invalid_argument("functional scale must be finite and nonnegative");
  }
  if (spec.scale == 0.0) return LinearFunctional::zero();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  if (spec.shape.kind == InputKind::Function) {
    if (spec.modes == 0) throw std::invalid_argument("functional needs at least one mode");
    const GridMeta& grid = *spec.shape.grid;
    std::vector<double> z(spec.modes);
    for (double& zk : z) zk = normal(rng);
    std::vector<double> phi(grid.n, 0.0);
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double t = (grid.node(i) - grid.a) / (grid.b - grid.a);
      double acc = z[0];
      for (std::size_t k = 1; k < spec.modes; ++k) {
        const double freq = static_cast<double>((k + 1) / 2) * std::numbers::pi;
        acc += z[k] * ((k % 2 == 1) ? std::sin(freq * t) : std::cos(freq * t));
      }
      phi[i] = spec.scale * acc;
    }
    return LinearFunctional::quadrature(grid, std::move(phi));
  }

  std::vector<double> coefficients(spec.shape.size());
  for (double& c : coefficients) c = spec.scale * normal(rng);
  return LinearFunctional::for_shape(spec.shape, std::move(coefficients));
}

InputShape EnsembleSpec::shape() const {
  return std::visit(
      [](const auto& f) -> InputShape {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, BandLimited>) {
          return InputShape::function(f.grid);
        } else if constexpr (std::is_same_v<T, SequenceBox>) {
          return InputShape::sequence(f.radii.size());
        } else {
          return InputShape::matrix(f.rows, f.cols);
        }
      },
      family);
}

std::string EnsembleSpec::family_name() const {
  switch (family.index()) {
    case 0: return "band_limited";
    case 1: return "sequence_box";
    default: return "matrix_ball";
  }
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  // splitmix64 finalizer applied to a golden-ratio-spaced combination.
  auto mix = [](std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(root + 0x9e3779b97f4a7c15ULL * (mix(stream) + 1));
}

namespace {

void check_radii(const std::vector<double>& radii) {
  if (radii.empty()) throw std::invalid_argument("ensemble parameter family is empty");
  for (double r : radii) {
    if (!std::isfinite(r) || r < 0.0) {
      throw std::invalid_argument("ensemble radii must be finite and nonnegative");
    }
  }
}

// Uniform on [-r, r]; r * (2u - 1) with u in [0, 1) never exceeds r in magnitude.
double symmetric(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return r * (2.0 * unit(rng) - 1.0);
}

}  // namespace

CompactEnsemble sample_ensemble(const EnsembleSpec& spec, std::uint64_t seed) {
  if (spec.count == 0) throw std::invalid_argument("ensemble sample count must be positive");

  CompactEnsemble out;
  out.spec = spec;
  out.seed = seed;
  out.samples.reserve(spec.count);
  out.parameters.reserve(spec.count);
  std::mt19937_64 rng(seed);

  if (const auto* band = std::get_if<BandLimited>(&spec.family)) {
    check_radii(band->radii);
    const GridMeta& grid = band->grid;
    const std::size_t modes = band->radii.size();
    // sin(k pi t_i) tabulated once.
    std::vector<std::vector<double>> basis(modes, std::vector<double>(grid.n));
    for (std::size_t k = 0; k < modes; ++k) {
      for (std::size_t i = 0; i < grid.n; ++i) {
        const double t = (grid.node(i) - grid.a) / (grid.b - grid.a);
        basis[k][i] = std::sin(static_cast<double>(k + 1) * std::numbers::pi * t);
      }
    }
    for (std::size_t s = 0; s < spec.count; ++s) {
      std::vector<double> c(modes);
      for (std::size_t k = 0; k < modes; ++k) c[k] = symmetric(rng, band->radii[k]);
      std::vector<double> f(grid.n, 0.0);
      for (std::size_t k = 0; k < modes; ++k) {
        for (std::size_t i = 0; i < grid.n; ++i) f[i] += c[k] * basis[k][i];
      }
      out.samples.push_back(InputPoint::function(grid, std::move(f)));
      out.parameters.push_back(std::move(c));
    }
  } else if (const auto* box = std::get_if<SequenceBox>(&spec.family)) {
    check_radii(box->radii);
    for (std::size_t s = 0; s < spec.count; ++s) {
      std::vector<double> v(box->radii.size());
      for (std::size_t n = 0; n < v.size(); ++n) v[n] = symmetric(rng, box->radii[n]);
      out.samples.push_back(InputPoint::sequence(v));
      out.parameters.push_back(std::move(v));
    }
  } else {
    const auto& ball = std::get<MatrixBall>(spec.family);
    if (ball.rows == 0 || ball.cols == 0) {
      throw std::invalid_argument("matrix ball needs positive dimensions");
    }
    if (!std::isfinite(ball.radius) || ball.radius < 0.0) {
      throw std::invalid_argument("matrix ball radius must be finite and nonnegative");
    }
    const std::size_t dim = ball.rows * ball.cols;
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t s = 0; s < spec.count; ++s) {
      std::vector<double> z(dim);
      double norm2 = 0.0;
      for (double& v : z) {
        v = normal(rng);
        norm2 += v * v;
      }
      const double target = ball.radius * std::pow(unit(rng), 1.0 / static_cast<double>(dim));
      const double factor = norm2 > 0.0 ? target / std::sqrt(norm2) : 0.0;
      for (double& v : z) v *= factor;
      // Rounding may push the norm a hair past the radius; pull it back.
      for (;;) {
        double n2 = 0.0;
        for (double v : z) n2 += v * v;
        if (std::sqrt(n2) <= ball.radius) break;
        for (double& v : z) v *= (1.0 - 1e-15);
      }
      out.samples.push_back(InputPoint::matrix(ball.rows, ball.cols, z));
      out.parameters.push_back(std::move(z));
    }
  }
  return out;
}

}  // namespace lcnet
