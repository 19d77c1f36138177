#include "lcnet/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <string>

#include "lcnet/errors.hpp"

namespace lcnet {

namespace {

const GridMeta& require_function(const InputPoint& f, const char* op) {
  if (f.kind() != InputKind::Function) {
    throw ShapeError(std::string(op) + " needs a function input, got " + to_string(f.kind()));
  }
  return *f.shape().grid;
}

}  // namespace

double Kernel::operator()(double x, double s) const {
  switch (kind) {
    case Kind::Gaussian: {
      const double r = (x - s) / length;
      return std::exp(-r * r);
    }
    case Kind::Zero: return 0.0;
    case Kind::One: return 1.0;
  }
  return 0.0;
}

std::string Kernel::name() const {
  switch (kind) {
    case Kind::Gaussian: return "gaussian";
    case Kind::Zero: return "zero";
    case Kind::One: return "one";
  }
  return "unknown";
}

TargetElement integral_operator_apply(const Kernel& kernel, const InputPoint& f,
                                      std::optional<GridMeta> output_grid) {
  const GridMeta& in = require_function(f, "integral operator");
  const GridMeta out = output_grid.value_or(in);
  if (out.a != in.a || out.b != in.b) {
    throw ShapeError("integral operator output grid must span the kernel domain [" +
                     std::to_string(in.a) + ", " + std::to_string(in.b) + "]");
  }
  if (kernel.kind == Kernel::Kind::Gaussian && !(kernel.length > 0.0)) {
    throw std::invalid_argument("Gaussian kernel length must be positive");
  }
  const auto& values = f.values();
  const std::vector<double> s = in.nodes();
  std::vector<double> integrand(in.n);
  std::vector<double> result(out.n);
  for (std::size_t i = 0; i < out.n; ++i) {
    const double x = out.node(i);
    for (std::size_t k = 0; k < in.n; ++k) integrand[k] = kernel(x, s[k]) * values[k];
    result[i] = trapezoid(in, integrand);
  }
  return TargetElement(std::move(result), out);
}

TargetElement poisson_solve_1d(const InputPoint& f) {
  const GridMeta& grid = require_function(f, "Poisson solver");
  const std::size_t n = grid.n;
  if (n < 3) throw std::invalid_argument("Poisson solver needs at least 3 grid nodes");
  const double h2 = grid.spacing() * grid.spacing();
  const auto& rhs = f.values();

  // Interior system: (-u_{i-1} + 2 u_i - u_{i+1}) = h^2 f_i, i = 1..n-2.
  const std::size_t m = n - 2;
  std::vector<double> c_prime(m), d_prime(m);
  c_prime[0] = -1.0 / 2.0;
  d_prime[0] = h2 * rhs[1] / 2.0;
  for (std::size_t i = 1; i < m; ++i) {
    const double denom = 2.0 + c_prime[i - 1];
    c_prime[i] = -1.0 / denom;
    d_prime[i] = (h2 * rhs[i + 1] + d_prime[i - 1]) / denom;
  }
  std::vector<double> u(n, 0.0);
  u[m] = d_prime[m - 1];
  for (std::size_t i = m - 1; i >= 1; --i) u[i] = d_prime[i - 1] - c_prime[i - 1] * u[i + 1];
  return TargetElement(std::move(u), grid);
}

ScalarMap scalar_map_from_name(std::string_view name) {
  if (name == "sin") return ScalarMap::Sin;
  if (name == "square") return ScalarMap::Square;
  if (name == "exp_neg" || name == "exp-") return ScalarMap::ExpNeg;
  throw std::invalid_argument("unknown superposition map '" + std::string(name) + "'");
}

std::string to_string(ScalarMap g) {
  switch (g) {
    case ScalarMap::Sin: return "sin";
    case ScalarMap::Square: return "square";
    case ScalarMap::ExpNeg: return "exp_neg";
  }
  return "unknown";
}

TargetElement superposition_apply(ScalarMap g, const InputPoint& f) {
  std::vector<double> out(f.values().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double v = f.values()[i];
    switch (g) {
      case ScalarMap::Sin: out[i] = std::sin(v); break;
      case ScalarMap::Square: out[i] = v * v; break;
      case ScalarMap::ExpNeg: out[i] = std::exp(-v); break;
    }
  }
  return TargetElement(std::move(out), f.shape().grid);
}

MatrixMap matrix_map_from_name(std::string_view name) {
  if (name == "row_sums") return MatrixMap::RowSums;
  if (name == "sin_of_trace_times_basis" || name == "sin_of_trace") {
    return MatrixMap::SinOfTraceTimesBasis;
  }
  throw std::invalid_argument("unknown matrix map '" + std::string(name) + "'");
}

std::string to_string(MatrixMap map) {
  switch (map) {
    case MatrixMap::RowSums: return "row_sums";
    case MatrixMap::SinOfTraceTimesBasis: return "sin_of_trace_times_basis";
  }
  return "unknown";
}

TargetElement matrix_map_apply(MatrixMap map, const InputPoint& z, std::size_t output_dim) {
  if (z.kind() != InputKind::Matrix) {
    throw ShapeError("matrix map needs a matrix input, got " + to_string(z.kind()));
  }
  const std::size_t rows = z.shape().rows;
  const std::size_t cols = z.shape().cols;
  const auto& v = z.values();
  if (map == MatrixMap::RowSums) {
    std::vector<double> sums(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) sums[r] += v[r * cols + c];
    }
    return TargetElement(std::move(sums));
  }
  if (rows != cols) throw ShapeError("sin_of_trace_times_basis needs a square matrix");
  if (output_dim == 0) throw std::invalid_argument("output dimension must be positive");
  double trace = 0.0;
  for (std::size_t r = 0; r < rows; ++r) trace += v[r * cols + r];
  std::vector<double> out(output_dim, 0.0);
  out[0] = std::sin(trace);
  return TargetElement(std::move(out));
}

std::string OperatorSpec::name() const {
  return std::visit(
      [](const auto& o) -> std::string {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, IntegralKernelOp>) {
          return "integral_" + o.kernel.name();
        } else if constexpr (std::is_same_v<T, Poisson1DOp>) {
          return "poisson1d";
        } else if constexpr (std::is_same_v<T, SuperpositionOp>) {
          return "superposition_" + to_string(o.map);
        } else {
          return "matrix_" + to_string(o.map);
        }
      },
      op);
}

TargetShape OperatorSpec::output_shape(const InputShape& input) const {
  return std::visit(
      [&](const auto& o) -> TargetShape {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, IntegralKernelOp> || std::is_same_v<T, Poisson1DOp>) {
          if (input.kind != InputKind::Function) {
            throw ShapeError(name() + " needs function inputs, ensemble has " +
                             to_string(input.kind) + " samples");
          }
          if (std::is_same_v<T, Poisson1DOp> && input.grid->n < 3) {
            throw ShapeError("poisson1d needs at least 3 grid nodes");
          }
          return TargetShape::on_grid(*input.grid);
        } else if constexpr (std::is_same_v<T, SuperpositionOp>) {
          if (input.kind == InputKind::Function) return TargetShape::on_grid(*input.grid);
          return TargetShape::coefficients(input.size());
        } else {
          if (input.kind != InputKind::Matrix) {
            throw ShapeError(name() + " needs matrix inputs, ensemble has " +
                             to_string(input.kind) + " samples");
          }
          if (o.map == MatrixMap::RowSums) return TargetShape::coefficients(input.rows);
          if (input.rows != input.cols) throw ShapeError(name() + " needs square matrices");
          return TargetShape::coefficients(o.output_dim);
        }
      },
      op);
}

TargetElement OperatorSpec::operator()(const InputPoint& s) const {
  return std::visit(
      [&](const auto& o) -> TargetElement {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, IntegralKernelOp>) {
          return integral_operator_apply(o.kernel, s);
        } else if constexpr (std::is_same_v<T, Poisson1DOp>) {
          return poisson_solve_1d(s);
        } else if constexpr (std::is_same_v<T, SuperpositionOp>) {
          return superposition_apply(o.map, s);
        } else {
          return matrix_map_apply(o.map, s, o.output_dim);
        }
      },
      op);
}

}  // namespace lcnet
