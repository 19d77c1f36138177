#include "lcnet/target_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "lcnet/errors.hpp"

namespace lcnet {

namespace {

std::string shape_text(const TargetShape& s) {
  std::string out = std::to_string(s.size) + " values";
  if (s.grid) {
    out += " on [" + std::to_string(s.grid->a) + ", " + std::to_string(s.grid->b) + "] with " +
           std::to_string(s.grid->n) + " nodes";
  } else {
    out += " without grid";
  }
  return out;
}

const GridMeta& require_grid(const TargetElement& t, const char* what) {
  if (!t.grid()) throw ShapeError(std::string(what) + " needs a grid function");
  return *t.grid();
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

TargetElement::TargetElement(std::vector<double> values, std::optional<GridMeta> grid)
    : values_(std::move(values)), grid_(grid) {
  if (grid_ && grid_->n != values_.size()) {
    throw ShapeError("target element has " + std::to_string(values_.size()) +
                     " values but its grid has " + std::to_string(grid_->n) + " nodes");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("target element entry " + std::to_string(i) +
                                  " is not finite");
    }
  }
}

TargetElement TargetElement::zeros(const TargetShape& shape) {
  return TargetElement(std::vector<double>(shape.size, 0.0), shape.grid);
}

void require_compatible(const TargetElement& x, const TargetElement& y) {
  if (x.shape() != y.shape()) {
    throw ShapeError("incompatible target elements: " + shape_text(x.shape()) + " vs " +
                     shape_text(y.shape()));
  }
}

TargetElement& TargetElement::add_scaled(double factor, const TargetElement& other) {
  require_compatible(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += factor * other.values_[i];
  return *this;
}

TargetElement operator+(const TargetElement& x, const TargetElement& y) {
  require_compatible(x, y);
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = x.values_[i] + y.values_[i];
  return TargetElement(std::move(v), x.grid_);
}

TargetElement operator-(const TargetElement& x, const TargetElement& y) {
  require_compatible(x, y);
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = x.values_[i] - y.values_[i];
  return TargetElement(std::move(v), x.grid_);
}

TargetElement operator*(double factor, const TargetElement& x) {
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = factor * x.values_[i];
  return TargetElement(std::move(v), x.grid_);
}

Seminorm Seminorm::lq(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) {
    throw std::invalid_argument("Lq seminorm requires finite q >= 1");
  }
  return Seminorm(LqQuadrature{q});
}

Seminorm Seminorm::sup_derivative(int order) {
  if (order < 0) throw std::invalid_argument("derivative order must be nonnegative");
  return Seminorm(SupDerivative{order});
}

Seminorm Seminorm::schwartz(int alpha, int beta, double radius) {
  if (alpha < 0 || beta < 0) {
    throw std::invalid_argument("Schwartz seminorm orders must be nonnegative");
  }
  if (!(radius > 0.0)) throw std::invalid_argument("Schwartz truncation radius must be positive");
  return Seminorm(SchwartzWeighted{alpha, beta, radius});
}

Seminorm Seminorm::dual_pairing(std::vector<double> test) {
  for (double v : test) {
    if (!std::isfinite(v)) throw std::invalid_argument("dual test vector must be finite");
  }
  return Seminorm(DualPairing{std::move(test)});
}

std::string Seminorm::name() const {
  return std::visit(
      overloaded{
          [](const LqQuadrature& s) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "L%g", s.q);
            return std::string(buf);
          },
          [](const SupDerivative& s) { return "sup_d" + std::to_string(s.order); },
          [](const SchwartzWeighted& s) {
            return "schwartz_a" + std::to_string(s.alpha) + "_b" + std::to_string(s.beta);
          },
          [](const DualPairing&) { return std::string("dual"); },
      },
      variant_);
}

double Seminorm::operator()(const TargetElement& t) const { return seminorm_eval(*this, t); }

double seminorm_eval(const Seminorm& rho, const TargetElement& t) {
  const auto& values = t.values();
  return std::visit(
      overloaded{
          [&](const LqQuadrature& s) {
            if (!(s.q >= 1.0)) throw std::invalid_argument("Lq seminorm requires q >= 1");
            std::vector<double> powered(values.size());
            for (std::size_t i = 0; i < values.size(); ++i) {
              powered[i] = std::pow(std::abs(values[i]), s.q);
            }
            double integral = 0.0;
            if (t.grid()) {
              integral = trapezoid(*t.grid(), powered);
            } else {
              for (double p : powered) integral += p;
            }
            return s.q == 1.0 ? integral : std::pow(integral, 1.0 / s.q);
          },
          [&](const SupDerivative& s) {
            double best = 0.0;
            if (s.order == 0) {
              for (double v : values) best = std::max(best, std::abs(v));
              return best;
            }
            const auto d = derivative(require_grid(t, "derivative seminorm"), values, s.order);
            for (double v : d) best = std::max(best, std::abs(v));
            return best;
          },
          [&](const SchwartzWeighted& s) {
            const GridMeta& grid = require_grid(t, "Schwartz seminorm");
            const auto d = derivative(grid, values, s.beta);
            double best = 0.0;
            for (std::size_t i = 0; i < d.size(); ++i) {
              const double x = grid.node(i);
              if (std::abs(x) > s.radius) continue;
              best = std::max(best, std::abs(std::pow(x, s.alpha) * d[i]));
            }
            return best;
          },
          [&](const DualPairing& s) {
            if (s.test.size() != values.size()) {
              throw ShapeError("dual test vector has " + std::to_string(s.test.size()) +
                               " entries, element has " + std::to_string(values.size()));
            }
            if (t.grid()) return std::abs(trapezoid_pairing(*t.grid(), s.test, values));
            double acc = 0.0;
            for (std::size_t i = 0; i < values.size(); ++i) acc += s.test[i] * values[i];
            return std::abs(acc);
          },
      },
      rho.variant());
}

SeminormFamily SeminormFamily::make(std::string name, std::vector<Seminorm> members) {
  if (members.empty()) throw std::invalid_argument("seminorm family '" + name + "' is empty");
  return SeminormFamily{std::move(name), std::move(members)};
}

std::vector<double> family_sup_error(const SeminormFamily& family,
                                     std::span<const TargetElement> diffs) {
  for (std::size_t i = 1; i < diffs.size(); ++i) require_compatible(diffs[0], diffs[i]);
  std::vector<double> out(family.size(), 0.0);
  for (const auto& d : diffs) {
    for (std::size_t k = 0; k < family.size(); ++k) {
      out[k] = std::max(out[k], seminorm_eval(family.members[k], d));
    }
  }
  return out;
}

}  // namespace lcnet
