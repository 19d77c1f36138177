#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lcnet/input_space.hpp"
#include "lcnet/target_space.hpp"

namespace lcnet {

/// Scalar activation eta. Tanh, Sigmoid and Gaussian are analytic and
/// nowhere locally polynomial. Relu is piecewise linear and is kept as a
/// flagged exception. Polynomial is a negative control.
class Activation {
 public:
  enum class Kind { Tanh, Sigmoid, Relu, Gaussian, Polynomial };

  static Activation tanh() { return Activation(Kind::Tanh); }
  static Activation sigmoid() { return Activation(Kind::Sigmoid); }
  static Activation relu() { return Activation(Kind::Relu); }
  static Activation gaussian() { return Activation(Kind::Gaussian); }
  /// sum_k coefficients[k] x^k; needs at least one finite coefficient.
  static Activation polynomial(std::vector<double> coefficients);

  /// Looks up "tanh", "sigmoid", "relu", "gaussian" or "polynomial".
  /// Throws std::invalid_argument for any other name.
  static Activation from_name(std::string_view name, std::vector<double> coefficients = {});

  Kind kind() const { return kind_; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  std::string name() const;

  bool negative_control() const { return kind_ == Kind::Polynomial; }
  /// Continuous and not a polynomial on any open interval.
  bool satisfies_hypothesis() const {
    return kind_ == Kind::Tanh || kind_ == Kind::Sigmoid || kind_ == Kind::Gaussian;
  }

  double operator()(double x) const;

  bool operator==(const Activation&) const = default;

 private:
  explicit Activation(Kind kind, std::vector<double> coefficients = {})
      : kind_(kind), coefficients_(std::move(coefficients)) {}

  Kind kind_;
  std::vector<double> coefficients_;
};

double activation_eval(const Activation& eta, double x);

/// One summand eta(l(s) - theta) v.
struct Neuron {
  LinearFunctional functional = LinearFunctional::zero();
  double theta = 0.0;
  TargetElement coeff;
};

/// s -> sum_j eta(l_j(s) - theta_j) v_j. Immutable once built; every neuron
/// is checked against the input and output shapes at construction.
class ShallowVectorNetwork {
 public:
  ShallowVectorNetwork(Activation activation, InputShape input_shape, TargetShape output_shape,
                       std::vector<Neuron> neurons = {});

  const Activation& activation() const { return activation_; }
  const InputShape& input_shape() const { return input_shape_; }
  const TargetShape& output_shape() const { return output_shape_; }
  const std::vector<Neuron>& neurons() const { return neurons_; }
  std::size_t size() const { return neurons_.size(); }
  bool empty() const { return neurons_.empty(); }

  TargetElement operator()(const InputPoint& s) const;

 private:
  Activation activation_;
  InputShape input_shape_;
  TargetShape output_shape_;
  std::vector<Neuron> neurons_;
};

TargetElement evaluate_network(const ShallowVectorNetwork& net, const InputPoint& s);

/// Concatenates neuron lists. Requires identical activation and shapes.
ShallowVectorNetwork network_sum(const ShallowVectorNetwork& a, const ShallowVectorNetwork& b);

/// JSON document:
///   {activation, [activation_coefficients], input_shape, output_grid,
///    output_size, neurons: [{functional: {variant, coefficients}, theta, coeff}]}
nlohmann::json serialize_network(const ShallowVectorNetwork& net);

/// Inverse of serialize_network. Throws DocumentError with kind Malformed,
/// UnknownActivation or ShapeInconsistent.
ShallowVectorNetwork deserialize_network(const nlohmann::json& doc);
/// Parses JSON text, then deserializes. Invalid JSON is Malformed.
ShallowVectorNetwork parse_network(std::string_view text);

// Shared JSON helpers for grids and shapes (also used by report documents).
nlohmann::json grid_to_json(const GridMeta& grid);
GridMeta grid_from_json(const nlohmann::json& j, const std::string& field);
nlohmann::json input_shape_to_json(const InputShape& shape);
InputShape input_shape_from_json(const nlohmann::json& j, const std::string& field);

}  // namespace lcnet
