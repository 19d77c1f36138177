#include "lcnet/network.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lcnet/errors.hpp"

namespace lcnet {

using nlohmann::json;

Activation Activation::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) {
    throw std::invalid_argument("polynomial activation needs at least one coefficient");
  }
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw std::invalid_argument("polynomial coefficients must be finite");
  }
  return Activation(Kind::Polynomial, std::move(coefficients));
}

Activation Activation::from_name(std::string_view name, std::vector<double> coefficients) {
  if (name == "tanh") return tanh();
  if (name == "sigmoid") return sigmoid();
  if (name == "relu") return relu();
  if (name == "gaussian") return gaussian();
  if (name == "polynomial") return polynomial(std::move(coefficients));
  throw std::invalid_argument("unknown activation '" + std::string(name) + "'");
}

std::string Activation::name() const {
  switch (kind_) {
    case Kind::Tanh: return "tanh";
    case Kind::Sigmoid: return "sigmoid";
    case Kind::Relu: return "relu";
    case Kind::Gaussian: return "gaussian";
    case Kind::Polynomial: return "polynomial";
  }
  return "unknown";
}

double Activation::operator()(double x) const {
  switch (kind_) {
    case Kind::Tanh: return std::tanh(x);
    case Kind::Sigmoid: return 1.0 / (1.0 + std::exp(-x));
    case Kind::Relu: return x > 0.0 ? x : 0.0;
    case Kind::Gaussian: return std::exp(-x * x);
    case Kind::Polynomial: {
      double acc = 0.0;
      for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
      return acc;
    }
  }
  return 0.0;
}

double activation_eval(const Activation& eta, double x) { return eta(x); }

ShallowVectorNetwork::ShallowVectorNetwork(Activation activation, InputShape input_shape,
                                           TargetShape output_shape, std::vector<Neuron> neurons)
    : activation_(std::move(activation)),
      input_shape_(std::move(input_shape)),
      output_shape_(std::move(output_shape)),
      neurons_(std::move(neurons)) {
  if (output_shape_.grid && output_shape_.grid->n != output_shape_.size) {
    throw ShapeError("network output size disagrees with its grid");
  }
  for (std::size_t j = 0; j < neurons_.size(); ++j) {
    const Neuron& nu = neurons_[j];
    if (!nu.functional.accepts(input_shape_)) {
      throw ShapeError("neuron " + std::to_string(j) + ": functional does not match the " +
                       to_string(input_shape_.kind) + " input shape");
    }
    if (nu.coeff.shape() != output_shape_) {
      throw ShapeError("neuron " + std::to_string(j) + ": coefficient shape differs from output");
    }
    if (!std::isfinite(nu.theta)) {
      throw std::invalid_argument("neuron " + std::to_string(j) + ": threshold is not finite");
    }
  }
}

TargetElement ShallowVectorNetwork::operator()(const InputPoint& s) const {
  if (s.shape() != input_shape_) {
    throw ShapeError("input does not match the network's " + to_string(input_shape_.kind) +
                     " input shape");
  }
  TargetElement out = TargetElement::zeros(output_shape_);
  for (const Neuron& nu : neurons_) {
    const double a = activation_(apply_functional(nu.functional, s) - nu.theta);
    out.add_scaled(a, nu.coeff);
  }
  return out;
}

TargetElement evaluate_network(const ShallowVectorNetwork& net, const InputPoint& s) {
  return net(s);
}

ShallowVectorNetwork network_sum(const ShallowVectorNetwork& a, const ShallowVectorNetwork& b) {
  if (!(a.activation() == b.activation())) {
    throw std::invalid_argument("cannot add networks with activations " + a.activation().name() +
                                " and " + b.activation().name());
  }
  if (a.input_shape() != b.input_shape() || a.output_shape() != b.output_shape()) {
    throw ShapeError("cannot add networks with different input or output shapes");
  }
  std::vector<Neuron> neurons = a.neurons();
  neurons.insert(neurons.end(), b.neurons().begin(), b.neurons().end());
  return {a.activation(), a.input_shape(), a.output_shape(), std::move(neurons)};
}

// ---------------------------------------------------------------------------
// JSON

namespace {

[[noreturn]] void malformed(const std::string& field, const std::string& what) {
  throw DocumentError(DocumentError::Kind::Malformed, field, field + ": " + what);
}

[[noreturn]] void inconsistent(const std::string& field, const std::string& what) {
  throw DocumentError(DocumentError::Kind::ShapeInconsistent, field, field + ": " + what);
}

const json& member(const json& j, const char* key, const std::string& field) {
  if (!j.is_object()) malformed(field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) malformed(field + "." + key, "missing");
  return *it;
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) malformed(field, "expected a number");
  return j.get<double>();
}

std::size_t count(const json& j, const std::string& field) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    malformed(field, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

std::vector<double> numbers(const json& j, const std::string& field) {
  if (!j.is_array()) malformed(field, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

json grid_to_json(const GridMeta& grid) {
  return json{{"a", grid.a}, {"b", grid.b}, {"n", grid.n}};
}

GridMeta grid_from_json(const json& j, const std::string& field) {
  const double a = number(member(j, "a", field), field + ".a");
  const double b = number(member(j, "b", field), field + ".b");
  const std::size_t n = count(member(j, "n", field), field + ".n");
  try {
    return GridMeta::uniform(a, b, n);
  } catch (const std::invalid_argument& e) {
    inconsistent(field, e.what());
  }
}

json input_shape_to_json(const InputShape& shape) {
  json j{{"kind", to_string(shape.kind)}};
  switch (shape.kind) {
    case InputKind::Function: j["grid"] = grid_to_json(*shape.grid); break;
    case InputKind::Sequence: j["length"] = shape.rows; break;
    case InputKind::Matrix:
      j["rows"] = shape.rows;
      j["cols"] = shape.cols;
      break;
  }
  return j;
}

InputShape input_shape_from_json(const json& j, const std::string& field) {
  const json& kind = member(j, "kind", field);
  if (!kind.is_string()) malformed(field + ".kind", "expected a string");
  const auto k = kind.get<std::string>();
  InputShape shape;
  if (k == "function") {
    shape = InputShape::function(grid_from_json(member(j, "grid", field), field + ".grid"));
  } else if (k == "sequence") {
    shape = InputShape::sequence(count(member(j, "length", field), field + ".length"));
  } else if (k == "matrix") {
    shape = InputShape::matrix(count(member(j, "rows", field), field + ".rows"),
                               count(member(j, "cols", field), field + ".cols"));
  } else {
    malformed(field + ".kind", "unknown input kind '" + k + "'");
  }
  if (shape.size() == 0) inconsistent(field, "input shape is empty");
  return shape;
}

json serialize_network(const ShallowVectorNetwork& net) {
  json doc;
  doc["activation"] = net.activation().name();
  if (net.activation().kind() == Activation::Kind::Polynomial) {
    doc["activation_coefficients"] = net.activation().coefficients();
  }
  doc["input_shape"] = input_shape_to_json(net.input_shape());
  doc["output_grid"] = net.output_shape().grid ? grid_to_json(*net.output_shape().grid) : json();
  doc["output_size"] = net.output_shape().size;
  json neurons = json::array();
  for (const Neuron& nu : net.neurons()) {
    json f{{"variant", to_string(nu.functional.kind())},
           {"coefficients", nu.functional.coefficients()}};
    neurons.push_back(json{{"functional", std::move(f)},
                           {"theta", nu.theta},
                           {"coeff", nu.coeff.values()}});
  }
  doc["neurons"] = std::move(neurons);
  return doc;
}

ShallowVectorNetwork deserialize_network(const json& doc) {
  if (!doc.is_object()) malformed("$", "network document must be an object");

  const json& act = member(doc, "activation", "$");
  if (!act.is_string()) malformed("activation", "expected a string");
  std::vector<double> act_coeffs;
  if (auto it = doc.find("activation_coefficients"); it != doc.end()) {
    act_coeffs = numbers(*it, "activation_coefficients");
  }
  const auto act_name = act.get<std::string>();
  Activation activation = Activation::tanh();
  try {
    activation = Activation::from_name(act_name, act_coeffs);
  } catch (const std::invalid_argument& e) {
    if (act_name == "polynomial") malformed("activation_coefficients", e.what());
    throw DocumentError(DocumentError::Kind::UnknownActivation, "activation",
                        "activation: unknown activation name '" + act_name + "'");
  }

  const InputShape input = input_shape_from_json(member(doc, "input_shape", "$"), "input_shape");

  const json& og = member(doc, "output_grid", "$");
  const std::size_t out_size = count(member(doc, "output_size", "$"), "output_size");
  TargetShape output = TargetShape::coefficients(out_size);
  if (!og.is_null()) {
    output = TargetShape::on_grid(grid_from_json(og, "output_grid"));
    if (output.size != out_size) {
      inconsistent("output_size", "does not match output_grid node count");
    }
  }

  const json& list = member(doc, "neurons", "$");
  if (!list.is_array()) malformed("neurons", "expected an array");
  std::vector<Neuron> neurons;
  neurons.reserve(list.size());
  for (std::size_t j = 0; j < list.size(); ++j) {
    const std::string field = "neurons[" + std::to_string(j) + "]";
    const json& entry = list[j];
    const json& f = member(entry, "functional", field);
    const json& variant = member(f, "variant", field + ".functional");
    if (!variant.is_string()) malformed(field + ".functional.variant", "expected a string");
    const auto vname = variant.get<std::string>();
    auto coeffs = numbers(member(f, "coefficients", field + ".functional"),
                          field + ".functional.coefficients");

    Neuron nu;
    if (vname == "zero") {
      if (!coeffs.empty()) inconsistent(field + ".functional", "zero functional has coefficients");
      nu.functional = LinearFunctional::zero();
    } else {
      const bool matches = (vname == "quadrature_pairing" && input.kind == InputKind::Function) ||
                           (vname == "sequence_dot" && input.kind == InputKind::Sequence) ||
                           (vname == "matrix_trace" && input.kind == InputKind::Matrix);
      if (!matches) {
        if (vname != "quadrature_pairing" && vname != "sequence_dot" && vname != "matrix_trace") {
          malformed(field + ".functional.variant", "unknown functional variant '" + vname + "'");
        }
        inconsistent(field + ".functional.variant",
                     vname + " does not apply to " + to_string(input.kind) + " inputs");
      }
      if (coeffs.size() != input.size()) {
        inconsistent(field + ".functional.coefficients",
                     "expected " + std::to_string(input.size()) + " entries, got " +
                         std::to_string(coeffs.size()));
      }
      nu.functional = LinearFunctional::for_shape(input, std::move(coeffs));
    }
    nu.theta = number(member(entry, "theta", field), field + ".theta");
    auto v = numbers(member(entry, "coeff", field), field + ".coeff");
    if (v.size() != output.size) {
      inconsistent(field + ".coeff", "expected " + std::to_string(output.size) +
                                         " entries, got " + std::to_string(v.size()));
    }
    nu.coeff = TargetElement(std::move(v), output.grid);
    neurons.push_back(std::move(nu));
  }
  return {std::move(activation), input, output, std::move(neurons)};
}

ShallowVectorNetwork parse_network(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed("$", std::string("not valid JSON: ") + e.what());
  }
  return deserialize_network(doc);
}

}  // namespace lcnet
