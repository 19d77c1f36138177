#include "lcnet/presets.hpp"

#include <stdexcept>
#include <string>

namespace lcnet {

using nlohmann::json;

namespace {

json unit_grid(std::size_t n = 101) { return {{"a", 0.0}, {"b", 1.0}, {"n", n}}; }

json band_limited(json grid, std::vector<double> radii, std::size_t count) {
  return {{"family", "band_limited"}, {"grid", std::move(grid)}, {"radii", radii}, {"count", count}};
}

json lq(double q) { return {{"type", "lq"}, {"q", q}}; }
json sup(int order) { return {{"type", "sup_derivative"}, {"order", order}}; }
json dual(std::size_t mode) { return {{"type", "dual_pairing"}, {"mode", mode}, {"scale", 1.0}}; }

json fit(double scale, std::size_t width = 25, std::size_t max_width = 400) {
  return {{"activation", "tanh"},
          {"width", width},
          {"max_width", max_width},
          {"threshold_range", {-2.0, 2.0}},
          {"lambda", 1e-10},
          {"functional_scale", scale},
          {"functional_modes", 7}};
}

json base(std::string name, json op, json ensemble, std::string family, json members, json duals,
          double scale) {
  return {{"name", name},
          {"operator", std::move(op)},
          {"ensemble", std::move(ensemble)},
          {"heldout_fraction", 0.2},
          {"seminorm_family", {{"name", std::move(family)}, {"members", std::move(members)}}},
          {"target_seminorm", 0},
          {"epsilons", {0.2, 0.1, 0.05}},
          {"fit", fit(scale)},
          {"duals", std::move(duals)},
          {"seed", 20240601},
          {"output", {{"dir", "out/" + name}, {"write_networks", false}}}};
}

json build(std::string_view name) {
  const json gaussian = {{"type", "integral_kernel"}, {"kernel", "gaussian"}, {"length", 1.0}};
  if (name == "integral_gaussian") {
    return base("integral_gaussian", gaussian, band_limited(unit_grid(), {1.0, 0.5, 0.25}, 100),
                "L2_L1_sup", {lq(2), lq(1), sup(0)}, {dual(1), dual(2), dual(3)}, 4.0);
  }
  if (name == "poisson") {
    return base("poisson", {{"type", "poisson1d"}}, band_limited(unit_grid(), {10.0, 5.0, 2.5}, 100),
                "L2_C1", {lq(2), sup(0), sup(1)}, {dual(1), dual(2)}, 0.4);
  }
  if (name == "superposition_sin") {
    return base("superposition_sin", {{"type", "superposition"}, {"map", "sin"}},
                band_limited(unit_grid(), {1.0, 0.5, 0.25}, 100), "L2_sup", {lq(2), sup(0)},
                {dual(1)}, 4.0);
  }
  if (name == "sin_of_trace") {
    return base("sin_of_trace",
                {{"type", "matrix_map"}, {"map", "sin_of_trace_times_basis"}, {"output_dim", 3}},
                {{"family", "matrix_ball"}, {"rows", 2}, {"cols", 2}, {"radius", 2.0}, {"count", 100}},
                "l2_sup", {lq(2), sup(0)}, {dual(1)}, 1.0);
  }
  if (name == "matrix_row_sums") {
    return base("matrix_row_sums", {{"type", "matrix_map"}, {"map", "row_sums"}},
                {{"family", "matrix_ball"}, {"rows", 2}, {"cols", 3}, {"radius", 1.0}, {"count", 100}},
                "l2_sup", {lq(2), sup(0)}, {dual(1), dual(2)}, 1.0);
  }
  if (name == "lp_to_lq") {
    return base("lp_to_lq", gaussian, band_limited(unit_grid(), {1.0, 1.0, 1.0}, 100), "L3_L1",
                {lq(3), lq(1)}, {dual(1)}, 4.0);
  }
  if (name == "sequence_lp_lq") {
    return base("sequence_lp_lq", {{"type", "superposition"}, {"map", "sin"}},
                {{"family", "sequence_box"},
                 {"radii", {1.0, 0.5, 1.0 / 3.0, 0.25, 0.2, 1.0 / 6.0}},
                 {"count", 100}},
                "l1_l2", {lq(1), lq(2)}, {dual(1)}, 1.0);
  }
  if (name == "hilbert_valued") {
    json op = {{"type", "integral_kernel"}, {"kernel", "gaussian"}, {"length", 0.3}};
    return base("hilbert_valued", op, band_limited(unit_grid(), {1.0, 0.5, 0.25}, 100), "L2",
                {lq(2)}, json::array(), 4.0);
  }
  if (name == "schwartz_family") {
    json grid = {{"a", -4.0}, {"b", 4.0}, {"n", 161}};
    json op = {{"type", "integral_kernel"}, {"kernel", "gaussian"}, {"length", 1.0}};
    json members = {{{"type", "schwartz"}, {"alpha", 0}, {"beta", 0}, {"radius", 4.0}},
                    {{"type", "schwartz"}, {"alpha", 1}, {"beta", 0}, {"radius", 4.0}},
                    {{"type", "schwartz"}, {"alpha", 0}, {"beta", 1}, {"radius", 4.0}}};
    return base("schwartz_family", op, band_limited(grid, {1.0, 0.5}, 100), "schwartz", members,
                json::array(), 0.5);
  }
  if (name == "zero_operator") {
    return base("zero_operator", {{"type", "superposition"}, {"map", "sin"}},
                band_limited(unit_grid(), {0.0}, 60), "L2_sup", {lq(2), sup(0)}, {dual(1)}, 4.0);
  }
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

}  // namespace

const std::vector<PresetInfo>& presets() {
  static const std::vector<PresetInfo> list = {
      {"integral_gaussian", "Gaussian-kernel integral operator on band-limited inputs, L2/L1/sup family"},
      {"poisson", "1-D Poisson solution operator -u'' = f, L2 and C^1 seminorms"},
      {"superposition_sin", "pointwise sin(f) on band-limited inputs"},
      {"sin_of_trace", "matrix inputs, Z -> sin(tr Z) e_1 in R^3"},
      {"matrix_row_sums", "matrix inputs, Z -> row sums of a 2x3 matrix"},
      {"lp_to_lq", "function-to-function: Gaussian integral operator measured in L3 and L1"},
      {"sequence_lp_lq", "sequence-to-sequence: entrywise sin on a box in R^6, l1 and l2"},
      {"hilbert_valued", "Hilbert-valued: narrow Gaussian integral operator, single L2 norm"},
      {"schwartz_family", "Gaussian integral operator on [-4, 4] with Schwartz-weighted seminorms"},
      {"zero_operator", "F = 0 ensemble, exercises the empty-network branch"},
  };
  return list;
}

json preset_config(std::string_view name) { return build(name); }

}  // namespace lcnet
