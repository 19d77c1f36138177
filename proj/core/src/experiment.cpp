#include "lcnet/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <type_traits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lcnet/errors.hpp"

namespace lcnet {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

// ---------------------------------------------------------------------------
// Seminorm specs

Seminorm SeminormSpec::materialize(const TargetShape& shape) const {
  switch (type) {
    case Type::Lq: return Seminorm::lq(q);
    case Type::SupDerivative: return Seminorm::sup_derivative(order);
    case Type::Schwartz: return Seminorm::schwartz(alpha, beta, radius);
    case Type::DualPairing: {
      if (!values.empty()) {
        if (values.size() != shape.size) {
          throw ShapeError("dual test vector has " + std::to_string(values.size()) +
                           " entries, output has " + std::to_string(shape.size));
        }
        return Seminorm::dual_pairing(values);
      }
      std::vector<double> test(shape.size, 0.0);
      if (shape.grid) {
        const GridMeta& g = *shape.grid;
        for (std::size_t i = 0; i < g.n; ++i) {
          const double t = (g.node(i) - g.a) / (g.b - g.a);
          test[i] = scale * std::sin(static_cast<double>(mode) * std::numbers::pi * t);
        }
      } else {
        if (mode == 0 || mode > shape.size) {
          throw ShapeError("dual basis index " + std::to_string(mode) + " outside 1.." +
                           std::to_string(shape.size));
        }
        test[mode - 1] = scale;
      }
      return Seminorm::dual_pairing(std::move(test));
    }
  }
  throw std::invalid_argument("unknown seminorm type");
}

namespace {

// ---------------------------------------------------------------------------
// Config parsing helpers. Every failure names the field path.

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  const json* v = find(j, key);
  if (!v) throw ConfigError(path.empty() ? key : path + "." + key, "missing");
  return *v;
}

std::string join(const std::string& path, const char* key) {
  return path.empty() ? key : path + "." + key;
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

double opt_number(const json& j, const char* key, const std::string& path, double fallback) {
  const json* v = find(j, key);
  return v ? get_number(*v, join(path, key)) : fallback;
}

std::uint64_t get_unsigned(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return j.get<std::uint64_t>();
  throw ConfigError(path, "expected a nonnegative integer");
}

std::uint64_t opt_unsigned(const json& j, const char* key, const std::string& path,
                           std::uint64_t fallback) {
  const json* v = find(j, key);
  return v ? get_unsigned(*v, join(path, key)) : fallback;
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> get_numbers(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(get_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

GridMeta parse_grid(const json& j, const std::string& path) {
  const double a = get_number(require(j, "a", path), path + ".a");
  const double b = get_number(require(j, "b", path), path + ".b");
  const auto n = static_cast<std::size_t>(get_unsigned(require(j, "n", path), path + ".n"));
  try {
    return GridMeta::uniform(a, b, n);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

OperatorSpec parse_operator(const json& j, const std::string& path) {
  const std::string type = get_string(require(j, "type", path), path + ".type");
  try {
    if (type == "integral_kernel") {
      Kernel k;
      const std::string kernel = find(j, "kernel") ? get_string(j["kernel"], path + ".kernel")
                                                   : std::string("gaussian");
      if (kernel == "gaussian") {
        k.kind = Kernel::Kind::Gaussian;
      } else if (kernel == "zero") {
        k.kind = Kernel::Kind::Zero;
      } else if (kernel == "one") {
        k.kind = Kernel::Kind::One;
      } else {
        throw ConfigError(path + ".kernel", "unknown kernel '" + kernel + "'");
      }
      k.length = opt_number(j, "length", path, 1.0);
      if (!(k.length > 0.0)) throw ConfigError(path + ".length", "must be positive");
      return {IntegralKernelOp{k}};
    }
    if (type == "poisson1d") return {Poisson1DOp{}};
    if (type == "superposition") {
      return {SuperpositionOp{scalar_map_from_name(get_string(require(j, "map", path), path + ".map"))}};
    }
    if (type == "matrix_map") {
      MatrixMapOp op;
      op.map = matrix_map_from_name(get_string(require(j, "map", path), path + ".map"));
      op.output_dim = static_cast<std::size_t>(opt_unsigned(j, "output_dim", path, 3));
      if (op.output_dim == 0) throw ConfigError(path + ".output_dim", "must be positive");
      return {op};
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ".map", e.what());
  }
  throw ConfigError(path + ".type", "unknown operator type '" + type + "'");
}

json operator_to_json(const OperatorSpec& spec) {
  return std::visit(
      [](const auto& o) -> json {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, IntegralKernelOp>) {
          return {{"type", "integral_kernel"}, {"kernel", o.kernel.name()}, {"length", o.kernel.length}};
        } else if constexpr (std::is_same_v<T, Poisson1DOp>) {
          return {{"type", "poisson1d"}};
        } else if constexpr (std::is_same_v<T, SuperpositionOp>) {
          return {{"type", "superposition"}, {"map", to_string(o.map)}};
        } else {
          return {{"type", "matrix_map"}, {"map", to_string(o.map)}, {"output_dim", o.output_dim}};
        }
      },
      spec.op);
}

EnsembleSpec parse_ensemble(const json& j, const std::string& path) {
  const std::string family = get_string(require(j, "family", path), path + ".family");
  EnsembleSpec spec;
  spec.count = static_cast<std::size_t>(get_unsigned(require(j, "count", path), path + ".count"));
  if (spec.count == 0) throw ConfigError(path + ".count", "must be positive");
  if (family == "band_limited") {
    BandLimited b;
    b.grid = parse_grid(require(j, "grid", path), path + ".grid");
    b.radii = get_numbers(require(j, "radii", path), path + ".radii");
    spec.family = b;
  } else if (family == "sequence_box") {
    spec.family = SequenceBox{get_numbers(require(j, "radii", path), path + ".radii")};
  } else if (family == "matrix_ball") {
    MatrixBall m;
    m.rows = static_cast<std::size_t>(get_unsigned(require(j, "rows", path), path + ".rows"));
    m.cols = static_cast<std::size_t>(get_unsigned(require(j, "cols", path), path + ".cols"));
    m.radius = get_number(require(j, "radius", path), path + ".radius");
    if (m.rows == 0 || m.cols == 0) throw ConfigError(path, "matrix dimensions must be positive");
    if (!(m.radius >= 0.0)) throw ConfigError(path + ".radius", "must be nonnegative");
    spec.family = m;
  } else {
    throw ConfigError(path + ".family", "unknown ensemble family '" + family + "'");
  }
  if (const auto* radii = [&]() -> const std::vector<double>* {
        if (auto* b = std::get_if<BandLimited>(&spec.family)) return &b->radii;
        if (auto* s = std::get_if<SequenceBox>(&spec.family)) return &s->radii;
        return nullptr;
      }()) {
    if (radii->empty()) throw ConfigError(path + ".radii", "parameter family is empty");
    for (double r : *radii) {
      if (!(r >= 0.0) || !std::isfinite(r)) throw ConfigError(path + ".radii", "must be nonnegative");
    }
  }
  return spec;
}

json ensemble_to_json(const EnsembleSpec& spec) {
  json j{{"family", spec.family_name()}, {"count", spec.count}};
  if (const auto* b = std::get_if<BandLimited>(&spec.family)) {
    j["grid"] = grid_to_json(b->grid);
    j["radii"] = b->radii;
  } else if (const auto* s = std::get_if<SequenceBox>(&spec.family)) {
    j["radii"] = s->radii;
  } else {
    const auto& m = std::get<MatrixBall>(spec.family);
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    j["radius"] = m.radius;
  }
  return j;
}

SeminormSpec parse_seminorm(const json& j, const std::string& path) {
  const std::string type = get_string(require(j, "type", path), path + ".type");
  SeminormSpec s;
  if (type == "lq") {
    s.type = SeminormSpec::Type::Lq;
    s.q = opt_number(j, "q", path, 2.0);
    if (!(s.q >= 1.0)) throw ConfigError(path + ".q", "must be >= 1");
  } else if (type == "sup_derivative") {
    s.type = SeminormSpec::Type::SupDerivative;
    s.order = static_cast<int>(opt_unsigned(j, "order", path, 0));
  } else if (type == "schwartz") {
    s.type = SeminormSpec::Type::Schwartz;
    s.alpha = static_cast<int>(opt_unsigned(j, "alpha", path, 0));
    s.beta = static_cast<int>(opt_unsigned(j, "beta", path, 0));
    s.radius = opt_number(j, "radius", path, 8.0);
    if (!(s.radius > 0.0)) throw ConfigError(path + ".radius", "must be positive");
  } else if (type == "dual_pairing") {
    s.type = SeminormSpec::Type::DualPairing;
    if (const json* v = find(j, "values")) s.values = get_numbers(*v, path + ".values");
    s.mode = static_cast<std::size_t>(opt_unsigned(j, "mode", path, 1));
    s.scale = opt_number(j, "scale", path, 1.0);
  } else {
    throw ConfigError(path + ".type", "unknown seminorm type '" + type + "'");
  }
  return s;
}

json seminorm_to_json(const SeminormSpec& s) {
  switch (s.type) {
    case SeminormSpec::Type::Lq: return {{"type", "lq"}, {"q", s.q}};
    case SeminormSpec::Type::SupDerivative: return {{"type", "sup_derivative"}, {"order", s.order}};
    case SeminormSpec::Type::Schwartz:
      return {{"type", "schwartz"}, {"alpha", s.alpha}, {"beta", s.beta}, {"radius", s.radius}};
    case SeminormSpec::Type::DualPairing: {
      json j{{"type", "dual_pairing"}};
      if (!s.values.empty()) {
        j["values"] = s.values;
      } else {
        j["mode"] = s.mode;
        j["scale"] = s.scale;
      }
      return j;
    }
  }
  return {};
}

std::vector<SeminormSpec> parse_seminorm_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array");
  std::vector<SeminormSpec> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_seminorm(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

FitConfig parse_fit(const json& j, const std::string& path) {
  FitConfig cfg;
  const std::string act = find(j, "activation") ? get_string(j["activation"], path + ".activation")
                                                : std::string("tanh");
  std::vector<double> coeffs;
  if (const json* c = find(j, "activation_coefficients")) {
    coeffs = get_numbers(*c, path + ".activation_coefficients");
  }
  try {
    cfg.activation = Activation::from_name(act, coeffs);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ".activation", e.what());
  }
  cfg.width = static_cast<std::size_t>(opt_unsigned(j, "width", path, cfg.width));
  cfg.max_width = static_cast<std::size_t>(opt_unsigned(j, "max_width", path, cfg.max_width));
  if (const json* r = find(j, "threshold_range")) {
    const auto range = get_numbers(*r, path + ".threshold_range");
    if (range.size() != 2 || !(range[0] <= range[1])) {
      throw ConfigError(path + ".threshold_range", "expected [min, max] with min <= max");
    }
    cfg.theta_min = range[0];
    cfg.theta_max = range[1];
  }
  cfg.lambda = opt_number(j, "lambda", path, cfg.lambda);
  cfg.functional_scale = opt_number(j, "functional_scale", path, cfg.functional_scale);
  cfg.functional_modes =
      static_cast<std::size_t>(opt_unsigned(j, "functional_modes", path, cfg.functional_modes));
  return cfg;
}

json fit_to_json(const FitConfig& cfg) {
  json j{{"activation", cfg.activation.name()},
         {"width", cfg.width},
         {"max_width", cfg.max_width},
         {"threshold_range", {cfg.theta_min, cfg.theta_max}},
         {"lambda", cfg.lambda},
         {"functional_scale", cfg.functional_scale},
         {"functional_modes", cfg.functional_modes}};
  if (cfg.activation.kind() == Activation::Kind::Polynomial) {
    j["activation_coefficients"] = cfg.activation.coefficients();
  }
  return j;
}

}  // namespace

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("$", "config must be a JSON object");
  ExperimentConfig c;
  if (const json* n = find(doc, "name")) c.name = get_string(*n, "name");
  c.op = parse_operator(require(doc, "operator", ""), "operator");
  c.ensemble = parse_ensemble(require(doc, "ensemble", ""), "ensemble");
  c.heldout_fraction = opt_number(doc, "heldout_fraction", "", 0.2);

  const json& fam = require(doc, "seminorm_family", "");
  if (const json* n = find(fam, "name")) c.family_name = get_string(*n, "seminorm_family.name");
  c.seminorms = parse_seminorm_list(require(fam, "members", "seminorm_family"),
                                    "seminorm_family.members");
  c.target_seminorm = static_cast<std::size_t>(opt_unsigned(doc, "target_seminorm", "", 0));

  c.epsilons = get_numbers(require(doc, "epsilons", ""), "epsilons");
  if (const json* f = find(doc, "fit")) c.fit = parse_fit(*f, "fit");
  if (const json* d = find(doc, "duals")) c.duals = parse_seminorm_list(*d, "duals");
  c.seed = opt_unsigned(doc, "seed", "", 0);
  if (const json* out = find(doc, "output")) {
    if (const json* dir = find(*out, "dir")) c.output_dir = get_string(*dir, "output.dir");
    if (const json* w = find(*out, "write_networks")) {
      if (!w->is_boolean()) throw ConfigError("output.write_networks", "expected a boolean");
      c.write_networks = w->get<bool>();
    }
  }
  validate_config(c);
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json members = json::array();
  for (const auto& s : c.seminorms) members.push_back(seminorm_to_json(s));
  json duals = json::array();
  for (const auto& s : c.duals) duals.push_back(seminorm_to_json(s));
  return json{{"name", c.name},
              {"operator", operator_to_json(c.op)},
              {"ensemble", ensemble_to_json(c.ensemble)},
              {"heldout_fraction", c.heldout_fraction},
              {"seminorm_family", {{"name", c.family_name}, {"members", members}}},
              {"target_seminorm", c.target_seminorm},
              {"epsilons", c.epsilons},
              {"fit", fit_to_json(c.fit)},
              {"duals", duals},
              {"seed", c.seed},
              {"output", {{"dir", c.output_dir}, {"write_networks", c.write_networks}}}};
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", "config " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(doc);
}

void validate_config(const ExperimentConfig& c) {
  if (c.epsilons.empty()) throw ConfigError("epsilons", "at least one epsilon is required");
  for (std::size_t i = 0; i < c.epsilons.size(); ++i) {
    if (!(c.epsilons[i] > 0.0) || !std::isfinite(c.epsilons[i])) {
      throw ConfigError("epsilons[" + std::to_string(i) + "]", "must be positive");
    }
  }
  if (!(c.heldout_fraction >= 0.0 && c.heldout_fraction < 1.0)) {
    throw ConfigError("heldout_fraction", "must lie in [0, 1)");
  }
  if (c.seminorms.empty()) throw ConfigError("seminorm_family.members", "family is empty");
  if (c.target_seminorm >= c.seminorms.size()) {
    throw ConfigError("target_seminorm", "index outside the seminorm family");
  }
  if (c.fit.width == 0) throw ConfigError("fit.width", "must be positive");
  if (c.fit.max_width < c.fit.width) throw ConfigError("fit.max_width", "must be >= fit.width");
  if (!(c.fit.lambda >= 0.0)) throw ConfigError("fit.lambda", "must be nonnegative");
  if (!(c.fit.functional_scale >= 0.0)) throw ConfigError("fit.functional_scale", "must be nonnegative");
  if (c.fit.functional_modes == 0) throw ConfigError("fit.functional_modes", "must be positive");
  if (c.ensemble.count == 0) throw ConfigError("ensemble.count", "must be positive");
  const auto heldout =
      static_cast<std::size_t>(std::floor(c.heldout_fraction * static_cast<double>(c.ensemble.count)));
  if (heldout >= c.ensemble.count) throw ConfigError("heldout_fraction", "leaves no training samples");

  // Shape checks: the operator must accept the ensemble and every seminorm
  // must apply to the operator's output.
  const TargetShape out = c.op.output_shape(c.ensemble.shape());
  auto check = [&](const SeminormSpec& s, const std::string& path) {
    try {
      const Seminorm rho = s.materialize(out);
      if (!out.grid && (s.type == SeminormSpec::Type::Schwartz ||
                        (s.type == SeminormSpec::Type::SupDerivative && s.order > 0))) {
        throw ShapeError("needs a grid-function output");
      }
      if (out.grid && s.type == SeminormSpec::Type::SupDerivative &&
          out.grid->n < static_cast<std::size_t>(s.order) + 1) {
        throw ShapeError("derivative order exceeds grid resolution");
      }
      (void)rho;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path, e.what());
    }
  };
  for (std::size_t i = 0; i < c.seminorms.size(); ++i) {
    check(c.seminorms[i], "seminorm_family.members[" + std::to_string(i) + "]");
  }
  for (std::size_t i = 0; i < c.duals.size(); ++i) {
    if (c.duals[i].type != SeminormSpec::Type::DualPairing) {
      throw ConfigError("duals[" + std::to_string(i) + "]", "must be a dual_pairing seminorm");
    }
    check(c.duals[i], "duals[" + std::to_string(i) + "]");
  }
}

// ---------------------------------------------------------------------------

ExperimentReport run_experiment(const ExperimentConfig& config, std::size_t threads) {
  validate_config(config);

  const CompactEnsemble ensemble = sample_ensemble(config.ensemble, derive_seed(config.seed, 1));
  const std::size_t total = ensemble.size();
  const auto heldout = static_cast<std::size_t>(
      std::floor(config.heldout_fraction * static_cast<double>(total)));
  const std::size_t train = total - heldout;

  const TargetShape out_shape = config.op.output_shape(config.ensemble.shape());
  std::vector<TargetElement> f_values;
  f_values.reserve(total);
  for (const auto& s : ensemble.samples) f_values.push_back(config.op(s));

  std::vector<Seminorm> members;
  for (const auto& s : config.seminorms) members.push_back(s.materialize(out_shape));
  const SeminormFamily family = SeminormFamily::make(config.family_name, members);
  std::vector<Seminorm> duals;
  for (const auto& s : config.duals) duals.push_back(s.materialize(out_shape));

  const std::span<const InputPoint> all_samples(ensemble.samples);
  const std::span<const TargetElement> all_values(f_values);
  const auto train_samples = all_samples.first(train);
  const auto train_values = all_values.first(train);
  const auto held_samples = all_samples.subspan(train);
  const auto held_values = all_values.subspan(train);

  ExperimentReport report;
  report.name = config.name;
  report.seed = config.seed;
  report.operator_name = config.op.name();
  report.ensemble_family = config.ensemble.family_name();
  report.train_count = train;
  report.heldout_count = heldout;
  report.family_name = family.name;
  for (const auto& m : family.members) report.seminorms.push_back(m.name());
  report.target_seminorm = config.target_seminorm;
  for (std::size_t i = 0; i < duals.size(); ++i) report.duals.push_back("dual_" + std::to_string(i));
  report.activation = config.fit.activation.name();
  report.activation_satisfies_hypothesis = config.fit.activation.satisfies_hypothesis();
  report.negative_control = config.fit.activation.negative_control();
  if (config.fit.activation.kind() == Activation::Kind::Relu) {
    report.warnings.push_back(
        "relu is piecewise linear, hence polynomial on open intervals; results are outside the "
        "non-polynomial hypothesis");
  }
  if (report.negative_control) {
    report.warnings.push_back("polynomial activation: negative-control run, convergence not expected");
  }

  FitConfig fit = config.fit;
  fit.seed = derive_seed(config.seed, 2);
  fit.threads = std::max<std::size_t>(1, threads);

  for (const double eps : config.epsilons) {
    const auto start = std::chrono::steady_clock::now();
    Assembly result = assemble_vector_network(train_values, train_samples, family,
                                              config.target_seminorm, eps, fit);
    RunRecord run;
    run.epsilon = eps;
    run.budget = result.budget;
    run.assembly = result.report;
    run.neurons = result.network.size();
    run.train_errors = uniform_error(train_values, result.network, train_samples, family);
    if (heldout > 0) {
      run.heldout_errors = uniform_error(held_values, result.network, held_samples, family);
    }
    if (!duals.empty()) {
      run.dual_train_errors = dual_uniform_error(train_values, result.network, train_samples, duals);
      if (heldout > 0) {
        run.dual_heldout_errors =
            dual_uniform_error(held_values, result.network, held_samples, duals);
      }
    }
    run.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                      .count();
    std::size_t deficient = 0;
    for (const auto& f : run.assembly.fits) deficient += f.rank_deficient ? 1 : 0;
    if (deficient > 0) {
      report.warnings.push_back("epsilon " + format_double(eps) + ": " + std::to_string(deficient) +
                                " rank-deficient scalar fits with lambda = 0");
    }
    if (!run.assembly.converged) {
      report.warnings.push_back("epsilon " + format_double(eps) +
                                ": scalar stage did not reach delta at max_width");
    }
    run.network = std::move(result.network);
    report.runs.push_back(std::move(run));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Report documents

json report_to_json(const ExperimentReport& r, bool include_timing) {
  json runs = json::array();
  for (const RunRecord& run : r.runs) {
    json fits = json::array();
    for (const auto& f : run.assembly.fits) {
      fits.push_back({{"width", f.width},
                      {"sup_error", f.sup_error},
                      {"met", f.met},
                      {"rank_deficient", f.rank_deficient}});
    }
    json entry{
        {"epsilon", run.epsilon},
        {"budget",
         {{"epsilon", run.budget.epsilon},
          {"stage1", run.budget.stage1},
          {"m", run.budget.m},
          {"C", run.budget.C},
          {"delta", run.budget.delta},
          {"degenerate", run.budget.degenerate}}},
        {"assembly",
         {{"center_indices", run.assembly.center_indices},
          {"stage1_error", run.assembly.stage1_error},
          {"stage1_bound", run.assembly.stage1_bound},
          {"fits", fits},
          {"budget_bound", run.assembly.budget_bound},
          {"train_error", run.assembly.train_error},
          {"max_width", run.assembly.max_width},
          {"converged", run.assembly.converged}}},
        {"neurons", run.neurons},
        {"train_errors", run.train_errors},
        {"heldout_errors", run.heldout_errors},
        {"dual_train_errors", run.dual_train_errors},
        {"dual_heldout_errors", run.dual_heldout_errors},
    };
    if (include_timing) entry["wall_ms"] = run.wall_ms;
    runs.push_back(std::move(entry));
  }
  return json{{"name", r.name},
              {"seed", r.seed},
              {"operator", r.operator_name},
              {"ensemble_family", r.ensemble_family},
              {"train_count", r.train_count},
              {"heldout_count", r.heldout_count},
              {"seminorm_family", r.family_name},
              {"seminorms", r.seminorms},
              {"target_seminorm", r.target_seminorm},
              {"duals", r.duals},
              {"activation", r.activation},
              {"activation_satisfies_hypothesis", r.activation_satisfies_hypothesis},
              {"negative_control", r.negative_control},
              {"warnings", r.warnings},
              {"runs", runs}};
}

ExperimentReport report_from_json(const json& doc) {
  auto fail = [](const std::string& field, const std::string& what) -> DocumentError {
    return DocumentError(DocumentError::Kind::Malformed, field, field + ": " + what);
  };
  try {
    ExperimentReport r;
    r.name = doc.at("name").get<std::string>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.operator_name = doc.at("operator").get<std::string>();
    r.ensemble_family = doc.at("ensemble_family").get<std::string>();
    r.train_count = doc.at("train_count").get<std::size_t>();
    r.heldout_count = doc.at("heldout_count").get<std::size_t>();
    r.family_name = doc.at("seminorm_family").get<std::string>();
    r.seminorms = doc.at("seminorms").get<std::vector<std::string>>();
    r.target_seminorm = doc.at("target_seminorm").get<std::size_t>();
    r.duals = doc.at("duals").get<std::vector<std::string>>();
    r.activation = doc.at("activation").get<std::string>();
    r.activation_satisfies_hypothesis = doc.at("activation_satisfies_hypothesis").get<bool>();
    r.negative_control = doc.at("negative_control").get<bool>();
    r.warnings = doc.at("warnings").get<std::vector<std::string>>();
    for (const json& e : doc.at("runs")) {
      RunRecord run;
      run.epsilon = e.at("epsilon").get<double>();
      const json& b = e.at("budget");
      run.budget.epsilon = b.at("epsilon").get<double>();
      run.budget.stage1 = b.at("stage1").get<double>();
      run.budget.m = b.at("m").get<std::size_t>();
      run.budget.C = b.at("C").get<double>();
      run.budget.delta = b.at("delta").get<double>();
      run.budget.degenerate = b.at("degenerate").get<bool>();
      const json& a = e.at("assembly");
      run.assembly.center_indices = a.at("center_indices").get<std::vector<std::size_t>>();
      run.assembly.stage1_error = a.at("stage1_error").get<double>();
      run.assembly.stage1_bound = a.at("stage1_bound").get<double>();
      for (const json& f : a.at("fits")) {
        run.assembly.fits.push_back({f.at("width").get<std::size_t>(), f.at("sup_error").get<double>(),
                                     f.at("met").get<bool>(), f.at("rank_deficient").get<bool>()});
      }
      run.assembly.budget_bound = a.at("budget_bound").get<double>();
      run.assembly.train_error = a.at("train_error").get<double>();
      run.assembly.max_width = a.at("max_width").get<std::size_t>();
      run.assembly.converged = a.at("converged").get<bool>();
      run.neurons = e.at("neurons").get<std::size_t>();
      run.train_errors = e.at("train_errors").get<std::vector<double>>();
      run.heldout_errors = e.at("heldout_errors").get<std::vector<double>>();
      run.dual_train_errors = e.at("dual_train_errors").get<std::vector<double>>();
      run.dual_heldout_errors = e.at("dual_heldout_errors").get<std::vector<double>>();
      if (auto it = e.find("wall_ms"); it != e.end()) run.wall_ms = it->get<double>();
      r.runs.push_back(std::move(run));
    }
    return r;
  } catch (const json::exception& e) {
    throw fail("$", std::string("invalid report document: ") + e.what());
  }
}

void write_csv(const ExperimentReport& r, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const RunRecord& run : r.runs) {
    for (std::size_t k = 0; k < r.seminorms.size(); ++k) {
      const double held = k < run.heldout_errors.size() ? run.heldout_errors[k]
                                                        : std::numeric_limits<double>::quiet_NaN();
      out << format_double(run.epsilon) << ',' << r.seminorms[k] << ',' << run.budget.m << ','
          << format_double(run.budget.C) << ',' << format_double(run.budget.delta) << ','
          << run.assembly.max_width << ',' << (run.assembly.converged ? "true" : "false") << ','
          << format_double(run.train_errors.at(k)) << ',' << format_double(held) << ','
          << format_double(run.wall_ms) << '\n';
    }
  }
}

EmittedFiles emit_report(const ExperimentReport& report, const std::filesystem::path& dir,
                         bool write_networks) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + path.string());
  };

  EmittedFiles files;
  files.csv = dir / "report.csv";
  std::ostringstream csv;
  write_csv(report, csv);
  write(files.csv, csv.str());

  files.json = dir / "report.json";
  write(files.json, report_to_json(report).dump(2) + "\n");

  if (write_networks) {
    for (std::size_t k = 0; k < report.runs.size(); ++k) {
      if (!report.runs[k].network) continue;
      auto path = dir / ("network_" + std::to_string(k) + ".json");
      write(path, serialize_network(*report.runs[k].network).dump() + "\n");
      files.networks.push_back(std::move(path));
    }
  }
  return files;
}

}  // namespace lcnet
