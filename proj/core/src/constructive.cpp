#include "lcnet/constructive.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "lcnet/errors.hpp"
#include "lcnet/least_squares.hpp"

namespace lcnet {

EpsilonNet build_epsilon_net(std::span<const TargetElement> values, const Seminorm& rho,
                             double epsilon, std::size_t seminorm_index) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (values.empty()) throw std::invalid_argument("epsilon-net needs at least one value");
  for (std::size_t i = 1; i < values.size(); ++i) require_compatible(values[0], values[i]);

  EpsilonNet net;
  net.epsilon = epsilon;
  net.seminorm_index = seminorm_index;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const bool covered = std::any_of(net.centers.begin(), net.centers.end(),
                                     [&](const TargetElement& c) { return rho(values[i] - c) < epsilon; });
    if (!covered) {
      net.centers.push_back(values[i]);
      net.center_indices.push_back(i);
    }
  }
  return net;
}

PartitionOfUnity build_partition(std::span<const TargetElement> values, const EpsilonNet& net,
                                 const Seminorm& rho) {
  if (net.centers.empty()) throw std::invalid_argument("partition needs a nonempty epsilon-net");
  const auto n = static_cast<Eigen::Index>(values.size());
  const auto m = static_cast<Eigen::Index>(net.size());
  PartitionOfUnity pou;
  pou.epsilon = net.epsilon;
  pou.seminorm_index = net.seminorm_index;
  pou.weights = Eigen::MatrixXd::Zero(n, m);
  pou.distances = Eigen::MatrixXd::Zero(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      const double d = rho(values[static_cast<std::size_t>(i)] - net.centers[static_cast<std::size_t>(j)]);
      pou.distances(i, j) = d;
      const double hat = std::max(0.0, 1.0 - d / net.epsilon);
      pou.weights(i, j) = hat;
      total += hat;
    }
    if (!(total > 0.0)) {
      throw std::domain_error("sample " + std::to_string(i) +
                              " is not covered by any center of the epsilon-net");
    }
    pou.weights.row(i) /= total;
  }
  return pou;
}

TargetElement finite_rank_apply(const PartitionOfUnity& pou, const EpsilonNet& net,
                                std::size_t sample_index) {
  if (sample_index >= pou.samples()) {
    throw std::out_of_range("sample index " + std::to_string(sample_index) + " out of range (" +
                            std::to_string(pou.samples()) + " samples)");
  }
  if (pou.centers() != net.size()) {
    throw ShapeError("partition and epsilon-net disagree on the number of centers");
  }
  TargetElement out = TargetElement::zeros(net.centers.front().shape());
  const auto i = static_cast<Eigen::Index>(sample_index);
  for (std::size_t j = 0; j < net.size(); ++j) {
    const double w = pou.weights(i, static_cast<Eigen::Index>(j));
    if (w != 0.0) out.add_scaled(w, net.centers[j]);
  }
  return out;
}

// ---------------------------------------------------------------------------

double ScalarRidgeNet::operator()(const InputPoint& s) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < features.size(); ++k) {
    acc += weights[k] * activation(apply_functional(features[k].functional, s) - features[k].theta);
  }
  return acc;
}

namespace {

void check_fit_inputs(std::span<const InputPoint> inputs, std::span<const double> targets) {
  if (inputs.empty()) throw std::invalid_argument("scalar fit needs at least one sample");
  if (inputs.size() != targets.size()) {
    throw std::invalid_argument("scalar fit got " + std::to_string(targets.size()) +
                                " targets for " + std::to_string(inputs.size()) + " samples");
  }
  for (std::size_t i = 1; i < inputs.size(); ++i) {
    if (inputs[i].shape() != inputs[0].shape()) {
      throw ShapeError("scalar fit samples differ in shape (sample " + std::to_string(i) + ")");
    }
  }
  for (double y : targets) {
    if (!std::isfinite(y)) throw std::invalid_argument("scalar fit targets must be finite");
  }
}

// Random features plus their values l_k(s_i) on the training samples.
// Feature 0 is the bias; feature k >= 1 is seeded by (seed, k) alone, so
// growing the bank never changes existing features.
class FeatureBank {
 public:
  FeatureBank(std::span<const InputPoint> inputs, const FitConfig& cfg, std::uint64_t seed)
      : inputs_(inputs), cfg_(cfg), seed_(seed) {
    features_.push_back({LinearFunctional::zero(), kBiasTheta});
    projections_.emplace_back(inputs.size(), 0.0);
  }

  void grow(std::size_t width) {
    const FunctionalSpec spec{inputs_[0].shape(), cfg_.functional_scale, cfg_.functional_modes};
    while (features_.size() < width + 1) {
      const std::uint64_t k = features_.size();
      const std::uint64_t feature_seed = derive_seed(seed_, k);
      std::mt19937_64 rng(derive_seed(feature_seed, 0x7468657461ULL));
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      const double theta = cfg_.theta_min + (cfg_.theta_max - cfg_.theta_min) * unit(rng);
      RidgeFeature f{random_functional(spec, feature_seed), theta};
      std::vector<double> proj(inputs_.size());
      for (std::size_t i = 0; i < inputs_.size(); ++i) proj[i] = apply_functional(f.functional, inputs_[i]);
      features_.push_back(std::move(f));
      projections_.push_back(std::move(proj));
    }
  }

  Eigen::MatrixXd design(std::size_t width) const {
    const auto n = static_cast<Eigen::Index>(inputs_.size());
    Eigen::MatrixXd a(n, static_cast<Eigen::Index>(width + 1));
    for (std::size_t k = 0; k <= width; ++k) {
      for (Eigen::Index i = 0; i < n; ++i) {
        a(i, static_cast<Eigen::Index>(k)) =
            cfg_.activation(projections_[k][static_cast<std::size_t>(i)] - features_[k].theta);
      }
    }
    return a;
  }

  std::vector<RidgeFeature> features(std::size_t width) const {
    return {features_.begin(), features_.begin() + static_cast<std::ptrdiff_t>(width + 1)};
  }

 private:
  std::span<const InputPoint> inputs_;
  FitConfig cfg_;
  std::uint64_t seed_;
  std::vector<RidgeFeature> features_;
  std::vector<std::vector<double>> projections_;
};

ScalarRidgeNet solve_readout(const Eigen::MatrixXd& design, std::span<const double> targets,
                             const Activation& activation, std::vector<RidgeFeature> features,
                             double lambda) {
  const Eigen::VectorXd y =
      Eigen::Map<const Eigen::VectorXd>(targets.data(), static_cast<Eigen::Index>(targets.size()));
  const LeastSquaresResult ls = least_squares_solve(design, y, lambda);
  const Eigen::VectorXd residual = design * ls.coefficients - y;

  ScalarRidgeNet net;
  net.activation = activation;
  net.features = std::move(features);
  net.weights.assign(ls.coefficients.data(), ls.coefficients.data() + ls.coefficients.size());
  net.train_sup_error = residual.size() ? residual.cwiseAbs().maxCoeff() : 0.0;
  net.rank_deficient = lambda == 0.0 && ls.rank_deficient;
  for (std::size_t k = 0; k < net.features.size(); ++k) {
    if (net.features[k].functional.kind() == FunctionalKind::Zero) {
      net.bias_index = k;
      break;
    }
  }
  return net;
}

void check_config(const FitConfig& cfg) {
  if (cfg.width < 1) throw std::invalid_argument("fit width must be at least 1");
  if (!(cfg.theta_min <= cfg.theta_max) || !std::isfinite(cfg.theta_min) ||
      !std::isfinite(cfg.theta_max)) {
    throw std::invalid_argument("threshold range must be finite with min <= max");
  }
}

}  // namespace

ScalarRidgeNet fit_scalar_ridge(std::span<const InputPoint> inputs, std::span<const double> targets,
                                const FitConfig& cfg) {
  check_config(cfg);
  check_fit_inputs(inputs, targets);
  FeatureBank bank(inputs, cfg, cfg.seed);
  bank.grow(cfg.width);
  return solve_readout(bank.design(cfg.width), targets, cfg.activation, bank.features(cfg.width),
                       cfg.lambda);
}

ScalarRidgeNet fit_ridge_features(std::span<const InputPoint> inputs,
                                  std::span<const double> targets, const Activation& activation,
                                  std::vector<RidgeFeature> features, double lambda) {
  check_fit_inputs(inputs, targets);
  if (features.empty()) throw std::invalid_argument("fit needs at least one feature");
  const auto n = static_cast<Eigen::Index>(inputs.size());
  Eigen::MatrixXd a(n, static_cast<Eigen::Index>(features.size()));
  for (std::size_t k = 0; k < features.size(); ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      a(i, static_cast<Eigen::Index>(k)) = activation(
          apply_functional(features[k].functional, inputs[static_cast<std::size_t>(i)]) -
          features[k].theta);
    }
  }
  return solve_readout(a, targets, activation, std::move(features), lambda);
}

// ---------------------------------------------------------------------------

namespace {

template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

Assembly assemble_vector_network(std::span<const TargetElement> f_values,
                                 std::span<const InputPoint> samples, const SeminormFamily& family,
                                 std::size_t rho_index, double epsilon, const FitConfig& cfg) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (f_values.size() != samples.size()) {
    throw ShapeError("operator values and samples differ in count");
  }
  if (samples.empty()) throw std::invalid_argument("assembly needs at least one sample");
  if (rho_index >= family.size()) throw std::out_of_range("target seminorm index out of range");
  check_config(cfg);
  if (cfg.max_width < cfg.width) throw std::invalid_argument("max_width must be >= width");

  const Seminorm& rho = family[rho_index];
  const InputShape input_shape = samples[0].shape();
  const TargetShape output_shape = f_values[0].shape();

  // Stage 1: finite-rank approximant within eps / 2.
  const EpsilonNet net = build_epsilon_net(f_values, rho, epsilon / 2.0, rho_index);
  const PartitionOfUnity pou = build_partition(f_values, net, rho);

  ErrorBudget budget;
  budget.epsilon = epsilon;
  budget.stage1 = epsilon / 2.0;
  budget.m = net.size();

  AssemblyReport report;
  report.center_indices = net.center_indices;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const TargetElement g = finite_rank_apply(pou, net, i);
    report.stage1_error = std::max(report.stage1_error, rho(f_values[i] - g));
    const auto row = static_cast<Eigen::Index>(i);
    report.stage1_bound =
        std::max(report.stage1_bound, pou.weights.row(row).dot(pou.distances.row(row)));
  }

  std::vector<double> center_norms(net.size());
  for (std::size_t j = 0; j < net.size(); ++j) {
    center_norms[j] = rho(net.centers[j]);
    budget.C = std::max(budget.C, center_norms[j]);
  }

  if (budget.C == 0.0) {
    budget.degenerate = true;
    double sup_f = 0.0;
    for (const auto& f : f_values) sup_f = std::max(sup_f, rho(f));
    if (!(sup_f < epsilon / 2.0)) {
      throw std::logic_error("all centers have zero seminorm but sup rho(F) >= eps/2");
    }
    report.train_error = sup_f;
    report.budget_bound = report.stage1_error;
    report.converged = true;
    return {ShallowVectorNetwork(cfg.activation, input_shape, output_shape), budget, report};
  }

  // Stage 2: one scalar ridge net per partition function, within delta.
  budget.delta = epsilon / (2.0 * static_cast<double>(budget.m) * budget.C);
  std::vector<ScalarRidgeNet> scalar(net.size());
  report.fits.resize(net.size());
  parallel_for(net.size(), cfg.threads, [&](std::size_t j) {
    std::vector<double> targets(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      targets[i] = pou.weights(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    FeatureBank bank(samples, cfg, derive_seed(cfg.seed, j));
    std::size_t width = cfg.width;
    for (;;) {
      bank.grow(width);
      scalar[j] = solve_readout(bank.design(width), targets, cfg.activation, bank.features(width),
                                cfg.lambda);
      const bool met = scalar[j].train_sup_error < budget.delta;
      report.fits[j] = {width, scalar[j].train_sup_error, met, scalar[j].rank_deficient};
      if (met || width >= cfg.max_width) break;
      width = std::min(width * 2, cfg.max_width);
    }
  });

  std::vector<Neuron> neurons;
  report.converged = true;
  report.budget_bound = report.stage1_error;
  for (std::size_t j = 0; j < net.size(); ++j) {
    const CoefficientFit& fit = report.fits[j];
    report.converged = report.converged && fit.met;
    report.max_width = std::max(report.max_width, fit.width);
    report.budget_bound += fit.sup_error * center_norms[j];
    for (std::size_t k = 0; k < scalar[j].features.size(); ++k) {
      neurons.push_back(Neuron{scalar[j].features[k].functional, scalar[j].features[k].theta,
                               scalar[j].weights[k] * net.centers[j]});
    }
  }
  ShallowVectorNetwork network(cfg.activation, input_shape, output_shape, std::move(neurons));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    report.train_error = std::max(report.train_error, rho(f_values[i] - network(samples[i])));
  }
  return {std::move(network), budget, report};
}

std::vector<double> uniform_error(std::span<const TargetElement> f_values,
                                  const ShallowVectorNetwork& net,
                                  std::span<const InputPoint> samples,
                                  const SeminormFamily& family) {
  if (f_values.size() != samples.size()) {
    throw ShapeError("operator values and samples differ in count");
  }
  std::vector<TargetElement> diffs;
  diffs.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) diffs.push_back(f_values[i] - net(samples[i]));
  return family_sup_error(family, diffs);
}

std::vector<double> dual_uniform_error(std::span<const TargetElement> f_values,
                                       const ShallowVectorNetwork& net,
                                       std::span<const InputPoint> samples,
                                       std::span<const Seminorm> duals) {
  for (const auto& d : duals) {
    if (!d.is_dual()) throw std::invalid_argument("dual_uniform_error needs dual-pairing seminorms");
  }
  if (duals.empty()) return {};
  return uniform_error(f_values, net, samples,
                       SeminormFamily::make("duals", {duals.begin(), duals.end()}));
}

}  // namespace lcnet
