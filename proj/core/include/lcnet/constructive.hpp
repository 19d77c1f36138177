#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "lcnet/input_space.hpp"
#include "lcnet/network.hpp"
#include "lcnet/target_space.hpp"

namespace lcnet {

// ---------------------------------------------------------------------------
// Finite-rank stage: epsilon-net of the operator image and a partition of
// unity subordinate to the balls around its centers.

struct EpsilonNet {
  std::vector<TargetElement> centers;
  /// Position of each center in the value list it was built from.
  std::vector<std::size_t> center_indices;
  double epsilon = 0.0;
  std::size_t seminorm_index = 0;

  std::size_t size() const { return centers.size(); }
};

/// Greedy scan in input order: a value becomes a center iff its distance to
/// every existing center is >= epsilon. Every value ends up strictly within
/// epsilon of a center and centers are pairwise >= epsilon apart.
EpsilonNet build_epsilon_net(std::span<const TargetElement> values, const Seminorm& rho,
                             double epsilon, std::size_t seminorm_index = 0);

/// weights(i, j) = psi_j(s_i); distances(i, j) = rho(F(s_i) - v_j).
struct PartitionOfUnity {
  Eigen::MatrixXd weights;
  Eigen::MatrixXd distances;
  double epsilon = 0.0;
  std::size_t seminorm_index = 0;

  std::size_t samples() const { return static_cast<std::size_t>(weights.rows()); }
  std::size_t centers() const { return static_cast<std::size_t>(weights.cols()); }
};

/// Normalized hats psi_j = max(0, 1 - d_ij / eps) / sum_k max(0, 1 - d_ik / eps).
/// Throws std::domain_error naming the first sample no center covers.
PartitionOfUnity build_partition(std::span<const TargetElement> values, const EpsilonNet& net,
                                 const Seminorm& rho);

/// sum_j psi_j(s_i) v_j.
TargetElement finite_rank_apply(const PartitionOfUnity& pou, const EpsilonNet& net,
                                std::size_t sample_index);

// ---------------------------------------------------------------------------
// Scalar stage: random ridge features with a least-squares readout.

struct RidgeFeature {
  LinearFunctional functional = LinearFunctional::zero();
  double theta = 0.0;
};

/// s -> sum_k weights[k] * eta(l_k(s) - theta_k).
struct ScalarRidgeNet {
  Activation activation = Activation::tanh();
  std::vector<RidgeFeature> features;
  std::vector<double> weights;
  /// Index of the constant feature (functional Zero), if any.
  std::optional<std::size_t> bias_index;
  /// max_i |net(s_i) - y_i| over the fitted samples.
  double train_sup_error = 0.0;
  bool rank_deficient = false;

  double operator()(const InputPoint& s) const;
};

struct FitConfig {
  std::size_t width = 50;
  std::size_t max_width = 400;
  Activation activation = Activation::tanh();
  double functional_scale = 1.0;
  std::size_t functional_modes = 7;
  double theta_min = -2.0;
  double theta_max = 2.0;
  double lambda = 1e-10;
  std::uint64_t seed = 0;
  /// Worker threads for independent per-coefficient fits.
  std::size_t threads = 1;
};

/// Threshold of the bias feature; eta(-kBiasTheta) must be nonzero.
inline constexpr double kBiasTheta = -1.0;

/// Draws cfg.width random features (nested: a wider fit with the same seed
/// extends the narrower one) plus the bias feature, then solves the ridge
/// problem. Throws std::invalid_argument on width 0 or a target count that
/// differs from the sample count.
ScalarRidgeNet fit_scalar_ridge(std::span<const InputPoint> inputs, std::span<const double> targets,
                                const FitConfig& cfg);

/// Same readout over caller-supplied features (no bias is added).
ScalarRidgeNet fit_ridge_features(std::span<const InputPoint> inputs,
                                  std::span<const double> targets, const Activation& activation,
                                  std::vector<RidgeFeature> features, double lambda);

// ---------------------------------------------------------------------------
// Assembly with the eps/2 + eps/(2 m C) budget.

struct ErrorBudget {
  double epsilon = 0.0;
  /// eps / 2, the finite-rank target.
  double stage1 = 0.0;
  std::size_t m = 0;
  /// max_j rho(v_j).
  double C = 0.0;
  /// eps / (2 m C) when C > 0, otherwise 0.
  double delta = 0.0;
  /// C == 0: the empty network is returned.
  bool degenerate = false;
};

struct CoefficientFit {
  std::size_t width = 0;
  double sup_error = 0.0;
  bool met = false;
  bool rank_deficient = false;
};

struct AssemblyReport {
  std::vector<std::size_t> center_indices;
  /// max_i rho(F(s_i) - sum_j psi_j(s_i) v_j).
  double stage1_error = 0.0;
  /// max_i sum_j psi_j(s_i) rho(F(s_i) - v_j).
  double stage1_bound = 0.0;
  std::vector<CoefficientFit> fits;
  /// stage1_error + sum_j fits[j].sup_error * rho(v_j).
  double budget_bound = 0.0;
  /// max_i rho(F(s_i) - G(s_i)) for the assembled network.
  double train_error = 0.0;
  std::size_t max_width = 0;
  bool converged = false;
};

struct Assembly {
  ShallowVectorNetwork network;
  ErrorBudget budget;
  AssemblyReport report;
};

/// Builds G with sup_i rho(F(s_i) - G(s_i)) < eps whenever every scalar fit
/// meets delta (report.converged). Widths double from cfg.width up to
/// cfg.max_width; a fit that never meets delta leaves converged = false.
Assembly assemble_vector_network(std::span<const TargetElement> f_values,
                                 std::span<const InputPoint> samples, const SeminormFamily& family,
                                 std::size_t rho_index, double epsilon, const FitConfig& cfg);

/// Per family member, max_i rho(F(s_i) - net(s_i)).
std::vector<double> uniform_error(std::span<const TargetElement> f_values,
                                  const ShallowVectorNetwork& net,
                                  std::span<const InputPoint> samples,
                                  const SeminormFamily& family);

/// Per dual seminorm t', max_i |<t', F(s_i) - net(s_i)>|. Every entry must be
/// a DualPairing seminorm.
std::vector<double> dual_uniform_error(std::span<const TargetElement> f_values,
                                       const ShallowVectorNetwork& net,
                                       std::span<const InputPoint> samples,
                                       std::span<const Seminorm> duals);

}  // namespace lcnet
