#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lcnet/constructive.hpp"
#include "lcnet/operators.hpp"

namespace lcnet {

/// Seminorm description from a config file; materialized once the output
/// shape of the operator is known.
///
///   {"type": "lq", "q": 2}
///   {"type": "sup_derivative", "order": 1}
///   {"type": "schwartz", "alpha": 1, "beta": 0, "radius": 8}
///   {"type": "dual_pairing", "values": [...]}           explicit test vector
///   {"type": "dual_pairing", "mode": k, "scale": c}     c sin(k pi t) on grids,
///                                                       c e_k on coefficient vectors
struct SeminormSpec {
  enum class Type { Lq, SupDerivative, Schwartz, DualPairing };
  Type type = Type::Lq;
  double q = 2.0;
  int order = 0;
  int alpha = 0;
  int beta = 0;
  double radius = 8.0;
  std::vector<double> values;
  std::size_t mode = 1;
  double scale = 1.0;

  Seminorm materialize(const TargetShape& shape) const;
};

struct ExperimentConfig {
  std::string name = "experiment";
  OperatorSpec op;
  EnsembleSpec ensemble;
  double heldout_fraction = 0.2;
  std::string family_name = "family";
  std::vector<SeminormSpec> seminorms;
  std::size_t target_seminorm = 0;
  std::vector<double> epsilons;
  FitConfig fit;
  std::vector<SeminormSpec> duals;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  bool write_networks = false;
};

/// Throws ConfigError naming the first invalid field.
ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Throws ConfigError for invalid values (nonpositive epsilon, held-out
/// fraction outside [0, 1), zero widths, ...) and ShapeError when the
/// operator does not accept the ensemble's samples.
void validate_config(const ExperimentConfig& config);

struct RunRecord {
  double epsilon = 0.0;
  ErrorBudget budget;
  AssemblyReport assembly;
  std::size_t neurons = 0;
  /// Per family member.
  std::vector<double> train_errors;
  /// Per family member; empty when there is no held-out split.
  std::vector<double> heldout_errors;
  std::vector<double> dual_train_errors;
  std::vector<double> dual_heldout_errors;
  double wall_ms = 0.0;
  std::optional<ShallowVectorNetwork> network;
};

struct ExperimentReport {
  std::string name;
  std::uint64_t seed = 0;
  std::string operator_name;
  std::string ensemble_family;
  std::size_t train_count = 0;
  std::size_t heldout_count = 0;
  std::string family_name;
  std::vector<std::string> seminorms;
  std::size_t target_seminorm = 0;
  std::vector<std::string> duals;
  std::string activation;
  bool activation_satisfies_hypothesis = true;
  bool negative_control = false;
  std::vector<std::string> warnings;
  std::vector<RunRecord> runs;
};

/// One pipeline run per epsilon on the training split, with train and
/// held-out errors for every seminorm and dual. Deterministic in
/// (config, config.seed) for any thread count.
ExperimentReport run_experiment(const ExperimentConfig& config, std::size_t threads = 1);

/// Full report document. Timing fields (wall_ms) are omitted when
/// include_timing is false, which makes reports of identical runs equal.
nlohmann::json report_to_json(const ExperimentReport& report, bool include_timing = true);
/// Inverse of report_to_json (networks are not part of the document).
ExperimentReport report_from_json(const nlohmann::json& doc);

inline constexpr const char* kCsvHeader =
    "epsilon,seminorm,m_centers,C,delta,width,converged,train_sup_error,heldout_sup_error,wall_ms";

/// One row per (epsilon, seminorm). Missing held-out errors are written as nan.
void write_csv(const ExperimentReport& report, std::ostream& out);

struct EmittedFiles {
  std::filesystem::path csv;
  std::filesystem::path json;
  std::vector<std::filesystem::path> networks;
};

/// Writes report.csv, report.json and, when write_networks is set,
/// network_<k>.json per run into dir (created if missing). I/O failures
/// throw std::runtime_error naming the path.
EmittedFiles emit_report(const ExperimentReport& report, const std::filesystem::path& dir,
                         bool write_networks = false);

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

}  // namespace lcnet
