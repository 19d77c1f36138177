// lcnet: runs constructive approximation experiments from JSON configs.
//
//   lcnet run --config <path> [--seed <u64>] [--out <dir>] [--threads <n>]
//   lcnet run --preset <name> [...]
//   lcnet presets list
//   lcnet presets show <name>

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lcnet/errors.hpp"
#include "lcnet/experiment.hpp"
#include "lcnet/presets.hpp"

namespace {

int run(const std::string& config_path, const std::string& preset, const std::uint64_t* seed,
        const std::string& out_dir, std::size_t threads, bool write_networks) {
  lcnet::ExperimentConfig config = preset.empty()
                                       ? lcnet::load_config(config_path)
                                       : lcnet::config_from_json(lcnet::preset_config(preset));
  if (seed) config.seed = *seed;
  if (!out_dir.empty()) config.output_dir = out_dir;
  if (write_networks) config.write_networks = true;

  const lcnet::ExperimentReport report = lcnet::run_experiment(config, threads);
  const auto files = lcnet::emit_report(report, config.output_dir, config.write_networks);

  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& r : report.runs) {
    std::cout << "eps=" << lcnet::format_double(r.epsilon) << " m=" << r.budget.m
              << " C=" << lcnet::format_double(r.budget.C)
              << " delta=" << lcnet::format_double(r.budget.delta)
              << " width=" << r.assembly.max_width
              << " converged=" << (r.assembly.converged ? "yes" : "no")
              << " train=" << lcnet::format_double(r.train_errors.at(report.target_seminorm));
    if (!r.heldout_errors.empty()) {
      std::cout << " heldout=" << lcnet::format_double(r.heldout_errors.at(report.target_seminorm));
    }
    std::cout << " (" << lcnet::format_double(r.wall_ms) << " ms)\n";
  }
  std::cout << "wrote " << files.csv.string() << " and " << files.json.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shallow vector-valued network experiments"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run an experiment config");
  std::string config_path;
  std::string preset;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::size_t threads = 1;
  bool write_networks = false;
  auto* config_opt = run_cmd->add_option("--config", config_path, "Experiment config (JSON)")
                         ->check(CLI::ExistingFile);
  auto* preset_opt = run_cmd->add_option("--preset", preset, "Built-in preset name");
  config_opt->excludes(preset_opt);
  auto* seed_opt = run_cmd->add_option("--seed", seed, "Override the root seed");
  run_cmd->add_option("--out", out_dir, "Output directory (overrides the config)");
  run_cmd->add_option("--threads", threads, "Worker threads for scalar fits")
      ->check(CLI::PositiveNumber);
  run_cmd->add_flag("--write-networks", write_networks, "Also write serialized networks");

  auto* presets_cmd = app.add_subcommand("presets", "Inspect built-in presets");
  presets_cmd->require_subcommand(1);
  auto* list_cmd = presets_cmd->add_subcommand("list", "List preset names");
  auto* show_cmd = presets_cmd->add_subcommand("show", "Print a preset config as JSON");
  std::string show_name;
  show_cmd->add_option("name", show_name, "Preset name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      if (config_path.empty() && preset.empty()) {
        std::cerr << "error: run needs --config <path> or --preset <name>\n";
        return 2;
      }
      return run(config_path, preset, *seed_opt ? &seed : nullptr, out_dir, threads,
                 write_networks);
    }
    if (*list_cmd) {
      for (const auto& p : lcnet::presets()) std::cout << p.name << "\t" << p.description << '\n';
      return 0;
    }
    if (*show_cmd) {
      std::cout << lcnet::preset_config(show_name).dump(2) << '\n';
      return 0;
    }
  } catch (const lcnet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
