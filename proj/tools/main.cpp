// Batch front end: run scenarios from JSON configs, sweep a tuning axis,
// re-render phase plots from exported arcs, or validate a config without
// running it. Exit codes: 0 success, 2 config error, 3 validation error,
// 4 solver/input error.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hybridopt/scenario.hpp"

namespace {

using namespace hybridopt;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitValidation = 3;
constexpr int kExitSolver = 4;

ScenarioConfig load_config(const std::string& path) {
  // "builtin:<name>" resolves one of the shipped scenarios.
  ScenarioConfig config = path.rfind("builtin:", 0) == 0
                              ? builtin_scenario(path.substr(8))
                              : parse_scenario(read_text_file(path));
  if (const char* dir = std::getenv("HYBRIDOPT_OUT_DIR"); dir && *dir)
    config.outputs.directory = dir;
  return config;
}

int classify(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const ValidationError*>(&e)) return kExitValidation;
  return kExitSolver;
}

int cmd_run(const std::string& config_path) {
  ScenarioConfig config = load_config(config_path);
  const ScenarioReport report = run_scenario(config);

  int converged = 0;
  for (const auto& r : report.runs)
    if (r.final_distance && *r.final_distance < config.solver.target_tol) ++converged;
  std::cout << report.config.name << ": " << report.runs.size() << " runs, "
            << converged << " within target tolerance, delta = "
            << report.resolved_delta << ", wall = " << report.wall_seconds
            << " s\n";
  std::cout << "certificates: invariance violations = "
            << report.manifold_invariance_violations
            << ", flow-Lyapunov = " << report.flow_lyapunov_violations
            << ", jump-decrease = " << report.jump_decrease_violations << "\n";
  std::cout << "artifacts in " << report.config.outputs.directory << "\n";

  const bool ok = report.manifold_invariance_violations == 0 &&
                  report.flow_lyapunov_violations == 0 &&
                  report.jump_decrease_violations == 0;
  return ok ? kExitOk : kExitSolver;
}

int cmd_sweep(const std::string& config_path, const std::string& axis,
              const std::vector<double>& values) {
  ScenarioConfig config = load_config(config_path);
  const SweepReport report = run_sweep(config, axis, values);
  std::cout << sweep_csv(report);
  if (!report.monotone_within_slack)
    std::cerr << "note: worst-case final distance is not monotone within the "
                 "20% slack band\n";
  return kExitOk;
}

int cmd_plot(const std::vector<std::string>& arcs, const std::string& out_dir) {
  const auto written = emit_plots(arcs, PlotStyle{}, out_dir);
  for (const auto& f : written) std::cout << f << "\n";
  return kExitOk;
}

int cmd_validate(const std::string& config_path) {
  ScenarioConfig config = load_config(config_path);
  const ValidationSummary v = validate_scenario(config);
  std::cout << "ok: delta = " << v.resolved_delta << ", mu_hat = " << v.mu_hat
            << ", gain_bound = " << v.gain_bound
            << ", min_value = " << v.min_value << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid model-free optimization on compact manifolds"};
  app.require_subcommand(1);

  std::string config_path, axis, out_dir;
  std::vector<double> values;
  std::vector<std::string> arc_paths;

  auto* run = app.add_subcommand("run", "run a scenario from a JSON config");
  run->add_option("config", config_path, "config path or builtin:<name>")->required();

  auto* sweep = app.add_subcommand("sweep", "re-run a scenario along one axis");
  sweep->add_option("config", config_path, "config path or builtin:<name>")->required();
  sweep->add_option("--axis", axis, "epsilon_a | epsilon_p | dstar")->required();
  sweep->add_option("--values", values, "strictly decreasing axis values")
      ->required()
      ->delimiter(',');

  auto* plot = app.add_subcommand("plot", "render SVG phase plots from arc JSON files");
  plot->add_option("arcs", arc_paths, "arc .json files")->required();
  plot->add_option("--out-dir", out_dir, "output directory (default: next to input)");

  auto* validate = app.add_subcommand("validate",
                                      "run family/frequency checks without solving");
  validate->add_option("config", config_path, "config path or builtin:<name>")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(config_path);
    if (sweep->parsed()) return cmd_sweep(config_path, axis, values);
    if (plot->parsed()) return cmd_plot(arc_paths, out_dir);
    if (validate->parsed()) return cmd_validate(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify(e);
  }
  return kExitConfig;
}
