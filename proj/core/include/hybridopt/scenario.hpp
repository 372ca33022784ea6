#pragma once

#include "hybridopt/arc_io.hpp"
#include "hybridopt/critical_points.hpp"
#include "hybridopt/disturbance.hpp"
#include "hybridopt/first_order.hpp"
#include "hybridopt/svg.hpp"
#include "hybridopt/zeroth_order.hpp"

namespace hybridopt {

/// Batch experiment front end. A scenario is a single JSON document with a
/// fixed schema (unknown keys are rejected); see the README for the layout.

struct FamilyConfig {
  std::vector<double> gains;
  std::string alpha = "square";
  double gamma = 1.0;
  std::optional<double> delta;  // nullopt = "auto" -> min(0.2, 0.8·μ̂)
  std::optional<Eigen::Vector3d> axis;
};

struct DitherConfig {
  double epsilon_a = 0.05;
  double epsilon_p = 0.01;
  double omega_hat = 1.0;
  std::vector<Rational> omega_tilde;
  std::optional<Eigen::VectorXd> chi0;  // 2n entries; default all pairs (1, 0)
};

struct DynamicsConfig {
  std::string kind = "first_order";  // first_order | zeroth_order | gradient_flow
  std::vector<int> initial_modes;    // empty = all modes
  std::optional<DitherConfig> dither;
};

struct DisturbanceConfig {
  std::string kind = "none";  // none | constant_tangent | adversarial
  double amplitude = 0.0;
  std::optional<Eigen::VectorXd> target;
  double engagement_radius = 1.0;
  std::vector<int> channels = {3};
};

struct SolverBlockConfig {
  double step = 1e-2;
  double max_t = 50.0;
  int max_jumps = 50;
  double boundary_tol = 0.0;
  std::string jump_policy = "jump_first";
  int record_stride = 1;
  unsigned long long seed = 1;
  std::optional<Eigen::VectorXd> target;  // reference point for distances
  double target_tol = 1e-3;
  bool terminate_on_target = true;
};

struct OutputConfig {
  bool csv = true;
  bool json = true;
  bool svg = true;
  std::string directory = "out";
};

struct ScenarioConfig {
  std::string name;
  std::string manifold = "circle";  // circle | sphere
  std::string cost = "circle_1_minus_z1";
  std::vector<PolynomialTerm> polynomial;  // used when cost == "polynomial"
  FamilyConfig family;
  DynamicsConfig dynamics;
  DisturbanceConfig disturbance;
  SolverBlockConfig solver;
  std::string initial_conditions = "grid:36";  // "grid:<count>" or "explicit"
  std::vector<Eigen::VectorXd> explicit_initial;
  double grid_jitter = 0.0;  // fraction of one grid cell, seed-controlled
  OutputConfig outputs;
};

/// Strict parse: unknown keys anywhere raise ConfigError.
ScenarioConfig parse_scenario(const std::string& json_text);

/// Canonical serialization (defaults filled, fixed key order); parse of the
/// result reproduces the config exactly.
std::string serialize_scenario(const ScenarioConfig& config);

ScenarioConfig builtin_scenario(const std::string& name);
std::vector<std::string> builtin_scenario_names();

/// Family, gain-bound, and (for zeroth-order scenarios) frequency checks
/// without running anything. Resolves "delta: auto" in place.
struct ValidationSummary {
  double resolved_delta = 0.0;
  double mu_hat = 0.0;
  double gain_bound = 0.0;
  double min_value = 0.0;
};
ValidationSummary validate_scenario(ScenarioConfig& config);

struct RunResult {
  int index = 0;
  Eigen::VectorXd z0;
  int q0 = 0;
  std::optional<double> final_distance;
  int jumps = 0;
  Termination termination = Termination::TimeLimit;
  int lyap_flow_violations = 0;
  int lyap_jump_violations = 0;
  double manifold_violation = 0.0;
  long long oracle_calls_during_solve = 0;  // derivative-oracle calls in solve()
};

struct ScenarioReport {
  ScenarioConfig config;  // with delta resolved
  double resolved_delta = 0.0;
  double mu_hat = 0.0;
  double gain_bound = 0.0;
  double min_value = 0.0;
  std::vector<RunResult> runs;
  long long manifold_invariance_violations = 0;
  long long flow_lyapunov_violations = 0;
  long long jump_decrease_violations = 0;
  std::vector<std::string> artifact_files;
  double wall_seconds = 0.0;
};

/// Assemble, validate, and run every (initial condition, mode) pair,
/// writing the configured artifacts plus summary.json into the output
/// directory. Throws ConfigError / ValidationError / solver errors; the CLI
/// maps those to exit codes 2 / 3 / 4.
ScenarioReport run_scenario(const ScenarioConfig& config);

std::string summary_json(const ScenarioReport& report);

struct SweepRow {
  double value = 0.0;
  double worst_final_distance = 0.0;
  double mean_jumps = 0.0;
  double wall_seconds = 0.0;
};

struct SweepReport {
  std::string axis;
  std::vector<SweepRow> rows;
  bool monotone_within_slack = true;  // 20% slack band, informative only
};

/// Re-run the scenario once per axis value (axis is "epsilon_a",
/// "epsilon_p", or "dstar") over the same initial-condition grid. Values
/// must be strictly decreasing with at least 3 entries.
SweepReport run_sweep(const ScenarioConfig& config, const std::string& axis,
                      const std::vector<double>& values);

std::string sweep_csv(const SweepReport& report);

/// Render one SVG next to each exported arc JSON; returns the files written.
std::vector<std::string> emit_plots(const std::vector<std::string>& arc_json_paths,
                                    const PlotStyle& style, const std::string& out_dir);

/// The initial-condition grid for a manifold: uniform angles on S¹, a
/// Fibonacci lattice on S², optional seed-controlled jitter.
std::vector<ManifoldPoint> initial_grid(const ManifoldKind& kind, int count,
                                        double jitter, unsigned long long seed);

}  // namespace hybridopt
