#pragma once

#include <functional>
#include <optional>

#include "hybridopt/manifold.hpp"

namespace hybridopt {

/// A point (t, j) of a hybrid time domain: continuous time plus jump count.
struct HybridTime {
  double t = 0.0;
  int j = 0;
};

using State = Eigen::VectorXd;

/// Describes how a flat state vector decomposes: which slices are manifold
/// components (projected after every integration step) and which entries
/// are discrete (held exactly constant under flow).
struct StateLayout {
  struct Block {
    ManifoldKind kind;
    int offset = 0;
  };
  std::vector<Block> manifold_blocks;
  std::vector<int> discrete_indices;
  int dim = 0;

  ManifoldPoint block_point(const State& x, size_t block = 0) const;
  void project(State& x) const;
  double violation(const State& x) const;
};

/// H = {C, F, D, G} plus the layout. The jump map is the deterministic
/// selection from the paper's set-valued map; jump_candidates exposes the
/// full tie set for tests. post_flow_step lets a system re-impose exact
/// substructure after each integration step (e.g. oscillator phases).
struct HybridSystemDef {
  StateLayout layout;
  std::function<State(const State&, HybridTime)> flow_field;
  std::function<State(const State&, HybridTime)> jump_map;
  std::function<bool(const State&, HybridTime)> in_flow_set;
  std::function<bool(const State&, HybridTime)> in_jump_set;
  std::function<std::vector<State>(const State&, HybridTime)> jump_candidates;
  std::function<void(State& x, const State& x_before, double h)> post_flow_step;
};

enum class JumpPolicy { JumpFirst, FlowFirst };
enum class Termination { TimeLimit, JumpLimit, Converged, Stalled };

struct SolverConfig {
  double step = 1e-2;           // fixed RK4 step, must be <= 1e-1
  double max_t = 50.0;
  int max_jumps = 50;
  double boundary_tol = 0.0;    // widens the delta-threshold overlap band
  JumpPolicy jump_policy = JumpPolicy::JumpFirst;
  int record_stride = 1;
  bool refine_jump_time = true; // bisect the D-entry time before jumping

  // Convergence callback: terminate once the first manifold block stays
  // within target_tol of target for one continuous-time unit.
  std::optional<Eigen::VectorXd> target;
  double target_tol = 1e-3;
};

struct HybridArc {
  std::vector<HybridTime> times;
  std::vector<State> states;
  std::vector<int> jump_indices;  // indices of post-jump samples
  Termination termination = Termination::TimeLimit;
  double max_manifold_violation = 0.0;  // tracked over every step, recorded or not

  size_t size() const { return times.size(); }
};

/// Integrates the hybrid system from x0: RK4 in ambient coordinates with
/// per-stage retraction, jump detection per the configured policy, and
/// deterministic recording. Throws InfeasibleStartError when x0 is outside
/// C ∪ D and EscapeError when the flow leaves C ∪ D.
HybridArc solve(const HybridSystemDef& sys, const State& x0, const SolverConfig& cfg);

const char* to_string(Termination t);

}  // namespace hybridopt
