#pragma once

#include <memory>

#include "hybridopt/hybrid.hpp"
#include "hybridopt/warp.hpp"

namespace hybridopt {

/// The δ-threshold switching logic shared by the first- and zeroth-order
/// hybrid systems. States are read through a layout whose block 0 is the
/// optimization variable z and whose first discrete entry is the mode q.

int mode_of(const StateLayout& layout, const State& x);
void set_mode(const StateLayout& layout, State& x, int q);

/// (φ̃_q − m)(z) ≤ δ + boundary_tol. Together with the jump predicate this
/// leaves an overlap band where both flowing and jumping are allowed.
bool delta_in_flow_set(const SynergisticFamily& family, const StateLayout& layout,
                       const State& x, double boundary_tol = 0.0);

/// (φ̃_q − m)(z) ≥ δ − boundary_tol.
bool delta_in_jump_set(const SynergisticFamily& family, const StateLayout& layout,
                       const State& x, double boundary_tol = 0.0);

/// Deterministic selection from the set-valued jump map: z (and any other
/// state) unchanged, q replaced by the smallest index in argmin_modes(z).
/// Requires the jump predicate to hold.
State apply_jump_delta_system(const SynergisticFamily& family, const StateLayout& layout,
                              const State& x, double boundary_tol = 0.0);

/// All states reachable by the set-valued jump map (one per tying mode).
std::vector<State> jump_candidates_delta_system(const SynergisticFamily& family,
                                                const StateLayout& layout,
                                                const State& x);

/// Per-sample Lyapunov diagnostics of an arc produced by a δ-threshold
/// system: V = φ̃_q(z) − (estimated min φ), u_C = −|fd-gradient of φ̃_q|²,
/// and the V decrease across each jump.
struct LyapunovDiagnostics {
  std::vector<double> V;
  std::vector<double> u_C;
  std::vector<double> jump_dV;  // aligned with arc.jump_indices

  /// Flow steps where V increased by more than per_step_slack.
  int flow_violations(const HybridArc& arc, double per_step_slack = 1e-8) const;
  /// Jumps where the decrease fell short of δ (ΔV > −δ + slack).
  int jump_violations(double delta, double slack = 1e-9) const;
};

LyapunovDiagnostics lyapunov_diagnostics(const SynergisticFamily& family,
                                         const StateLayout& layout,
                                         const HybridArc& arc,
                                         double min_value_estimate);

}  // namespace hybridopt
