#include "hybridopt/switching.hpp"

#include <cmath>

namespace hybridopt {

int mode_of(const StateLayout& layout, const State& x) {
  if (layout.discrete_indices.empty())
    throw ValidationError("state layout has no mode entry");
  return static_cast<int>(std::lround(x[layout.discrete_indices[0]]));
}

void set_mode(const StateLayout& layout, State& x, int q) {
  x[layout.discrete_indices[0]] = static_cast<double>(q);
}

namespace {

double switching_margin(const SynergisticFamily& family, const StateLayout& layout,
                        const State& x) {
  const ManifoldPoint z = layout.block_point(x, 0);
  const int q = mode_of(layout, x);
  return warped_cost(family, q, z) - min_warped(family, z);
}

}  // namespace

bool delta_in_flow_set(const SynergisticFamily& family, const StateLayout& layout,
                       const State& x, double boundary_tol) {
  return switching_margin(family, layout, x) <= family.delta + boundary_tol;
}

bool delta_in_jump_set(const SynergisticFamily& family, const StateLayout& layout,
                       const State& x, double boundary_tol) {
  return switching_margin(family, layout, x) >= family.delta - boundary_tol;
}

State apply_jump_delta_system(const SynergisticFamily& family, const StateLayout& layout,
                              const State& x, double boundary_tol) {
  if (!delta_in_jump_set(family, layout, x, boundary_tol))
    throw ValidationError("jump applied outside the jump set");
  const ManifoldPoint z = layout.block_point(x, 0);
  State out = x;
  set_mode(layout, out, argmin_modes(family, z).front());
  return out;
}

std::vector<State> jump_candidates_delta_system(const SynergisticFamily& family,
                                                const StateLayout& layout,
                                                const State& x) {
  const ManifoldPoint z = layout.block_point(x, 0);
  std::vector<State> out;
  for (int q : argmin_modes(family, z)) {
    State s = x;
    set_mode(layout, s, q);
    out.push_back(std::move(s));
  }
  return out;
}

LyapunovDiagnostics lyapunov_diagnostics(const SynergisticFamily& family,
                                         const StateLayout& layout,
                                         const HybridArc& arc,
                                         double min_value_estimate) {
  LyapunovDiagnostics d;
  d.V.reserve(arc.size());
  d.u_C.reserve(arc.size());
  for (size_t i = 0; i < arc.size(); ++i) {
    const ManifoldPoint z = layout.block_point(arc.states[i], 0);
    const int q = mode_of(layout, arc.states[i]);
    d.V.push_back(warped_cost(family, q, z) - min_value_estimate);
    const TangentVector g = fd_gradient(warped_field(family, q), z);
    d.u_C.push_back(-g.vec.squaredNorm());
  }
  for (int idx : arc.jump_indices)
    d.jump_dV.push_back(d.V[idx] - d.V[idx - 1]);
  return d;
}

int LyapunovDiagnostics::flow_violations(const HybridArc& arc,
                                         double per_step_slack) const {
  int count = 0;
  for (size_t i = 0; i + 1 < arc.size(); ++i) {
    if (arc.times[i + 1].j != arc.times[i].j) continue;  // jump, not a flow step
    if (V[i + 1] - V[i] > per_step_slack) ++count;
  }
  return count;
}

int LyapunovDiagnostics::jump_violations(double delta, double slack) const {
  int count = 0;
  for (double dv : jump_dV)
    if (dv > -delta + slack) ++count;
  return count;
}

}  // namespace hybridopt
