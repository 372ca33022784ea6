#pragma once

#include "hybridopt/switching.hpp"

namespace hybridopt {

/// First-order hybrid dynamics: warped-gradient flows with δ-threshold
/// switching. State vector is [z | q].

StateLayout first_order_layout(const ManifoldKind& kind);

/// Flow map: −(fd gradient of φ̃_q at z) on the z block, zero on q. The
/// gradient is evaluated by finite differences of the measured cost, so the
/// whole system stays model-free.
State fo_flow_field(const SynergisticFamily& family, const StateLayout& layout,
                    const State& x);

/// Assemble H₁ = {C₁, F₁, D₁, G₁} over a validated family.
HybridSystemDef build_H1(std::shared_ptr<const SynergisticFamily> family,
                         double boundary_tol = 0.0);

/// The single-mode comparison system: the same gradient flow with q pinned,
/// no switching (C is everything, D is empty). This is the smooth dynamics
/// that the hybrid construction exists to outperform.
HybridSystemDef build_single_mode_flow(std::shared_ptr<const SynergisticFamily> family,
                                       int fixed_mode);

State pack_fo_state(const StateLayout& layout, const ManifoldPoint& z, int q);

}  // namespace hybridopt
