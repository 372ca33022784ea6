#include "hybridopt/first_order.hpp"

namespace hybridopt {

StateLayout first_order_layout(const ManifoldKind& kind) {
  StateLayout layout;
  layout.manifold_blocks.push_back({kind, 0});
  layout.discrete_indices.push_back(kind.ambient_dim());
  layout.dim = kind.ambient_dim() + 1;
  return layout;
}

State pack_fo_state(const StateLayout& layout, const ManifoldPoint& z, int q) {
  State x = State::Zero(layout.dim);
  x.segment(0, z.coords.size()) = z.coords;
  set_mode(layout, x, q);
  return x;
}

State fo_flow_field(const SynergisticFamily& family, const StateLayout& layout,
                    const State& x) {
  const ManifoldPoint z = layout.block_point(x, 0);
  const int q = mode_of(layout, x);
  const TangentVector g = fd_gradient(warped_field(family, q), z);
  State dx = State::Zero(x.size());
  dx.segment(0, g.vec.size()) = -g.vec;
  return dx;
}

HybridSystemDef build_H1(std::shared_ptr<const SynergisticFamily> family,
                         double boundary_tol) {
  if (!family || family->num_modes() < 2 || !(family->delta > 0.0))
    throw ValidationError("build_H1 requires a validated family with delta > 0");
  HybridSystemDef sys;
  sys.layout = first_order_layout(family->cost.kind());
  const StateLayout layout = sys.layout;
  sys.flow_field = [family, layout](const State& x, HybridTime) {
    return fo_flow_field(*family, layout, x);
  };
  sys.jump_map = [family, layout, boundary_tol](const State& x, HybridTime) {
    return apply_jump_delta_system(*family, layout, x, boundary_tol);
  };
  sys.in_flow_set = [family, layout, boundary_tol](const State& x, HybridTime) {
    return delta_in_flow_set(*family, layout, x, boundary_tol);
  };
  sys.in_jump_set = [family, layout, boundary_tol](const State& x, HybridTime) {
    return delta_in_jump_set(*family, layout, x, boundary_tol);
  };
  sys.jump_candidates = [family, layout](const State& x, HybridTime) {
    return jump_candidates_delta_system(*family, layout, x);
  };
  return sys;
}

HybridSystemDef build_single_mode_flow(std::shared_ptr<const SynergisticFamily> family,
                                       int fixed_mode) {
  if (!family || fixed_mode < 0 || fixed_mode >= family->num_modes())
    throw ValidationError("build_single_mode_flow: bad mode index");
  HybridSystemDef sys;
  sys.layout = first_order_layout(family->cost.kind());
  const StateLayout layout = sys.layout;
  sys.flow_field = [family, layout](const State& x, HybridTime) {
    return fo_flow_field(*family, layout, x);
  };
  sys.jump_map = [](const State& x, HybridTime) { return x; };
  sys.in_flow_set = [](const State&, HybridTime) { return true; };
  sys.in_jump_set = [](const State&, HybridTime) { return false; };
  return sys;
}

}  // namespace hybridopt
