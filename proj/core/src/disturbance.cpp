#include "hybridopt/disturbance.hpp"

#include <cmath>

namespace hybridopt {

bool DisturbanceProfile::any_active() const {
  for (const auto& c : channels)
    if (c) return true;
  return false;
}

TangentVector adversarial_tangential(const AdversarialSpec& spec, const ManifoldPoint& z) {
  const double d = distance(z, spec.target);
  const double scale = std::max(0.0, 1.0 - d / spec.engagement_radius);
  if (scale == 0.0 || d == 0.0)
    return {z, Eigen::VectorXd::Zero(z.coords.size())};
  const TangentVector toward = log_map(z, spec.target);
  const double n = toward.vec.norm();
  if (n < 1e-14) return {z, Eigen::VectorXd::Zero(z.coords.size())};
  return {z, (spec.amplitude * scale / n) * toward.vec};
}

TangentVector constant_tangent(const ManifoldPoint& z, double amplitude) {
  return {z, amplitude * tangent_frame(z)[0].vec};
}

namespace {

Eigen::VectorXd checked_signal(const DisturbanceProfile& profile, int k,
                               const State& x, HybridTime ht) {
  const auto& sig = profile.channels[k];
  if (!sig) return Eigen::VectorXd::Zero(x.size());
  Eigen::VectorXd d = sig(x, ht);
  if (d.size() != x.size())
    throw ValidationError("disturbance channel d" + std::to_string(k + 1) +
                          " returned the wrong dimension");
  if (d.norm() > profile.bound + 1e-12)
    throw ValidationError("disturbance channel d" + std::to_string(k + 1) +
                          " exceeded its bound d* = " + std::to_string(profile.bound) +
                          " at t = " + std::to_string(ht.t));
  return d;
}

State retracted_sum(const StateLayout& layout, const State& x, const Eigen::VectorXd& d) {
  State out = x + d;
  layout.project(out);
  return out;
}

}  // namespace

HybridSystemDef perturb_system(const HybridSystemDef& sys,
                               std::shared_ptr<const DisturbanceProfile> profile) {
  if (!profile) throw ValidationError("perturb_system: null profile");
  if (!profile->any_active()) return sys;  // arcs must match the nominal system

  HybridSystemDef out = sys;
  const StateLayout layout = sys.layout;
  const HybridSystemDef base = sys;
  const auto prof = profile;

  out.in_flow_set = [base, prof, layout](const State& x, HybridTime ht) {
    return base.in_flow_set(retracted_sum(layout, x, checked_signal(*prof, 0, x, ht)), ht);
  };
  out.in_jump_set = [base, prof, layout](const State& x, HybridTime ht) {
    return base.in_jump_set(retracted_sum(layout, x, checked_signal(*prof, 3, x, ht)), ht);
  };
  out.flow_field = [base, prof, layout](const State& x, HybridTime ht) {
    const State shifted = retracted_sum(layout, x, checked_signal(*prof, 1, x, ht));
    State v = base.flow_field(shifted, ht) + checked_signal(*prof, 2, x, ht);
    // Keep the z-derivative tangent at the actual state so flows preserve M.
    for (size_t bi = 0; bi < layout.manifold_blocks.size(); ++bi) {
      const auto& b = layout.manifold_blocks[bi];
      const ManifoldPoint z = layout.block_point(x, bi);
      v.segment(b.offset, b.kind.ambient_dim()) =
          tangent_project(z, v.segment(b.offset, b.kind.ambient_dim()));
    }
    return v;
  };
  out.jump_map = [base, prof, layout](const State& x, HybridTime ht) {
    const State shifted = retracted_sum(layout, x, checked_signal(*prof, 4, x, ht));
    State next = base.jump_map(shifted, ht) + checked_signal(*prof, 5, x, ht);
    layout.project(next);
    return next;
  };
  return out;
}

namespace {

// Lift a z-block tangent rule into a state-shaped signal on chosen channels.
DisturbanceProfile lift_profile(
    std::function<Eigen::VectorXd(const ManifoldPoint&)> rule, double bound,
    const StateLayout& layout, const std::vector<int>& channels) {
  DisturbanceProfile profile;
  profile.bound = bound;
  DisturbanceProfile::Signal sig = [rule, layout](const State& x, HybridTime) {
    const ManifoldPoint z = layout.block_point(x, 0);
    Eigen::VectorXd d = Eigen::VectorXd::Zero(x.size());
    d.segment(layout.manifold_blocks[0].offset, z.coords.size()) = rule(z);
    return d;
  };
  for (int c : channels) {
    if (c < 1 || c > 6) throw ValidationError("disturbance channel index must be 1..6");
    profile.channels[c - 1] = sig;
  }
  return profile;
}

}  // namespace

DisturbanceProfile make_adversarial_profile(const AdversarialSpec& spec,
                                            const StateLayout& layout,
                                            const std::vector<int>& channels) {
  const AdversarialSpec s = spec;
  return lift_profile(
      [s](const ManifoldPoint& z) { return adversarial_tangential(s, z).vec; },
      spec.amplitude, layout, channels);
}

DisturbanceProfile make_constant_tangent_profile(double amplitude,
                                                 const StateLayout& layout,
                                                 const std::vector<int>& channels) {
  return lift_profile(
      [amplitude](const ManifoldPoint& z) { return constant_tangent(z, amplitude).vec; },
      amplitude, layout, channels);
}

}  // namespace hybridopt
