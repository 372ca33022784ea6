#pragma once

#include <array>
#include <memory>

#include "hybridopt/hybrid.hpp"

namespace hybridopt {

/// The six bounded disturbance channels of the perturbed hybrid dynamics:
///   d₁: added to the state inside the flow-set test,
///   d₂: added to the state the flow field is evaluated at,
///   d₃: added to the flow field (then projected to the tangent space),
///   d₄: added to the state inside the jump-set test,
///   d₅: added to the state the jump map is evaluated at,
///   d₆: added to the jump image (then retracted to the manifold).
/// Every signal must stay within |d| ≤ bound; a violation aborts the run.
struct DisturbanceProfile {
  using Signal = std::function<Eigen::VectorXd(const State&, HybridTime)>;

  std::array<Signal, 6> channels;  // empty function = zero channel
  double bound = 0.0;

  bool any_active() const;
};

/// A bounded tangential pull toward a chosen undesired critical point:
/// directed along the geodesic toward `target`, scaled by
/// max(0, 1 − d(z, target)/engagement_radius), zero outside the engagement
/// zone, and always tangent so the manifold stays invariant.
struct AdversarialSpec {
  ManifoldPoint target;
  double amplitude = 0.0;
  double engagement_radius = 1.0;
};

TangentVector adversarial_tangential(const AdversarialSpec& spec, const ManifoldPoint& z);

/// Constant-norm tangential push: amplitude times the first frame vector.
TangentVector constant_tangent(const ManifoldPoint& z, double amplitude);

/// Wrap a hybrid system with the disturbance channels. Set-membership tests
/// see x + d₁ (flow) and x + d₄ (jump); the flow field is evaluated at
/// x + d₂ with d₃ added and tangent-projected; the jump map is evaluated at
/// x + d₅ with d₆ added and retracted. Ambient additions are retracted onto
/// the manifold blocks before use.
HybridSystemDef perturb_system(const HybridSystemDef& sys,
                               std::shared_ptr<const DisturbanceProfile> profile);

/// Profile helpers used by the scenario front end. `channel` is 1-based
/// (d₁…d₆); the signal acts on the z block only.
DisturbanceProfile make_adversarial_profile(const AdversarialSpec& spec,
                                            const StateLayout& layout,
                                            const std::vector<int>& channels);
DisturbanceProfile make_constant_tangent_profile(double amplitude,
                                                 const StateLayout& layout,
                                                 const std::vector<int>& channels);

}  // namespace hybridopt
