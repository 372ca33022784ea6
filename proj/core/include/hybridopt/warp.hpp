#pragma once

#include <optional>
#include <vector>

#include "hybridopt/cost.hpp"

namespace hybridopt {

/// Shape function α with its derivative. Must satisfy α(0) = 0, α′(0) = 0,
/// and α′(r) > −1 on the relevant range; "square" (α(r) = r²) is the default.
struct AlphaFn {
  std::string name;
  std::function<double(double)> a;
  std::function<double(double)> da;
};

AlphaFn alpha_by_name(const std::string& name);

/// One diffeomorphic warp of the manifold: identity on {φ ≤ γ}, and a
/// rotation by the angle gain·α(φ(z) − γ) elsewhere. The rotation generator
/// is the fixed 90° generator on S¹ and the skew matrix of `axis` on S².
struct WarpSpec {
  double gain = 0.0;
  AlphaFn alpha = alpha_by_name("square");
  double gamma = 0.0;
  std::optional<Eigen::Vector3d> axis;  // required on S², unused on S¹
};

/// The generator applied to z: Ψz = (−z₂, z₁) on S¹, axis × z on S².
Eigen::VectorXd generator_times(const WarpSpec& spec, const ManifoldPoint& z);

/// S_q(z): identity when cost(z) ≤ γ, otherwise the closed-form rotation
/// exp(gain·α(φ(z)−γ)·G)·z (2×2 rotation on S¹, Rodrigues on S²),
/// renormalized to the manifold.
ManifoldPoint warp_apply(const WarpSpec& spec, const CostFunction& cost,
                         const ManifoldPoint& z);

/// Jacobian determinant of the warp differential,
/// 1 + gain·α′(φ(z)−γ)·dφ_z(Gz), with dφ_z(Gz) by central differences of
/// t ↦ φ(project(z + t·Gz)). Exactly 1 on the identity branch.
double warp_jacobian_det(const WarpSpec& spec, const CostFunction& cost,
                         const ManifoldPoint& z, double fd_step = tol().fd_step);

/// An indexed family {S_q} of warps over one cost, with the shared
/// threshold γ and the switching gap δ.
struct SynergisticFamily {
  CostFunction cost;
  std::vector<WarpSpec> warps;
  double gamma = 0.0;
  double delta = 0.0;

  int num_modes() const { return static_cast<int>(warps.size()); }
};

/// φ̃_q(z) = φ(S_q(z)). Evaluates φ once on the identity branch and twice
/// otherwise; never touches a derivative oracle.
double warped_cost(const SynergisticFamily& family, int q, const ManifoldPoint& z);

/// m(z): minimum of the warped costs over all modes.
double min_warped(const SynergisticFamily& family, const ManifoldPoint& z);

/// h(z): every mode within the absolute tie tolerance of m(z), ascending.
/// Never empty.
std::vector<int> argmin_modes(const SynergisticFamily& family, const ManifoldPoint& z,
                              double tie_tol = tol().mode_tie);

/// φ̃_q as a ScalarField sharing the family's evaluation counters.
ScalarField warped_field(const SynergisticFamily& family, int q);

/// Sampled estimate of the admissible-gain bound
/// 0.9 / max{ |α′(φ(z)−γ)·dφ_z(Gz)| : φ(z) ≥ γ } with the max over a
/// deterministic sample of at least num_samples points. Returns +inf when
/// the sampled superlevel set is empty or the max is zero.
double estimate_gain_bound(const CostFunction& cost, const AlphaFn& alpha,
                           double gamma, const WarpSpec& generator_spec,
                           int num_samples);

/// Deterministic point samples used by the estimators: uniform angles on
/// S¹, a Fibonacci lattice on S², per-factor angle grids on Tⁿ.
std::vector<ManifoldPoint> sample_points(const ManifoldKind& kind, int count);

}  // namespace hybridopt
