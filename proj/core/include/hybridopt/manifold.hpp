#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hybridopt/errors.hpp"
#include "hybridopt/tolerances.hpp"

namespace hybridopt {

/// The compact embedded manifolds supported by the library: the unit circle
/// S¹ ⊂ ℝ², the unit sphere S² ⊂ ℝ³, and products of circles Tⁿ ⊂ ℝ²ⁿ
/// stored as n consecutive unit pairs. All geometry below is closed form.
enum class ManifoldType { CircleS1, SphereS2, Torus };

struct ManifoldKind {
  ManifoldType type = ManifoldType::CircleS1;
  int factors = 1;  // number of circle factors; only meaningful for Torus

  static ManifoldKind circle() { return {ManifoldType::CircleS1, 1}; }
  static ManifoldKind sphere() { return {ManifoldType::SphereS2, 1}; }
  static ManifoldKind torus(int n);

  int ambient_dim() const;
  int intrinsic_dim() const;
  std::string name() const;

  bool operator==(const ManifoldKind&) const = default;
};

/// A point on a manifold in embedded (ambient) coordinates.
/// Invariant: every normalized block has unit 2-norm within tol().point_norm.
struct ManifoldPoint {
  ManifoldKind kind;
  Eigen::VectorXd coords;
};

/// A vector in the tangent space at `base`, in ambient coordinates.
/// Invariant: orthogonal to the manifold normal(s) at base within
/// tol().tangency (per block for tori).
struct TangentVector {
  ManifoldPoint base;
  Eigen::VectorXd vec;
};

/// Construct a point, checking dimension and the unit-norm invariant.
ManifoldPoint make_point(ManifoldKind kind, const Eigen::VectorXd& coords);

/// Construct a tangent vector, checking the tangency invariant.
TangentVector make_tangent(const ManifoldPoint& base, const Eigen::VectorXd& vec);

/// Worst deviation of `coords` from the unit-norm invariant, max over blocks.
double manifold_violation(const ManifoldKind& kind, const Eigen::VectorXd& coords);

/// Radial projection (retraction) of an ambient vector onto the manifold;
/// per-pair normalization for tori. Idempotent. Throws
/// DegenerateProjectionError when a block has norm below
/// tol().degenerate_block.
ManifoldPoint project_to_manifold(ManifoldKind kind, const Eigen::VectorXd& p);

/// In-place variant working on raw coordinates (used by the solver hot loop).
void project_coords(const ManifoldKind& kind, Eigen::VectorXd& p);

/// Project an ambient vector onto the tangent space at z.
Eigen::VectorXd tangent_project(const ManifoldPoint& z, const Eigen::VectorXd& v);

/// Point reached by the unit-time geodesic with initial velocity v:
/// cos(|v|)·z + sin(|v|)·v/|v| per sphere/circle block. Throws
/// InvalidTangentError when v violates the tangency invariant.
ManifoldPoint exp_map(const ManifoldPoint& z, const TangentVector& v);

/// Riemannian distance. arccos of the clamped dot product on S¹/S²; the
/// 2-norm of per-circle arc distances on Tⁿ.
double distance(const ManifoldPoint& z1, const ManifoldPoint& z2);

/// Tangent vector at z pointing along the geodesic toward w, with length
/// distance(z, w). Undefined direction (antipodal w) degenerates to zero.
TangentVector log_map(const ManifoldPoint& z, const ManifoldPoint& w);

/// Deterministic orthonormal tangent frame at z, one vector per intrinsic
/// dimension. S¹: (−z₂, z₁). S²: the ambient basis vector least aligned with
/// z, Gram-Schmidt against z, completed by the cross product. Tⁿ: per-circle
/// tangents. Smooth along trajectories except at the S² chart seams.
std::vector<TangentVector> tangent_frame(const ManifoldPoint& z);

/// π for every supported manifold (per-factor for tori).
double injectivity_radius(const ManifoldKind& kind);

}  // namespace hybridopt
