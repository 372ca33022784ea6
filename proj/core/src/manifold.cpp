#include "hybridopt/manifold.hpp"

#include <algorithm>
#include <cmath>

namespace hybridopt {

namespace {

// Iterate over the unit-norm blocks of a manifold's ambient coordinates:
// one block of size 2 or 3 for S¹/S², n blocks of size 2 for Tⁿ.
struct BlockRange {
  int count;
  int size;
};

BlockRange blocks_of(const ManifoldKind& kind) {
  switch (kind.type) {
    case ManifoldType::CircleS1: return {1, 2};
    case ManifoldType::SphereS2: return {1, 3};
    case ManifoldType::Torus: return {kind.factors, 2};
  }
  return {0, 0};
}

}  // namespace

ManifoldKind ManifoldKind::torus(int n) {
  if (n < 1) throw ValidationError("torus factor count must be positive");
  return {ManifoldType::Torus, n};
}

int ManifoldKind::ambient_dim() const {
  switch (type) {
    case ManifoldType::CircleS1: return 2;
    case ManifoldType::SphereS2: return 3;
    case ManifoldType::Torus: return 2 * factors;
  }
  return 0;
}

int ManifoldKind::intrinsic_dim() const {
  switch (type) {
    case ManifoldType::CircleS1: return 1;
    case ManifoldType::SphereS2: return 2;
    case ManifoldType::Torus: return factors;
  }
  return 0;
}

std::string ManifoldKind::name() const {
  switch (type) {
    case ManifoldType::CircleS1: return "circle";
    case ManifoldType::SphereS2: return "sphere";
    case ManifoldType::Torus: return "torus:" + std::to_string(factors);
  }
  return "?";
}

double manifold_violation(const ManifoldKind& kind, const Eigen::VectorXd& coords) {
  const auto b = blocks_of(kind);
  double worst = 0.0;
  for (int i = 0; i < b.count; ++i) {
    const double n = coords.segment(i * b.size, b.size).norm();
    worst = std::max(worst, std::abs(n - 1.0));
  }
  return worst;
}

ManifoldPoint make_point(ManifoldKind kind, const Eigen::VectorXd& coords) {
  if (coords.size() != kind.ambient_dim())
    throw ValidationError("point has wrong ambient dimension for " + kind.name());
  if (manifold_violation(kind, coords) > tol().point_norm)
    throw ValidationError("coordinates violate the unit-norm invariant of " + kind.name());
  return {kind, coords};
}

TangentVector make_tangent(const ManifoldPoint& base, const Eigen::VectorXd& vec) {
  if (vec.size() != base.kind.ambient_dim())
    throw InvalidTangentError("tangent vector has wrong ambient dimension");
  const auto b = blocks_of(base.kind);
  for (int i = 0; i < b.count; ++i) {
    const double dot = base.coords.segment(i * b.size, b.size)
                           .dot(vec.segment(i * b.size, b.size));
    if (std::abs(dot) > tol().tangency)
      throw InvalidTangentError("vector is not tangent at the base point");
  }
  return {base, vec};
}

void project_coords(const ManifoldKind& kind, Eigen::VectorXd& p) {
  const auto b = blocks_of(kind);
  for (int i = 0; i < b.count; ++i) {
    auto seg = p.segment(i * b.size, b.size);
    const double n = seg.norm();
    if (n < tol().degenerate_block)
      throw DegenerateProjectionError("block norm below degeneracy threshold");
    seg /= n;
  }
}

ManifoldPoint project_to_manifold(ManifoldKind kind, const Eigen::VectorXd& p) {
  if (p.size() != kind.ambient_dim())
    throw ValidationError("ambient vector has wrong dimension for " + kind.name());
  Eigen::VectorXd q = p;
  project_coords(kind, q);
  return {kind, q};
}

Eigen::VectorXd tangent_project(const ManifoldPoint& z, const Eigen::VectorXd& v) {
  const auto b = blocks_of(z.kind);
  Eigen::VectorXd out = v;
  for (int i = 0; i < b.count; ++i) {
    const auto zi = z.coords.segment(i * b.size, b.size);
    auto vi = out.segment(i * b.size, b.size);
    vi -= zi.dot(vi) * zi;
  }
  return out;
}

ManifoldPoint exp_map(const ManifoldPoint& z, const TangentVector& v) {
  if (!(v.base.kind == z.kind) || (v.base.coords - z.coords).norm() > tol().point_norm)
    throw InvalidTangentError("tangent vector is not based at the given point");
  const auto b = blocks_of(z.kind);
  for (int i = 0; i < b.count; ++i) {
    const double dot = z.coords.segment(i * b.size, b.size)
                           .dot(v.vec.segment(i * b.size, b.size));
    if (std::abs(dot) > tol().tangency)
      throw InvalidTangentError("exp_map: vector violates the tangency invariant");
  }

  Eigen::VectorXd out(z.coords.size());
  for (int i = 0; i < b.count; ++i) {
    const auto zi = z.coords.segment(i * b.size, b.size);
    const auto vi = v.vec.segment(i * b.size, b.size);
    const double n = vi.norm();
    if (n == 0.0) {
      out.segment(i * b.size, b.size) = zi;
    } else {
      out.segment(i * b.size, b.size) = std::cos(n) * zi + (std::sin(n) / n) * vi;
    }
  }
  project_coords(z.kind, out);
  return {z.kind, out};
}

double distance(const ManifoldPoint& z1, const ManifoldPoint& z2) {
  if (!(z1.kind == z2.kind))
    throw KindMismatchError("distance between points on different manifolds");
  const auto b = blocks_of(z1.kind);
  double sumsq = 0.0;
  for (int i = 0; i < b.count; ++i) {
    const double d = z1.coords.segment(i * b.size, b.size)
                         .dot(z2.coords.segment(i * b.size, b.size));
    const double arc = std::acos(std::clamp(d, -1.0, 1.0));
    sumsq += arc * arc;
  }
  return std::sqrt(sumsq);
}

TangentVector log_map(const ManifoldPoint& z, const ManifoldPoint& w) {
  if (!(z.kind == w.kind))
    throw KindMismatchError("log_map between points on different manifolds");
  const auto b = blocks_of(z.kind);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(z.coords.size());
  for (int i = 0; i < b.count; ++i) {
    const auto zi = z.coords.segment(i * b.size, b.size);
    const auto wi = w.coords.segment(i * b.size, b.size);
    const double arc = std::acos(std::clamp(zi.dot(wi), -1.0, 1.0));
    Eigen::VectorXd dir = wi - zi.dot(wi) * zi;
    const double n = dir.norm();
    // Antipodal or coincident block: direction is undefined, use zero.
    if (n > 1e-14) out.segment(i * b.size, b.size) = (arc / n) * dir;
  }
  return {z, out};
}

std::vector<TangentVector> tangent_frame(const ManifoldPoint& z) {
  std::vector<TangentVector> frame;
  switch (z.kind.type) {
    case ManifoldType::CircleS1: {
      Eigen::VectorXd e(2);
      e << -z.coords[1], z.coords[0];
      frame.push_back({z, e});
      break;
    }
    case ManifoldType::SphereS2: {
      const Eigen::Vector3d p = z.coords;
      // Ambient basis vector least aligned with z; ties break to the
      // smallest index, which keeps the rule deterministic.
      int axis = 0;
      double best = std::abs(p[0]);
      for (int i = 1; i < 3; ++i) {
        if (std::abs(p[i]) < best) {
          best = std::abs(p[i]);
          axis = i;
        }
      }
      Eigen::Vector3d a = Eigen::Vector3d::Unit(axis);
      Eigen::Vector3d u = (a - p.dot(a) * p).normalized();
      Eigen::Vector3d v = p.cross(u);
      Eigen::VectorXd e1 = u, e2 = v;
      frame.push_back({z, e1});
      frame.push_back({z, e2});
      break;
    }
    case ManifoldType::Torus: {
      const int n = z.kind.factors;
      for (int i = 0; i < n; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(2 * n);
        e[2 * i] = -z.coords[2 * i + 1];
        e[2 * i + 1] = z.coords[2 * i];
        frame.push_back({z, e});
      }
      break;
    }
  }
  return frame;
}

double injectivity_radius(const ManifoldKind&) { return M_PI; }

}  // namespace hybridopt
