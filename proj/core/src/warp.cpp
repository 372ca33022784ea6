#include "hybridopt/warp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hybridopt {

AlphaFn alpha_by_name(const std::string& name) {
  if (name == "square")
    return {"square", [](double r) { return r * r; }, [](double r) { return 2.0 * r; }};
  if (name == "cubic")
    return {"cubic", [](double r) { return r * r * r; },
            [](double r) { return 3.0 * r * r; }};
  throw ValidationError("unknown alpha shape '" + name + "'");
}

Eigen::VectorXd generator_times(const WarpSpec& spec, const ManifoldPoint& z) {
  switch (z.kind.type) {
    case ManifoldType::CircleS1: {
      Eigen::VectorXd g(2);
      g << -z.coords[1], z.coords[0];
      return g;
    }
    case ManifoldType::SphereS2: {
      if (!spec.axis) throw ValidationError("sphere warp requires a rotation axis");
      const Eigen::Vector3d u = *spec.axis;
      return u.cross(Eigen::Vector3d(z.coords));
    }
    case ManifoldType::Torus:
      throw KindMismatchError("no warp construction is available on tori");
  }
  throw KindMismatchError("unsupported manifold kind");
}

namespace {

// Rotation branch of the warp with φ(z) already measured.
ManifoldPoint rotate_point(const WarpSpec& spec, const ManifoldPoint& z, double phi) {
  const double theta = spec.gain * spec.alpha.a(phi - spec.gamma);
  Eigen::VectorXd out(z.coords.size());
  switch (z.kind.type) {
    case ManifoldType::CircleS1: {
      const double c = std::cos(theta), s = std::sin(theta);
      out << c * z.coords[0] - s * z.coords[1], s * z.coords[0] + c * z.coords[1];
      break;
    }
    case ManifoldType::SphereS2: {
      if (!spec.axis) throw ValidationError("sphere warp requires a rotation axis");
      // Rodrigues: R v = v cosθ + (u×v) sinθ + u (u·v)(1−cosθ).
      const Eigen::Vector3d u = *spec.axis;
      const Eigen::Vector3d v = z.coords;
      out = v * std::cos(theta) + u.cross(v) * std::sin(theta) +
            u * (u.dot(v)) * (1.0 - std::cos(theta));
      break;
    }
    case ManifoldType::Torus:
      throw KindMismatchError("no warp construction is available on tori");
  }
  project_coords(z.kind, out);
  return {z.kind, out};
}

}  // namespace

ManifoldPoint warp_apply(const WarpSpec& spec, const CostFunction& cost,
                         const ManifoldPoint& z) {
  if (!(cost.kind() == z.kind))
    throw KindMismatchError("warp_apply: point is not on the cost's manifold");
  const double phi = cost.eval(z);
  if (phi <= spec.gamma) return z;
  return rotate_point(spec, z, phi);
}

double warp_jacobian_det(const WarpSpec& spec, const CostFunction& cost,
                         const ManifoldPoint& z, double fd_step) {
  const double phi = cost.eval(z);
  if (phi <= spec.gamma) return 1.0;
  const Eigen::VectorXd gz = generator_times(spec, z);
  const auto shift = [&](double t) {
    return cost.eval(project_to_manifold(z.kind, z.coords + t * gz));
  };
  const double dphi = (shift(fd_step) - shift(-fd_step)) / (2.0 * fd_step);
  return 1.0 + spec.gain * spec.alpha.da(phi - spec.gamma) * dphi;
}

double warped_cost(const SynergisticFamily& family, int q, const ManifoldPoint& z) {
  if (q < 0 || q >= family.num_modes())
    throw ValidationError("mode index out of range");
  const auto& spec = family.warps[q];
  const double phi = family.cost.eval(z);
  if (phi <= spec.gamma) return phi;
  return family.cost.eval(rotate_point(spec, z, phi));
}

double min_warped(const SynergisticFamily& family, const ManifoldPoint& z) {
  double m = std::numeric_limits<double>::infinity();
  for (int q = 0; q < family.num_modes(); ++q)
    m = std::min(m, warped_cost(family, q, z));
  return m;
}

std::vector<int> argmin_modes(const SynergisticFamily& family, const ManifoldPoint& z,
                              double tie_tol) {
  std::vector<double> vals(family.num_modes());
  double m = std::numeric_limits<double>::infinity();
  for (int q = 0; q < family.num_modes(); ++q) {
    vals[q] = warped_cost(family, q, z);
    m = std::min(m, vals[q]);
  }
  std::vector<int> modes;
  for (int q = 0; q < family.num_modes(); ++q)
    if (vals[q] <= m + tie_tol) modes.push_back(q);
  return modes;
}

ScalarField warped_field(const SynergisticFamily& family, int q) {
  if (q < 0 || q >= family.num_modes())
    throw ValidationError("mode index out of range");
  return {[&family, q](const ManifoldPoint& z) { return warped_cost(family, q, z); },
          family.cost.counters()};
}

double estimate_gain_bound(const CostFunction& cost, const AlphaFn& alpha,
                           double gamma, const WarpSpec& generator_spec,
                           int num_samples) {
  if (num_samples < 1000)
    throw ValidationError("estimate_gain_bound needs at least 1000 samples");
  WarpSpec probe = generator_spec;
  probe.alpha = alpha;
  probe.gamma = gamma;

  double worst = 0.0;
  const double h = tol().fd_step;
  for (const auto& z : sample_points(cost.kind(), num_samples)) {
    const double phi = cost.eval(z);
    if (phi < gamma) continue;
    const Eigen::VectorXd gz = generator_times(probe, z);
    const double fp = cost.eval(project_to_manifold(z.kind, z.coords + h * gz));
    const double fm = cost.eval(project_to_manifold(z.kind, z.coords - h * gz));
    const double dphi = (fp - fm) / (2.0 * h);
    worst = std::max(worst, std::abs(alpha.da(phi - gamma) * dphi));
  }
  if (worst == 0.0) return std::numeric_limits<double>::infinity();
  return tol().gain_safety / worst;
}

std::vector<ManifoldPoint> sample_points(const ManifoldKind& kind, int count) {
  std::vector<ManifoldPoint> pts;
  pts.reserve(count);
  switch (kind.type) {
    case ManifoldType::CircleS1: {
      for (int i = 0; i < count; ++i) {
        const double th = 2.0 * M_PI * i / count;
        Eigen::VectorXd c(2);
        c << std::cos(th), std::sin(th);
        pts.push_back({kind, c});
      }
      break;
    }
    case ManifoldType::SphereS2: {
      // Fibonacci lattice; near-uniform and deterministic.
      const double ga = M_PI * (3.0 - std::sqrt(5.0));
      for (int i = 0; i < count; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / count;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double th = ga * i;
        Eigen::VectorXd c(3);
        c << r * std::cos(th), r * std::sin(th), z;
        pts.push_back({kind, c});
      }
      break;
    }
    case ManifoldType::Torus: {
      const int n = kind.factors;
      const int per = std::max(2, static_cast<int>(std::ceil(
                                      std::pow(double(count), 1.0 / n))));
      std::vector<int> idx(n, 0);
      while (static_cast<int>(pts.size()) < count) {
        Eigen::VectorXd c(2 * n);
        for (int f = 0; f < n; ++f) {
          const double th = 2.0 * M_PI * idx[f] / per;
          c[2 * f] = std::cos(th);
          c[2 * f + 1] = std::sin(th);
        }
        pts.push_back({kind, c});
        int f = 0;
        while (f < n && ++idx[f] == per) idx[f++] = 0;
        if (f == n) break;
      }
      break;
    }
  }
  return pts;
}

}  // namespace hybridopt
