#pragma once

#include <cmath>
#include <random>

#include "hybridopt/critical_points.hpp"
#include "hybridopt/warp.hpp"

namespace hybridopt::testutil {

inline ManifoldPoint circle_point(double theta) {
  Eigen::VectorXd c(2);
  c << std::cos(theta), std::sin(theta);
  return {ManifoldKind::circle(), c};
}

inline ManifoldPoint sphere_point(double azimuth, double elevation) {
  Eigen::VectorXd c(3);
  c << std::cos(elevation) * std::cos(azimuth), std::cos(elevation) * std::sin(azimuth),
      std::sin(elevation);
  return {ManifoldKind::sphere(), c};
}

inline ManifoldPoint random_point(const ManifoldKind& kind, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  while (true) {
    Eigen::VectorXd c(kind.ambient_dim());
    for (int i = 0; i < c.size(); ++i) c[i] = normal(rng);
    bool ok = true;
    const int bs = kind.type == ManifoldType::SphereS2 ? 3 : 2;
    for (int off = 0; off < c.size(); off += bs)
      if (c.segment(off, bs).norm() < 1e-6) ok = false;
    if (ok) return project_to_manifold(kind, c);
  }
}

inline TangentVector random_tangent(const ManifoldPoint& z, double max_norm,
                                    std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> scale(0.0, max_norm);
  const auto frame = tangent_frame(z);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(z.coords.size());
  for (const auto& e : frame) v += normal(rng) * e.vec;
  const double n = v.norm();
  if (n < 1e-12) return {z, Eigen::VectorXd::Zero(z.coords.size())};
  return {z, v * (scale(rng) / n)};
}

/// The worked S¹ family: φ = 1 − z₁, α(r) = r², γ = 1, gains ±1/2.
inline std::shared_ptr<SynergisticFamily> circle_family(double delta = 0.2,
                                                        double k1 = 0.5,
                                                        double k2 = -0.5) {
  auto family = std::make_shared<SynergisticFamily>();
  family->cost = builtin_cost(ManifoldKind::circle(), "circle_1_minus_z1");
  family->gamma = 1.0;
  family->delta = delta;
  for (double k : {k1, k2}) {
    WarpSpec w;
    w.gain = k;
    w.alpha = alpha_by_name("square");
    w.gamma = 1.0;
    family->warps.push_back(std::move(w));
  }
  return family;
}

/// The worked S² family: φ = 1 − z₃, axis u = (0,1,0), gains ±1/2.
inline std::shared_ptr<SynergisticFamily> sphere_family(double delta = 0.2) {
  auto family = std::make_shared<SynergisticFamily>();
  family->cost = builtin_cost(ManifoldKind::sphere(), "sphere_1_minus_z3");
  family->gamma = 1.0;
  family->delta = delta;
  for (double k : {0.5, -0.5}) {
    WarpSpec w;
    w.gain = k;
    w.alpha = alpha_by_name("square");
    w.gamma = 1.0;
    w.axis = Eigen::Vector3d(0.0, 1.0, 0.0);
    family->warps.push_back(std::move(w));
  }
  return family;
}

/// Root of θ + k·cos²θ = π on (π/2, 3π/2) by bisection; with k = 1/2 this is
/// the non-optimal critical angle of the first warped cost of the S¹ family.
inline double circle_warped_critical_angle(double k = 0.5) {
  auto f = [k](double th) { return th + k * std::cos(th) * std::cos(th) - M_PI; };
  double lo = M_PI / 2 + 1e-9, hi = 3 * M_PI / 2 - 1e-9;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(lo) * f(mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace hybridopt::testutil
