#include "hybridopt/critical_points.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hybridopt {

namespace {

// Components of the fd gradient of f at z in the local orthonormal frame.
Eigen::VectorXd grad_components(const ScalarField& f, const ManifoldPoint& z) {
  const auto frame = tangent_frame(z);
  const int n = static_cast<int>(frame.size());
  Eigen::VectorXd g(n);
  const double h = tol().fd_step;
  for (int i = 0; i < n; ++i) {
    const double fp = f.f(exp_map(z, {z, h * frame[i].vec}));
    const double fm = f.f(exp_map(z, {z, -h * frame[i].vec}));
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

ManifoldPoint step_in_frame(const ManifoldPoint& z, const Eigen::VectorXd& xi) {
  const auto frame = tangent_frame(z);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(z.coords.size());
  for (size_t i = 0; i < frame.size(); ++i) v += xi[static_cast<int>(i)] * frame[i].vec;
  return exp_map(z, {z, v});
}

// Damped Newton iteration on the fd-gradient field. Returns the refined
// point and its residual; convergence is residual <= refine_tol.
std::pair<ManifoldPoint, double> refine_seed(const ScalarField& f, ManifoldPoint z,
                                             double refine_tol, int max_iters) {
  const int n = z.kind.intrinsic_dim();
  const double jac_step = 1e-4;
  double res = grad_components(f, z).norm();
  for (int it = 0; it < max_iters; ++it) {
    const Eigen::VectorXd g0 = grad_components(f, z);
    res = g0.norm();
    if (res <= refine_tol) break;

    Eigen::MatrixXd J(n, n);
    for (int c = 0; c < n; ++c) {
      Eigen::VectorXd xi = Eigen::VectorXd::Zero(n);
      xi[c] = jac_step;
      const Eigen::VectorXd gp = grad_components(f, step_in_frame(z, xi));
      xi[c] = -jac_step;
      const Eigen::VectorXd gm = grad_components(f, step_in_frame(z, xi));
      J.col(c) = (gp - gm) / (2.0 * jac_step);
    }

    Eigen::VectorXd step;
    const auto lu = J.fullPivLu();
    if (lu.isInvertible()) {
      step = lu.solve(-g0);
    } else {
      step = -g0;  // gradient-norm descent fallback for singular Hessians
    }
    const double max_step = 0.2;
    if (step.norm() > max_step) step *= max_step / step.norm();

    // Backtrack on the residual to keep the iteration from diverging.
    double scale = 1.0;
    for (int bt = 0; bt < 8; ++bt) {
      const ManifoldPoint cand = step_in_frame(z, scale * step);
      if (grad_components(f, cand).norm() < res) {
        z = cand;
        break;
      }
      scale *= 0.5;
      if (bt == 7) return {z, res};  // stalled
    }
  }
  res = grad_components(f, z).norm();
  return {z, res};
}

}  // namespace

CriticalSetEstimate find_critical_points(const ScalarField& f, const ManifoldKind& kind,
                                         int grid_density, double refine_tol,
                                         int max_refine_iters) {
  if (grid_density < 64)
    throw ValidationError("find_critical_points needs grid_density >= 64");
  if (max_refine_iters < 1)
    throw ValidationError("find_critical_points needs a positive iteration cap");

  const int n = kind.intrinsic_dim();
  int seed_count = 1;
  for (int i = 0; i < n; ++i) seed_count *= grid_density;
  seed_count = std::min(seed_count, 8192);

  CriticalSetEstimate out;
  out.tolerance = refine_tol;

  std::vector<CriticalPoint> survivors;
  for (const auto& seed : sample_points(kind, seed_count)) {
    auto [z, res] = refine_seed(f, seed, refine_tol, max_refine_iters);
    CriticalPoint cp{z, f.f(z), res};
    if (res <= refine_tol)
      survivors.push_back(std::move(cp));
    else
      out.rejected.push_back(std::move(cp));
  }

  // Deterministic dedup: sort by residual then coordinates, greedy keep.
  auto key_less = [](const CriticalPoint& a, const CriticalPoint& b) {
    if (a.gradient_norm != b.gradient_norm) return a.gradient_norm < b.gradient_norm;
    for (int i = 0; i < a.point.coords.size(); ++i)
      if (a.point.coords[i] != b.point.coords[i])
        return a.point.coords[i] < b.point.coords[i];
    return false;
  };
  std::sort(survivors.begin(), survivors.end(), key_less);
  for (const auto& cand : survivors) {
    bool dup = false;
    for (const auto& kept : out.points)
      if (distance(cand.point, kept.point) < tol().dedup_radius) {
        dup = true;
        break;
      }
    if (!dup) out.points.push_back(cand);
  }

  // A near-constant gradient field keeps a grid-dependent fraction of the
  // seeds; flag rather than guess.
  if (!survivors.empty() &&
      out.points.size() > std::max<size_t>(8, survivors.size() / 4))
    out.degenerate = true;

  return out;
}

SynergyGapEstimate estimate_synergy_gap(const SynergisticFamily& family,
                                        int grid_density) {
  const ManifoldKind kind = family.cost.kind();

  // Estimated minimizer set A of the raw cost.
  const auto crit_phi = find_critical_points(as_field(family.cost), kind, grid_density);
  double min_value = std::numeric_limits<double>::infinity();
  for (const auto& cp : crit_phi.points) min_value = std::min(min_value, cp.value);
  std::vector<ManifoldPoint> minimizers;
  for (const auto& cp : crit_phi.points)
    if (cp.value <= min_value + 1e-6) minimizers.push_back(cp.point);

  SynergyGapEstimate out;
  out.mu = std::numeric_limits<double>::infinity();
  for (int q = 0; q < family.num_modes(); ++q) {
    const auto crit_q = find_critical_points(warped_field(family, q), kind, grid_density);
    for (const auto& cp : crit_q.points) {
      double dist_to_A = std::numeric_limits<double>::infinity();
      for (const auto& a : minimizers)
        dist_to_A = std::min(dist_to_A, distance(cp.point, a));
      if (dist_to_A <= tol().minimizer_radius) continue;

      const double vq = warped_cost(family, q, cp.point);
      double best_other = -std::numeric_limits<double>::infinity();
      for (int p = 0; p < family.num_modes(); ++p)
        best_other = std::max(best_other, vq - warped_cost(family, p, cp.point));
      out.mu = std::min(out.mu, best_other);
      out.candidates.emplace_back(q, cp);
    }
  }
  if (out.candidates.empty()) {
    out.no_candidates = true;
    out.mu = std::numeric_limits<double>::infinity();
  }
  return out;
}

FamilyCertificate validate_family(SynergisticFamily& family, bool resolve_delta_auto,
                                  int grid_density) {
  if (family.num_modes() < 2)
    throw ValidationError("a synergistic family needs at least two modes");

  // Shape conditions on alpha, checked at 0 and on a sampled range.
  for (const auto& w : family.warps) {
    if (std::abs(w.alpha.a(0.0)) > 1e-12 || std::abs(w.alpha.da(0.0)) > 1e-12)
      throw ValidationError("alpha must satisfy alpha(0) = 0 and alpha'(0) = 0");
    if (w.gamma != family.gamma)
      throw ValidationError("all warps must share the family threshold gamma");
    if (family.cost.kind().type == ManifoldType::SphereS2) {
      if (!w.axis) throw ValidationError("sphere warps require a rotation axis");
      if (std::abs(w.axis->norm() - 1.0) > tol().point_norm)
        throw ValidationError("warp axis must be a unit vector");
    }
  }

  FamilyCertificate cert;

  // Range of phi over a sample; also checks boundedness.
  double phi_max = -std::numeric_limits<double>::infinity();
  for (const auto& z : sample_points(family.cost.kind(), 4096)) {
    const double v = family.cost.eval(z);
    if (!std::isfinite(v)) throw ValidationError("cost is not finite on the manifold");
    phi_max = std::max(phi_max, v);
  }
  for (const auto& w : family.warps) {
    const int steps = 256;
    for (int i = 0; i <= steps; ++i) {
      const double r = (phi_max - family.gamma) * i / steps;
      if (r < 0.0) break;
      if (w.alpha.da(r) <= -1.0)
        throw ValidationError("alpha'(r) must stay above -1 on [0, phi_max - gamma]");
    }
  }

  const auto crit_phi =
      find_critical_points(as_field(family.cost), family.cost.kind(), grid_density);
  if (crit_phi.points.empty())
    throw ValidationError("no critical points of the cost could be estimated");
  double min_value = std::numeric_limits<double>::infinity();
  double second_value = std::numeric_limits<double>::infinity();
  for (const auto& cp : crit_phi.points) min_value = std::min(min_value, cp.value);
  for (const auto& cp : crit_phi.points)
    if (cp.value > min_value + 1e-6) second_value = std::min(second_value, cp.value);
  cert.min_value = min_value;
  for (const auto& cp : crit_phi.points)
    if (cp.value <= min_value + 1e-6) cert.minimizers.push_back(cp.point);

  if (!(family.gamma > min_value) || !(family.gamma < second_value))
    throw ValidationError(
        "gamma must lie strictly between the estimated minimum and the second "
        "critical value");

  cert.gain_bound = estimate_gain_bound(family.cost, family.warps[0].alpha,
                                        family.gamma, family.warps[0], 4096);
  for (const auto& w : family.warps)
    if (std::abs(w.gain) >= cert.gain_bound)
      throw ValidationError("warp gain exceeds the estimated admissible bound");

  const auto gap = estimate_synergy_gap(family, grid_density);
  cert.mu = gap.mu;
  cert.mu_no_candidates = gap.no_candidates;
  cert.nonoptimal_critical_points = gap.candidates;

  if (resolve_delta_auto) family.delta = auto_delta(gap.mu);
  cert.resolved_delta = family.delta;
  if (!(family.delta > 0.0) || !(family.delta < gap.mu))
    throw ValidationError("delta must lie in (0, mu(S))");

  return cert;
}

}  // namespace hybridopt
