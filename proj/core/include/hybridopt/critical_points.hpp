#pragma once

#include "hybridopt/warp.hpp"

namespace hybridopt {

/// A numerically estimated critical point: location, value, and the
/// residual norm of the finite-difference gradient at it.
struct CriticalPoint {
  ManifoldPoint point;
  double value = 0.0;
  double gradient_norm = 0.0;
};

struct CriticalSetEstimate {
  std::vector<CriticalPoint> points;
  std::vector<CriticalPoint> rejected;  // seeds whose refinement stalled
  double tolerance = 0.0;               // residual bound used for acceptance
  bool degenerate = false;              // near-constant field, grid-dependent output
};

/// Seeds a damped Newton refinement of the finite-difference gradient field
/// from a deterministic grid (grid_density points per intrinsic dimension),
/// deduplicates survivors within tol().dedup_radius, and reports every
/// non-convergent seed in `rejected` rather than dropping it.
CriticalSetEstimate find_critical_points(const ScalarField& f, const ManifoldKind& kind,
                                         int grid_density = 64,
                                         double refine_tol = tol().refine_tol,
                                         int max_refine_iters = 60);

/// Estimate of the synergy gap μ(S): the min over modes q and critical
/// points z of φ̃_q outside a neighborhood of the estimated minimizer set,
/// of max_p (φ̃_q(z) − φ̃_p(z)). δ must lie strictly below it. Returns +inf
/// and sets `no_candidates` when no critical point survives outside A.
struct SynergyGapEstimate {
  double mu = 0.0;
  bool no_candidates = false;
  std::vector<std::pair<int, CriticalPoint>> candidates;  // (mode, point)
};
SynergyGapEstimate estimate_synergy_gap(const SynergisticFamily& family,
                                        int grid_density = 64);

/// Everything validate_family certifies about a family in one pass: the
/// estimated minimum/minimizers of the cost, per-mode non-optimal critical
/// points, the synergy gap, and the sampled gain bound.
struct FamilyCertificate {
  double min_value = 0.0;
  std::vector<ManifoldPoint> minimizers;
  double mu = 0.0;
  bool mu_no_candidates = false;
  double gain_bound = 0.0;
  double resolved_delta = 0.0;
  std::vector<std::pair<int, CriticalPoint>> nonoptimal_critical_points;
};

/// Checks the warp shape conditions (α(0) = 0, α′(0) = 0, α′ > −1 on the
/// observed range, unit axis), the gain bound, γ between the estimated
/// minimum and second critical value, and δ ∈ (0, μ̂). A δ of exactly 0
/// requests auto-resolution to min(0.2, 0.8·μ̂); the resolved value is
/// written back into the certificate. Throws ValidationError on failure.
FamilyCertificate validate_family(SynergisticFamily& family, bool resolve_delta_auto,
                                  int grid_density = 64);

/// Resolution rule for "delta: auto".
inline double auto_delta(double mu_hat) { return std::min(0.2, 0.8 * mu_hat); }

}  // namespace hybridopt
