#pragma once

namespace hybridopt {

/// Central record of the numeric tolerances shared by the geometry kernels,
/// the solver, and the property tests. Values are defaults; call sites that
/// need a different tolerance take it as a parameter.
struct Tolerances {
  double point_norm = 1e-9;        // unit-norm manifold invariant
  double tangency = 1e-9;          // orthogonality of tangent vectors
  double degenerate_block = 1e-12; // smallest block norm project() accepts
  double fd_step = 1e-5;           // central-difference step
  double mode_tie = 1e-12;         // absolute tie tolerance in argmin_modes
  double dedup_radius = 1e-3;      // critical-point dedup distance
  double grad_accept = 1e-6;       // gradient norm accepted as "critical"
  double refine_tol = 1e-8;        // residual target of critical-point refinement
  double minimizer_radius = 1e-2;  // neighborhood of A excluded from gap search
  double gain_safety = 0.9;        // safety factor in the gain-bound estimate
};

inline const Tolerances& tol() {
  static const Tolerances t{};
  return t;
}

}  // namespace hybridopt
