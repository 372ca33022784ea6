#pragma once

#include "hybridopt/switching.hpp"

namespace hybridopt {

/// Zeroth-order hybrid dynamics: a torus oscillator drives geodesic dithers,
/// and the flow direction is built from cost measurements alone. State
/// vector is [z | q | χ] with χ ∈ Tⁿ stored as n unit pairs.

/// Exact frequency ratio, kept rational so the forbidden relations of the
/// frequency condition can be checked without rounding.
struct Rational {
  long long num = 1;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct FrequencyReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Exact check of ω̃ᵢ ∉ {ω̃ⱼ, 2ω̃ⱼ, 3ω̃ⱼ} for every ordered pair i ≠ j.
/// Throws ValidationError on nonpositive entries.
FrequencyReport validate_frequencies(const std::vector<Rational>& omega_tilde);

struct DitherParams {
  double epsilon_a = 0.05;  // dither amplitude (geodesic length)
  double epsilon_p = 0.01;  // oscillator time-scale contraction
  double omega_hat = 1.0;   // base frequency
  std::vector<Rational> omega_tilde;  // one ratio per intrinsic dimension
  Eigen::VectorXd chi0;     // initial oscillator state; empty = all pairs (1, 0)

  int dims() const { return static_cast<int>(omega_tilde.size()); }
  Eigen::VectorXd initial_chi() const;
  /// Throws unless frequencies validate, gains are positive, and
  /// ε_a·√n stays below the injectivity radius.
  void validate(const ManifoldKind& optimization_manifold) const;
};

/// χ̂: the vector stacking the first component of every oscillator pair.
Eigen::VectorXd dither_amplitudes(const Eigen::VectorXd& chi);

/// Advance χ by the exact rotation angle ωᵢ·h/ε_p per pair (ωᵢ = ω̃ᵢ·ω̂),
/// re-normalizing each pair.
Eigen::VectorXd oscillator_step(const Eigen::VectorXd& chi, const DitherParams& params,
                                double h);

/// Time for the oscillator phases to simultaneously complete whole turns.
double oscillator_common_period(const DitherParams& params);

StateLayout zeroth_order_layout(const ManifoldKind& kind);

State pack_zo_state(const StateLayout& layout, const ManifoldPoint& z, int q,
                    const Eigen::VectorXd& chi);

/// Flow map of H₀: the z block moves by
///   −(2/ε_a)·φ̃_q(exp_z(ε_a Σᵢ χ̂ᵢ eᵢ))·Σⱼ χ̂ⱼ eⱼ
/// (one warped-cost measurement per call, no derivative oracle), q is
/// frozen, and χ rotates at rate Ψ(ω)/ε_p.
State zo_flow_field(const SynergisticFamily& family, const StateLayout& layout,
                    const DitherParams& params, const State& x);

/// Average of the z-component of the flow map over one oscillator period at
/// fixed (z, q), by quadrature with `nodes` uniform samples. This is the
/// field the first-order dynamics approximate to O(ε_a²).
TangentVector averaged_zo_field(const SynergisticFamily& family, int q,
                                const ManifoldPoint& z, const DitherParams& params,
                                int nodes = 4096);

/// Largest integration step that still resolves the fastest dither period
/// with at least 20 samples.
double max_step_hint(const DitherParams& params);

/// Assemble H₀ = {C₀, F₀, D₀, G₀}. The jump leaves z and χ untouched; the
/// flow/jump sets ignore χ entirely. cfg.step is checked against
/// max_step_hint. Validation failures throw.
HybridSystemDef build_H0(std::shared_ptr<const SynergisticFamily> family,
                         const DitherParams& params, const SolverConfig& cfg,
                         double boundary_tol = 0.0);

}  // namespace hybridopt
