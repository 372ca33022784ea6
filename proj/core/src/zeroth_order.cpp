#include "hybridopt/zeroth_order.hpp"

#include <cmath>
#include <numeric>

namespace hybridopt {

FrequencyReport validate_frequencies(const std::vector<Rational>& omega_tilde) {
  FrequencyReport report;
  for (const auto& w : omega_tilde)
    if (w.num <= 0 || w.den <= 0)
      throw ValidationError("frequency ratios must be positive rationals");

  const auto equals_k_times = [](const Rational& a, const Rational& b, long long k) {
    // a == k*b  <=>  a.num * b.den == k * b.num * a.den (all positive).
    return a.num * b.den == k * b.num * a.den;
  };
  const int n = static_cast<int>(omega_tilde.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (long long k : {1LL, 2LL, 3LL}) {
        if (equals_k_times(omega_tilde[i], omega_tilde[j], k)) {
          report.ok = false;
          report.violations.push_back(
              "omega_tilde[" + std::to_string(i) + "] = " + std::to_string(k) +
              " * omega_tilde[" + std::to_string(j) + "]");
        }
      }
    }
  }
  return report;
}

Eigen::VectorXd DitherParams::initial_chi() const {
  if (chi0.size() > 0) return chi0;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * dims());
  for (int i = 0; i < dims(); ++i) c[2 * i] = 1.0;
  return c;
}

void DitherParams::validate(const ManifoldKind& optimization_manifold) const {
  if (epsilon_a <= 0.0 || epsilon_p <= 0.0 || omega_hat <= 0.0)
    throw ValidationError("dither parameters must be positive");
  const int n = optimization_manifold.intrinsic_dim();
  if (dims() != n)
    throw ValidationError("need one frequency ratio per intrinsic dimension");
  const auto report = validate_frequencies(omega_tilde);
  if (!report.ok) {
    std::string msg = "frequency condition violated:";
    for (const auto& v : report.violations) msg += " " + v;
    throw ValidationError(msg);
  }
  if (epsilon_a * std::sqrt(double(n)) >= injectivity_radius(optimization_manifold))
    throw ValidationError("epsilon_a * sqrt(n) must stay below the injectivity radius");
  if (chi0.size() > 0) {
    if (chi0.size() != 2 * n) throw ValidationError("chi0 has wrong dimension");
    if (manifold_violation(ManifoldKind::torus(n), chi0) > tol().point_norm)
      throw ValidationError("chi0 pairs must have unit norm");
  }
}

Eigen::VectorXd dither_amplitudes(const Eigen::VectorXd& chi) {
  const int n = static_cast<int>(chi.size()) / 2;
  Eigen::VectorXd hat(n);
  for (int i = 0; i < n; ++i) hat[i] = chi[2 * i];
  return hat;
}

Eigen::VectorXd oscillator_step(const Eigen::VectorXd& chi, const DitherParams& params,
                                double h) {
  if (h < 0.0) throw ValidationError("oscillator_step needs h >= 0");
  const int n = params.dims();
  Eigen::VectorXd out(chi.size());
  for (int i = 0; i < n; ++i) {
    const double theta = params.omega_tilde[i].value() * params.omega_hat * h /
                         params.epsilon_p;
    const double c = std::cos(theta), s = std::sin(theta);
    const double a = chi[2 * i], b = chi[2 * i + 1];
    // exp(Ω(ω)h/ε_p) with Ω(ω) = [[0, ω], [−ω, 0]].
    double na = c * a + s * b;
    double nb = -s * a + c * b;
    const double norm = std::hypot(na, nb);
    out[2 * i] = na / norm;
    out[2 * i + 1] = nb / norm;
  }
  return out;
}

double oscillator_common_period(const DitherParams& params) {
  // Phase rates are (num_i/den_i)·ω̂/ε_p; the joint period is 2π over the
  // gcd of the rates, i.e. 2π·ε_p·lcm(den)/(ω̂·gcd(num)).
  long long g = 0, l = 1;
  for (const auto& w : params.omega_tilde) {
    g = std::gcd(g, w.num);
    l = std::lcm(l, w.den);
  }
  return 2.0 * M_PI * params.epsilon_p * static_cast<double>(l) /
         (params.omega_hat * static_cast<double>(g));
}

StateLayout zeroth_order_layout(const ManifoldKind& kind) {
  const int d = kind.ambient_dim();
  const int n = kind.intrinsic_dim();
  StateLayout layout;
  layout.manifold_blocks.push_back({kind, 0});
  layout.manifold_blocks.push_back({ManifoldKind::torus(n), d + 1});
  layout.discrete_indices.push_back(d);
  layout.dim = d + 1 + 2 * n;
  return layout;
}

State pack_zo_state(const StateLayout& layout, const ManifoldPoint& z, int q,
                    const Eigen::VectorXd& chi) {
  State x = State::Zero(layout.dim);
  x.segment(0, z.coords.size()) = z.coords;
  set_mode(layout, x, q);
  x.segment(layout.manifold_blocks[1].offset, chi.size()) = chi;
  return x;
}

State zo_flow_field(const SynergisticFamily& family, const StateLayout& layout,
                    const DitherParams& params, const State& x) {
  const ManifoldPoint z = layout.block_point(x, 0);
  const int q = mode_of(layout, x);
  const int chi_off = layout.manifold_blocks[1].offset;
  const int n = params.dims();
  const Eigen::VectorXd chi = x.segment(chi_off, 2 * n);
  const Eigen::VectorXd hat = dither_amplitudes(chi);

  const auto frame = tangent_frame(z);
  Eigen::VectorXd dir = Eigen::VectorXd::Zero(z.coords.size());
  for (int i = 0; i < n; ++i) dir += hat[i] * frame[i].vec;

  if (params.epsilon_a * hat.norm() >= injectivity_radius(z.kind))
    throw ValidationError("dither excursion exceeds the injectivity radius");

  // Single measurement of the warped cost at the dithered point.
  const ManifoldPoint probe = exp_map(z, {z, params.epsilon_a * dir});
  const double measured = warped_cost(family, q, probe);

  State dx = State::Zero(x.size());
  dx.segment(0, dir.size()) = -(2.0 / params.epsilon_a) * measured * dir;
  for (int i = 0; i < n; ++i) {
    const double rate = params.omega_tilde[i].value() * params.omega_hat /
                        params.epsilon_p;
    const double a = chi[2 * i], b = chi[2 * i + 1];
    dx[chi_off + 2 * i] = rate * b;
    dx[chi_off + 2 * i + 1] = -rate * a;
  }
  return dx;
}

TangentVector averaged_zo_field(const SynergisticFamily& family, int q,
                                const ManifoldPoint& z, const DitherParams& params,
                                int nodes) {
  const double period = oscillator_common_period(params);
  const auto frame = tangent_frame(z);
  const Eigen::VectorXd chi_start = params.initial_chi();
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(z.coords.size());
  for (int k = 0; k < nodes; ++k) {
    const double u = period * (k + 0.5) / nodes;
    const Eigen::VectorXd hat =
        dither_amplitudes(oscillator_step(chi_start, params, u));
    Eigen::VectorXd dir = Eigen::VectorXd::Zero(z.coords.size());
    for (int i = 0; i < params.dims(); ++i) dir += hat[i] * frame[i].vec;
    const ManifoldPoint probe = exp_map(z, {z, params.epsilon_a * dir});
    acc += -(2.0 / params.epsilon_a) * warped_cost(family, q, probe) * dir;
  }
  return {z, acc / double(nodes)};
}

double max_step_hint(const DitherParams& params) {
  double max_ratio = 0.0;
  for (const auto& w : params.omega_tilde) max_ratio = std::max(max_ratio, w.value());
  return 2.0 * M_PI * params.epsilon_p / (params.omega_hat * max_ratio * 20.0);
}

HybridSystemDef build_H0(std::shared_ptr<const SynergisticFamily> family,
                         const DitherParams& params, const SolverConfig& cfg,
                         double boundary_tol) {
  if (!family || family->num_modes() < 2 || !(family->delta > 0.0))
    throw ValidationError("build_H0 requires a validated family with delta > 0");
  params.validate(family->cost.kind());
  if (cfg.step > max_step_hint(params))
    throw ValidationError(
        "solver step too large to resolve the dither (need >= 20 steps per period)");

  HybridSystemDef sys;
  sys.layout = zeroth_order_layout(family->cost.kind());
  const StateLayout layout = sys.layout;
  const DitherParams p = params;
  sys.flow_field = [family, layout, p](const State& x, HybridTime) {
    return zo_flow_field(*family, layout, p, x);
  };
  sys.jump_map = [family, layout, boundary_tol](const State& x, HybridTime) {
    return apply_jump_delta_system(*family, layout, x, boundary_tol);
  };
  sys.in_flow_set = [family, layout, boundary_tol](const State& x, HybridTime) {
    return delta_in_flow_set(*family, layout, x, boundary_tol);
  };
  sys.in_jump_set = [family, layout, boundary_tol](const State& x, HybridTime) {
    return delta_in_jump_set(*family, layout, x, boundary_tol);
  };
  sys.jump_candidates = [family, layout](const State& x, HybridTime) {
    return jump_candidates_delta_system(*family, layout, x);
  };
  // The RK4 step integrates (z, χ) jointly; χ is then overwritten with the
  // exact rotation so the torus factor never drifts.
  const int chi_off = layout.manifold_blocks[1].offset;
  const int chi_len = 2 * p.dims();
  sys.post_flow_step = [p, chi_off, chi_len](State& x, const State& before, double h) {
    x.segment(chi_off, chi_len) =
        oscillator_step(before.segment(chi_off, chi_len), p, h);
  };
  return sys;
}

}  // namespace hybridopt
