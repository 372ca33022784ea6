#include "hybridopt/hybrid.hpp"

#include <cmath>

namespace hybridopt {

ManifoldPoint StateLayout::block_point(const State& x, size_t block) const {
  const auto& b = manifold_blocks.at(block);
  return {b.kind, x.segment(b.offset, b.kind.ambient_dim())};
}

void StateLayout::project(State& x) const {
  for (const auto& b : manifold_blocks) {
    Eigen::VectorXd seg = x.segment(b.offset, b.kind.ambient_dim());
    project_coords(b.kind, seg);
    x.segment(b.offset, b.kind.ambient_dim()) = seg;
  }
}

double StateLayout::violation(const State& x) const {
  double worst = 0.0;
  for (const auto& b : manifold_blocks)
    worst = std::max(worst, manifold_violation(
                                b.kind, x.segment(b.offset, b.kind.ambient_dim())));
  return worst;
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::TimeLimit: return "time_limit";
    case Termination::JumpLimit: return "jump_limit";
    case Termination::Converged: return "converged";
    case Termination::Stalled: return "stalled";
  }
  return "?";
}

namespace {

// One classical RK4 step in ambient coordinates. Stage arguments are
// retracted onto the manifold blocks before each field evaluation; discrete
// entries are restored exactly afterwards.
State rk4_step(const HybridSystemDef& sys, const State& x, HybridTime ht, double h) {
  const auto eval = [&](const State& s, double dt) {
    State p = s;
    sys.layout.project(p);
    return sys.flow_field(p, {ht.t + dt, ht.j});
  };
  const State k1 = eval(x, 0.0);
  const State k2 = eval(x + 0.5 * h * k1, 0.5 * h);
  const State k3 = eval(x + 0.5 * h * k2, 0.5 * h);
  const State k4 = eval(x + h * k3, h);
  State out = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  sys.layout.project(out);
  for (int idx : sys.layout.discrete_indices) out[idx] = x[idx];
  if (sys.post_flow_step) sys.post_flow_step(out, x, h);
  return out;
}

}  // namespace

HybridArc solve(const HybridSystemDef& sys, const State& x0, const SolverConfig& cfg) {
  if (cfg.step <= 0.0 || cfg.step > 1e-1)
    throw ValidationError("solver step must lie in (0, 0.1]");
  if (cfg.max_t <= 0.0 || cfg.max_jumps <= 0 || cfg.record_stride < 1 ||
      cfg.boundary_tol < 0.0)
    throw ValidationError("invalid solver configuration");

  State x = x0;
  if (sys.layout.violation(x) > tol().point_norm)
    throw ValidationError("initial state violates a manifold invariant");
  sys.layout.project(x);

  HybridTime ht{0.0, 0};
  if (!sys.in_flow_set(x, ht) && !sys.in_jump_set(x, ht))
    throw InfeasibleStartError("initial state lies outside C \xE2\x88\xAA D");

  HybridArc arc;
  const auto record = [&](const State& s) {
    arc.times.push_back(ht);
    arc.states.push_back(s);
  };
  record(x);
  arc.max_manifold_violation = sys.layout.violation(x);

  const auto should_jump = [&](const State& s) {
    if (!sys.in_jump_set(s, ht)) return false;
    if (cfg.jump_policy == JumpPolicy::JumpFirst) return true;
    return !sys.in_flow_set(s, ht);
  };

  int steps_since_record = 0;
  double converged_since = -1.0;  // start of the current in-tolerance span

  while (true) {
    if (should_jump(x)) {
      if (ht.j >= cfg.max_jumps) {
        arc.termination = Termination::JumpLimit;
        break;
      }
      // Ensure the pre-jump state is recorded so t stays constant and j
      // increments by exactly one across the recorded pair.
      if (steps_since_record != 0) {
        record(x);
        steps_since_record = 0;
      }
      x = sys.jump_map(x, ht);
      sys.layout.project(x);
      ht.j += 1;
      record(x);
      arc.jump_indices.push_back(static_cast<int>(arc.size()) - 1);
      arc.max_manifold_violation =
          std::max(arc.max_manifold_violation, sys.layout.violation(x));
      continue;
    }

    if (ht.t >= cfg.max_t - 1e-15) {
      arc.termination = Termination::TimeLimit;
      break;
    }
    if (!sys.in_flow_set(x, ht))
      throw EscapeError("state left the flow set without entering the jump set",
                        ht.t, ht.j);

    double h = std::min(cfg.step, cfg.max_t - ht.t);
    State next = rk4_step(sys, x, ht, h);

    if (cfg.refine_jump_time && cfg.jump_policy == JumpPolicy::JumpFirst &&
        !sys.in_jump_set(x, ht) &&
        sys.in_jump_set(next, {ht.t + h, ht.j})) {
      // Bisect the entry time into D; the hysteresis gap makes the exact
      // crossing non-critical, so a fixed iteration budget is enough.
      double lo = 0.0, hi = h;
      for (int it = 0; it < 40 && (hi - lo) > 1e-12 * cfg.step; ++it) {
        const double mid = 0.5 * (lo + hi);
        const State xm = rk4_step(sys, x, ht, mid);
        if (sys.in_jump_set(xm, {ht.t + mid, ht.j}))
          hi = mid;
        else
          lo = mid;
      }
      h = hi;
      next = rk4_step(sys, x, ht, h);
    }

    x = std::move(next);
    ht.t += h;
    arc.max_manifold_violation =
        std::max(arc.max_manifold_violation, sys.layout.violation(x));

    const bool in_C_now = sys.in_flow_set(x, ht);
    const bool in_D_now = sys.in_jump_set(x, ht);
    if (!in_C_now && !in_D_now)
      throw EscapeError("flow escaped C \xE2\x88\xAA D", ht.t, ht.j);

    const bool jump_pending =
        in_D_now && (cfg.jump_policy == JumpPolicy::JumpFirst || !in_C_now);
    if (++steps_since_record >= cfg.record_stride || jump_pending ||
        ht.t >= cfg.max_t - 1e-15) {
      record(x);
      steps_since_record = 0;
    }

    if (cfg.target) {
      const ManifoldPoint z = sys.layout.block_point(x, 0);
      const ManifoldPoint tgt{z.kind, *cfg.target};
      if (distance(z, tgt) < cfg.target_tol) {
        if (converged_since < 0.0) converged_since = ht.t;
        if (ht.t - converged_since >= 1.0) {
          if (steps_since_record != 0) record(x);
          arc.termination = Termination::Converged;
          break;
        }
      } else {
        converged_since = -1.0;
      }
    }
  }

  if (arc.times.empty() || arc.times.back().t != ht.t ||
      arc.times.back().j != ht.j)
    record(x);
  return arc;
}

}  // namespace hybridopt
