#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hybridopt/first_order.hpp"
#include "test_util.hpp"

using namespace hybridopt;
using namespace hybridopt::testutil;

namespace {

SolverConfig fo_config(double max_t = 50.0, const Eigen::VectorXd* target = nullptr) {
  SolverConfig cfg;
  cfg.step = 0.01;
  cfg.max_t = max_t;
  cfg.max_jumps = 25;
  if (target) cfg.target = *target;
  return cfg;
}

Eigen::VectorXd circle_min() {
  Eigen::VectorXd t(2);
  t << 1.0, 0.0;
  return t;
}

Eigen::VectorXd sphere_min() {
  Eigen::VectorXd t(3);
  t << 0.0, 0.0, 1.0;
  return t;
}

}  // namespace

TEST_CASE("flow field vanishes at the minimizer") {
  auto family = circle_family();
  const auto layout = first_order_layout(ManifoldKind::circle());
  for (int q : {0, 1}) {
    const State x = pack_fo_state(layout, circle_point(0.0), q);
    CHECK(fo_flow_field(*family, layout, x).norm() < 1e-6);
  }
}

TEST_CASE("flow field matches the analytic gradient in the unwarped region") {
  auto family = circle_family();
  const auto layout = first_order_layout(ManifoldKind::circle());
  const auto z = circle_point(M_PI / 2);
  const State x = pack_fo_state(layout, z, 0);
  const State dx = fo_flow_field(*family, layout, x);
  const Eigen::VectorXd v = dx.segment(0, 2);
  CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-5));
  // Descent pushes clockwise, back toward theta = 0.
  CHECK(v.dot(tangent_frame(z)[0].vec) < 0.0);
  CHECK(dx[2] == 0.0);  // the mode never drifts under flow
}

TEST_CASE("flow field stalls at the warped critical point while the jump set is active") {
  auto family = circle_family();
  const auto layout = first_order_layout(ManifoldKind::circle());
  const double theta = circle_warped_critical_angle();
  const State x = pack_fo_state(layout, circle_point(theta), 0);
  CHECK(fo_flow_field(*family, layout, x).norm() < 1e-4);
  CHECK(delta_in_jump_set(*family, layout, x));
}

TEST_CASE("build_H1 rejects an unvalidated family") {
  auto family = circle_family(0.0);
  CHECK_THROWS_AS(build_H1(family), ValidationError);
  CHECK_THROWS_AS(build_single_mode_flow(circle_family(), 7), ValidationError);
}

TEST_CASE("solutions started at the minimizer stay there") {
  auto family = circle_family();
  const auto sys = build_H1(family);
  const auto arc = solve(sys, pack_fo_state(sys.layout, circle_point(0.0), 1),
                         fo_config(10.0));
  CHECK(arc.jump_indices.empty());
  const ManifoldPoint target{ManifoldKind::circle(), circle_min()};
  for (const auto& s : arc.states)
    CHECK(distance(sys.layout.block_point(s, 0), target) < 1e-3);
}

TEST_CASE("antipodal start converges with at most a few jumps") {
  auto family = circle_family();
  const auto sys = build_H1(family);
  const Eigen::VectorXd target = circle_min();
  for (int q : {0, 1}) {
    const auto cfg = fo_config(50.0, &target);
    const auto arc = solve(sys, pack_fo_state(sys.layout, circle_point(M_PI), q), cfg);
    const ManifoldPoint tgt{ManifoldKind::circle(), target};
    CHECK(distance(sys.layout.block_point(arc.states.back(), 0), tgt) < 1e-3);
    CHECK(arc.jump_indices.size() <= 3);
  }
}

TEST_CASE("global convergence on the sphere from spread starts") {
  auto family = sphere_family();
  const auto sys = build_H1(family);
  const Eigen::VectorXd target = sphere_min();
  const ManifoldPoint tgt{ManifoldKind::sphere(), target};
  for (const auto& z0 : sample_points(ManifoldKind::sphere(), 16)) {
    for (int q : {0, 1}) {
      const auto cfg = fo_config(50.0, &target);
      const auto arc = solve(sys, pack_fo_state(sys.layout, z0, q), cfg);
      CHECK(distance(sys.layout.block_point(arc.states.back(), 0), tgt) < 1e-3);
    }
  }
}

TEST_CASE("property: V descends along flows and drops by delta at jumps") {
  auto family = circle_family();
  const auto sys = build_H1(family);
  const int max_jumps_bound = static_cast<int>(std::ceil(2.0 / family->delta));
  for (int i = 0; i < 36; ++i) {
    const double th = 2.0 * M_PI * i / 36.0;
    for (int q : {0, 1}) {
      const auto arc =
          solve(sys, pack_fo_state(sys.layout, circle_point(th), q), fo_config(50.0));
      const auto diag = lyapunov_diagnostics(*family, sys.layout, arc, 0.0);
      CHECK(diag.flow_violations(arc, 1e-8) == 0);
      CHECK(diag.jump_violations(family->delta, 1e-9) == 0);
      CHECK(static_cast<int>(arc.jump_indices.size()) <= max_jumps_bound);
      const ManifoldPoint tgt{ManifoldKind::circle(), circle_min()};
      CHECK(distance(sys.layout.block_point(arc.states.back(), 0), tgt) < 1e-3);
    }
  }
}

TEST_CASE("single-mode flow ignores the switching sets") {
  auto family = circle_family();
  const auto sys = build_single_mode_flow(family, 0);
  const double theta = circle_warped_critical_angle();
  // Deep inside what would be the jump set: the single-mode system flows.
  const auto arc =
      solve(sys, pack_fo_state(sys.layout, circle_point(theta - 0.2), 0), fo_config(20.0));
  CHECK(arc.jump_indices.empty());
  CHECK(arc.termination == Termination::TimeLimit);
}
