#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace hybridopt;
using namespace hybridopt::testutil;

TEST_CASE("find_critical_points on the circle cost") {
  const auto cost = builtin_cost(ManifoldKind::circle(), "circle_1_minus_z1");
  const auto est = find_critical_points(as_field(cost), ManifoldKind::circle(), 64);
  REQUIRE(est.points.size() == 2);
  CHECK_FALSE(est.degenerate);
  for (const auto& cp : est.points) {
    CHECK(cp.gradient_norm <= est.tolerance);
    const bool near_min = distance(cp.point, circle_point(0.0)) < 1e-4;
    const bool near_max = distance(cp.point, circle_point(M_PI)) < 1e-4;
    CHECK((near_min || near_max));
    if (near_min) CHECK(cp.value == doctest::Approx(0.0).epsilon(1e-8));
    if (near_max) CHECK(cp.value == doctest::Approx(2.0).epsilon(1e-8));
  }
}

TEST_CASE("find_critical_points on the sphere cost") {
  const auto cost = builtin_cost(ManifoldKind::sphere(), "sphere_1_minus_z3");
  const auto est = find_critical_points(as_field(cost), ManifoldKind::sphere(), 64);
  REQUIRE(est.points.size() == 2);
  const auto north = sphere_point(0.0, M_PI / 2);
  const auto south = sphere_point(0.0, -M_PI / 2);
  int found_north = 0, found_south = 0;
  for (const auto& cp : est.points) {
    if (distance(cp.point, north) < 1e-4) ++found_north;
    if (distance(cp.point, south) < 1e-4) ++found_south;
  }
  CHECK(found_north == 1);
  CHECK(found_south == 1);
}

TEST_CASE("find_critical_points rejects a coarse grid") {
  const auto cost = builtin_cost(ManifoldKind::circle(), "circle_1_minus_z1");
  CHECK_THROWS_AS(find_critical_points(as_field(cost), ManifoldKind::circle(), 16),
                  ValidationError);
}

TEST_CASE("seeds that exhaust the iteration cap are reported, not dropped") {
  const auto cost = builtin_cost(ManifoldKind::circle(), "circle_1_minus_z1");
  const auto est = find_critical_points(as_field(cost), ManifoldKind::circle(), 64,
                                        tol().refine_tol, /*max_refine_iters=*/1);
  CHECK_FALSE(est.rejected.empty());
  for (const auto& cp : est.rejected) CHECK(cp.gradient_norm > tol().refine_tol);
  CHECK_THROWS_AS(find_critical_points(as_field(cost), ManifoldKind::circle(), 64,
                                       tol().refine_tol, 0),
                  ValidationError);
}

TEST_CASE("constant cost is flagged degenerate") {
  const auto cost = builtin_cost(ManifoldKind::circle(), "constant:1.0");
  const auto est = find_critical_points(as_field(cost), ManifoldKind::circle(), 64);
  CHECK(est.degenerate);
  CHECK(est.points.size() > 8);  // grid-dependent survivors, not a clean pair
}

TEST_CASE("synergy gap of the circle family matches the root-finding oracle") {
  auto family = circle_family();
  const auto est = estimate_synergy_gap(*family, 64);
  REQUIRE_FALSE(est.no_candidates);
  // Oracle: critical angle of the first warped cost solves
  // theta + (1/2) cos^2(theta) = pi; the gap there is 1 - cos(2(pi - theta)).
  const double theta = circle_warped_critical_angle(0.5);
  const double mu_oracle = 1.0 - std::cos(2.0 * (M_PI - theta));
  CHECK(est.mu == doctest::Approx(mu_oracle).epsilon(1e-3));
  CHECK(est.mu > 0.2);
  // One non-optimal critical point per mode.
  CHECK(est.candidates.size() == 2);
}

TEST_CASE("synergy gap of the sphere family clears the published threshold") {
  auto family = sphere_family();
  const auto est = estimate_synergy_gap(*family, 64);
  REQUIRE_FALSE(est.no_candidates);
  CHECK(est.mu >= 0.25);
  const double theta = circle_warped_critical_angle(0.5);
  CHECK(est.mu == doctest::Approx(1.0 - std::cos(2.0 * (M_PI - theta))).epsilon(1e-3));
}

TEST_CASE("equal gains give a zero synergy gap") {
  auto family = circle_family(0.2, 0.5, 0.5);
  const auto est = estimate_synergy_gap(*family, 64);
  REQUIRE_FALSE(est.no_candidates);
  CHECK(std::abs(est.mu) <= 1e-9);
}

TEST_CASE("no candidates outside the minimizer set returns the sentinel") {
  auto family = std::make_shared<SynergisticFamily>();
  family->cost = builtin_cost(ManifoldKind::circle(), "constant:1.0");
  family->gamma = 2.0;
  family->delta = 0.1;
  for (double k : {0.5, -0.5}) {
    WarpSpec w;
    w.gain = k;
    w.alpha = alpha_by_name("square");
    w.gamma = 2.0;
    family->warps.push_back(std::move(w));
  }
  const auto est = estimate_synergy_gap(*family, 64);
  CHECK(est.no_candidates);
  CHECK(std::isinf(est.mu));
}

TEST_CASE("validate_family certifies the worked families") {
  for (auto family : {circle_family(), sphere_family()}) {
    SynergisticFamily fam = *family;
    const auto cert = validate_family(fam, /*resolve_delta_auto=*/true, 64);
    CHECK(fam.delta == doctest::Approx(0.2));
    CHECK(cert.resolved_delta == fam.delta);
    CHECK(cert.mu > 0.2);
    CHECK(cert.gain_bound >= 0.8);
    CHECK(cert.gain_bound <= 1.0);
    CHECK(cert.min_value == doctest::Approx(0.0).epsilon(1e-8));
    REQUIRE(cert.minimizers.size() == 1);

    // The gap inequality at every estimated non-optimal critical point.
    for (const auto& [q, cp] : cert.nonoptimal_critical_points) {
      const double vq = warped_cost(fam, q, cp.point);
      double best_other = std::numeric_limits<double>::infinity();
      for (int p = 0; p < fam.num_modes(); ++p)
        best_other = std::min(best_other, warped_cost(fam, p, cp.point));
      CHECK(best_other + fam.delta < vq);
    }
  }
}

TEST_CASE("validate_family rejects bad configurations") {
  {
    SynergisticFamily fam = *circle_family();
    fam.warps.pop_back();
    CHECK_THROWS_AS(validate_family(fam, true, 64), ValidationError);
  }
  {
    SynergisticFamily fam = *circle_family();
    fam.gamma = 2.5;  // above the largest critical value
    for (auto& w : fam.warps) w.gamma = 2.5;
    CHECK_THROWS_AS(validate_family(fam, true, 64), ValidationError);
  }
  {
    SynergisticFamily fam = *circle_family(0.2, 0.95, -0.95);  // above the bound
    CHECK_THROWS_AS(validate_family(fam, true, 64), ValidationError);
  }
  {
    SynergisticFamily fam = *circle_family(0.5);  // delta above mu
    CHECK_THROWS_AS(validate_family(fam, false, 64), ValidationError);
  }
  {
    SynergisticFamily fam = *circle_family();
    fam.warps[0].alpha = AlphaFn{"bad", [](double r) { return r; },
                                 [](double) { return 1.0; }};  // alpha'(0) != 0
    CHECK_THROWS_AS(validate_family(fam, true, 64), ValidationError);
  }
}

TEST_CASE("auto delta rule") {
  CHECK(auto_delta(0.329) == doctest::Approx(0.2));
  CHECK(auto_delta(0.1) == doctest::Approx(0.08));
}
