// Acceptance suite: end-to-end checks of the library's headline guarantees,
// one printed pass/fail line per criterion. Run directly or via ctest.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <optional>

#include "hybridopt/scenario.hpp"
#include "test_util.hpp"

using namespace hybridopt;
using namespace hybridopt::testutil;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  int id;
  std::string title;
  bool pass = true;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void expect(bool cond, const std::string& what) {
    CHECK_MESSAGE(cond, "criterion " << id << ": " << what);
    pass = pass && cond;
  }
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
  void finish() {
    std::printf("[%s] criterion %2d: %s (%.1f s)\n", pass ? "PASS" : "FAIL", id,
                title.c_str(), seconds());
    std::fflush(stdout);
  }
};

fs::path scratch(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("hybridopt_acceptance_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ScenarioConfig quiet(ScenarioConfig c, const std::string& tag) {
  c.outputs.csv = c.outputs.json = c.outputs.svg = false;
  c.outputs.directory = scratch(tag).string();
  return c;
}

// Reports shared between criteria 3, 5, and 9.
std::optional<ScenarioReport> g_circle_h0;
std::optional<ScenarioReport> g_sphere_h0;

}  // namespace

TEST_CASE("criterion 1: switched gradient flows converge globally") {
  Criterion c{1, "global convergence of the first-order hybrid dynamics"};

  const auto circle = run_scenario(quiet(builtin_scenario("circle_h1"), "c1_circle"));
  c.expect(circle.runs.size() == 72, "36-angle grid x 2 modes");
  for (const auto& r : circle.runs)
    c.expect(r.final_distance && *r.final_distance < 1e-3,
             "circle run reaches the minimizer");
  c.expect(circle.flow_lyapunov_violations == 0, "circle flow descent certificate");
  c.expect(circle.jump_decrease_violations == 0, "circle jump decrease certificate");

  const auto sphere = run_scenario(quiet(builtin_scenario("sphere_h1"), "c1_sphere"));
  c.expect(sphere.runs.size() == 128, "64 spread starts x 2 modes");
  for (const auto& r : sphere.runs)
    c.expect(r.final_distance && *r.final_distance < 1e-3,
             "sphere run reaches the minimizer");
  c.expect(sphere.flow_lyapunov_violations == 0, "sphere flow descent certificate");
  c.expect(sphere.jump_decrease_violations == 0, "sphere jump decrease certificate");

  c.expect(c.seconds() < 30.0, "runtime under 30 s");
  c.finish();
}

TEST_CASE("criterion 2: jumps escape the stalled configuration that pins smooth flows") {
  Criterion c{2, "escape from the antipodal critical point"};

  // The stalled configuration: the critical point of the mode-0 warped cost
  // outside the minimizer set (the warp preimage of the antipodal maximizer),
  // paired with mode 0 -- the worst mode, the one that is stuck there.
  auto family = circle_family();
  SynergisticFamily validated = *family;
  const auto cert = validate_family(validated, true, 64);
  *family = validated;

  std::optional<ManifoldPoint> stalled;
  for (const auto& [q, cp] : cert.nonoptimal_critical_points)
    if (q == 0) stalled = cp.point;
  c.expect(stalled.has_value(), "found the non-optimal critical point of mode 0");

  if (stalled) {
    c.expect(warped_cost(*family, 0, *stalled) > warped_cost(*family, 1, *stalled),
             "mode 0 is the worst mode at the stalled point");

    const auto h1 = build_H1(family);
    SolverConfig cfg;
    cfg.step = 0.01;
    cfg.max_t = 50.0;
    cfg.max_jumps = 25;
    const auto arc = solve(h1, pack_fo_state(h1.layout, *stalled, 0), cfg);
    c.expect(!arc.jump_indices.empty(), "the hybrid system jumps at least once");
    c.expect(!arc.jump_indices.empty() && arc.jump_indices.front() == 1,
             "the first recorded event is a jump");
    const ManifoldPoint minimizer{ManifoldKind::circle(),
                                  (Eigen::VectorXd(2) << 1.0, 0.0).finished()};
    c.expect(distance(h1.layout.block_point(arc.states.back(), 0), minimizer) < 1e-3,
             "the hybrid system converges after escaping");
  }

  // The plain single-mode gradient flow started exactly at the maximizer of
  // its own cost is stuck there: the stationarity obstruction.
  auto plain = circle_family(0.2, 0.0, 0.0);
  const auto flow = build_single_mode_flow(plain, 0);
  SolverConfig cfg;
  cfg.step = 0.01;
  cfg.max_t = 10.0;
  const State x0 = pack_fo_state(flow.layout, circle_point(M_PI), 0);
  const auto arc = solve(flow, x0, cfg);
  double moved = 0.0;
  const ManifoldPoint start = flow.layout.block_point(x0, 0);
  for (const auto& s : arc.states)
    moved = std::max(moved, distance(flow.layout.block_point(s, 0), start));
  c.expect(moved < 1e-6, "the single-mode gradient flow moves less than 1e-6 in 10 s");
  c.expect(arc.jump_indices.empty(), "the single-mode flow never jumps");

  c.expect(c.seconds() < 5.0, "runtime under 5 s");
  c.finish();
}

TEST_CASE("criterion 3: zeroth-order dynamics converge practically") {
  Criterion c{3, "model-free practical convergence with geodesic dithering"};

  g_circle_h0 = run_scenario(quiet(builtin_scenario("circle_h0"), "c3_circle"));
  for (const auto& r : g_circle_h0->runs)
    c.expect(r.final_distance && *r.final_distance < 0.1,
             "circle antipodal start lands within 0.1");

  g_sphere_h0 = run_scenario(quiet(builtin_scenario("sphere_h0"), "c3_sphere"));
  for (const auto& r : g_sphere_h0->runs)
    c.expect(r.final_distance && *r.final_distance < 0.1,
             "sphere antipodal start lands within 0.1");

  const auto sweep = run_sweep(quiet(builtin_scenario("circle_h0"), "c3_sweep"),
                               "epsilon_a", {0.1, 0.05, 0.025});
  c.expect(sweep.monotone_within_slack,
           "worst-case final distance decreases within the 20% slack band");
  c.expect(sweep.rows.back().worst_final_distance <
               sweep.rows.front().worst_final_distance,
           "smallest amplitude beats the largest");

  c.expect(c.seconds() < 120.0, "runtime under 2 min");
  c.finish();
}

TEST_CASE("criterion 4: the dither average approximates the gradient to second order") {
  Criterion c{4, "averaging error scales as the squared dither amplitude"};

  std::mt19937_64 rng(2024);
  for (const bool on_sphere : {false, true}) {
    auto family = on_sphere ? sphere_family() : circle_family();
    const auto kind = family->cost.kind();
    const auto layout = first_order_layout(kind);
    int tested = 0;
    while (tested < 20) {
      const auto z = random_point(kind, rng);
      if (family->cost.eval(z) > 0.8) continue;  // stay clear of the warp seam
      const int q = tested % 2;
      const Eigen::VectorXd fo =
          fo_flow_field(*family, layout, pack_fo_state(layout, z, q))
              .segment(0, kind.ambient_dim());
      std::vector<double> errs;
      for (double ea : {0.1, 0.05, 0.025}) {
        DitherParams p;
        p.epsilon_a = ea;
        p.epsilon_p = 0.01;
        p.omega_tilde = on_sphere ? std::vector<Rational>{{5, 1}, {7, 1}}
                                  : std::vector<Rational>{{1, 1}};
        errs.push_back((averaged_zo_field(*family, q, z, p).vec - fo).norm());
      }
      for (size_t k = 0; k + 1 < errs.size(); ++k) {
        const double ratio = errs[k] / errs[k + 1];
        c.expect(ratio >= 3.0 && ratio <= 5.0,
                 "halving ratio in [3, 5] (got " + std::to_string(ratio) + ")");
      }
      ++tested;
    }
  }

  c.expect(c.seconds() < 30.0, "runtime under 30 s");
  c.finish();
}

TEST_CASE("criterion 5: trajectories never leave the manifold") {
  Criterion c{5, "forward invariance of the manifold"};
  c.expect(g_circle_h0.has_value() && g_sphere_h0.has_value(),
           "criterion-3 runs available");
  if (g_circle_h0 && g_sphere_h0) {
    double worst = 0.0;
    for (const auto* rep : {&*g_circle_h0, &*g_sphere_h0})
      for (const auto& r : rep->runs) worst = std::max(worst, r.manifold_violation);
    c.expect(worst <= 1e-9, "max invariant violation at most 1e-9");
    c.expect(g_circle_h0->manifold_invariance_violations == 0 &&
                 g_sphere_h0->manifold_invariance_violations == 0,
             "no violation counter fired");
  }
  c.finish();
}

TEST_CASE("criterion 6: the worked families are certified synergistic") {
  Criterion c{6, "synergistic-family certificates"};

  SynergisticFamily sphere = *sphere_family();
  const auto sphere_cert = validate_family(sphere, true, 64);
  c.expect(sphere_cert.mu >= 0.25, "sphere synergy gap at least 1/4");

  SynergisticFamily circle = *circle_family();
  const auto circle_cert = validate_family(circle, true, 64);
  c.expect(circle_cert.mu > 0.2, "circle synergy gap above 0.2");
  const double theta = circle_warped_critical_angle();
  const double mu_oracle = 1.0 - std::cos(2.0 * (M_PI - theta));
  c.expect(std::abs(circle_cert.mu - mu_oracle) < 1e-3,
           "circle gap matches the root-finding oracle");

  using FamilyAndCert = std::pair<const SynergisticFamily*, const FamilyCertificate*>;
  for (const auto& [fam, cert] :
       {FamilyAndCert{&circle, &circle_cert}, FamilyAndCert{&sphere, &sphere_cert}}) {
    c.expect(!cert->nonoptimal_critical_points.empty(),
             "non-optimal critical points were found");
    for (const auto& [q, cp] : cert->nonoptimal_critical_points) {
      double best = std::numeric_limits<double>::infinity();
      for (int p = 0; p < fam->num_modes(); ++p)
        best = std::min(best, warped_cost(*fam, p, cp.point));
      c.expect(best + fam->delta < warped_cost(*fam, q, cp.point),
               "some mode undercuts the stalled mode by more than delta");
    }
  }

  c.expect(c.seconds() < 20.0, "runtime under 20 s");
  c.finish();
}

TEST_CASE("criterion 7: the warps are diffeomorphisms at the chosen gains") {
  Criterion c{7, "diffeomorphism certificates"};

  auto cf = circle_family();
  auto sf = sphere_family();
  std::mt19937_64 rng(9);
  bool all_positive = true;
  for (int i = 0; i < 10000; ++i) {
    const auto zc = random_point(ManifoldKind::circle(), rng);
    const auto zs = random_point(ManifoldKind::sphere(), rng);
    for (int q = 0; q < 2; ++q) {
      all_positive = all_positive &&
                     warp_jacobian_det(cf->warps[q], cf->cost, zc) > 0.0 &&
                     warp_jacobian_det(sf->warps[q], sf->cost, zs) > 0.0;
    }
  }
  c.expect(all_positive, "Jacobian determinant positive at 10^4 random points");

  const double bound = estimate_gain_bound(cf->cost, alpha_by_name("square"), 1.0,
                                           cf->warps[0], 4096);
  c.expect(bound >= 0.8 && bound <= 1.0,
           "estimated circle gain bound in [0.8, 1.0] (got " +
               std::to_string(bound) + ")");
  c.finish();
}

TEST_CASE("criterion 8: hybrid switching defeats the adversarial disturbance") {
  Criterion c{8, "robustness dichotomy under a bounded adversarial signal"};

  const auto pinned =
      run_scenario(quiet(builtin_scenario("circle_gd_adversarial"), "c8_gd"));
  for (const auto& r : pinned.runs)
    c.expect(r.final_distance && *r.final_distance < 0.2,
             "the plain gradient flow is pinned near the maximizer");

  const auto rescued =
      run_scenario(quiet(builtin_scenario("circle_h1_adversarial"), "c8_h1"));
  for (const auto& r : rescued.runs)
    c.expect(r.final_distance && *r.final_distance < 0.05,
             "the hybrid dynamics reach the minimizer under the same signal");

  const auto sweep = run_sweep(quiet(builtin_scenario("circle_h1_constant_d3"),
                                     "c8_sweep"),
                               "dstar", {1e-2, 1e-3, 1e-4});
  c.expect(sweep.monotone_within_slack,
           "worst-case error is nonincreasing as the bound shrinks");

  c.expect(c.seconds() < 30.0, "runtime under 30 s");
  c.finish();
}

TEST_CASE("criterion 9: the zeroth-order flow path never touches a derivative oracle") {
  Criterion c{9, "zeroth-order purity"};
  c.expect(g_circle_h0.has_value() && g_sphere_h0.has_value(),
           "criterion-3 runs available");
  if (g_circle_h0 && g_sphere_h0) {
    for (const auto* rep : {&*g_circle_h0, &*g_sphere_h0})
      for (const auto& r : rep->runs)
        c.expect(r.oracle_calls_during_solve == 0,
                 "zero derivative-oracle invocations during solve");
  }
  c.finish();
}

TEST_CASE("criterion 10: deterministic artifacts and strict interfaces") {
  Criterion c{10, "determinism, config round-trip, frequency validation"};

  // Byte-identical CSV across repeated runs of a builtin scenario.
  ScenarioConfig run_cfg = builtin_scenario("circle_h0");
  run_cfg.solver.max_t = 10.0;
  run_cfg.outputs.svg = false;
  const auto d1 = scratch("c10_a");
  const auto d2 = scratch("c10_b");
  run_cfg.outputs.directory = d1.string();
  run_scenario(run_cfg);
  run_cfg.outputs.directory = d2.string();
  run_scenario(run_cfg);
  for (const auto& name : {"run_000.csv", "run_001.csv"})
    c.expect(read_text_file((d1 / name).string()) ==
                 read_text_file((d2 / name).string()),
             std::string("byte-identical ") + name);

  // Round-trip identity on every builtin config.
  for (const auto& name : builtin_scenario_names()) {
    const std::string s1 = serialize_scenario(builtin_scenario(name));
    c.expect(s1 == serialize_scenario(parse_scenario(s1)),
             "round-trip identity for " + name);
  }

  // Frequency validator: reject (1, 2), accept (5, 7).
  c.expect(!validate_frequencies({{1, 1}, {2, 1}}).ok, "rejects (1, 2)");
  c.expect(validate_frequencies({{5, 1}, {7, 1}}).ok, "accepts (5, 7)");

  c.finish();
}
