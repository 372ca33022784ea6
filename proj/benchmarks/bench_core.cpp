#include <benchmark/benchmark.h>

#include "hybridopt/first_order.hpp"
#include "hybridopt/zeroth_order.hpp"

using namespace hybridopt;

namespace {

ManifoldPoint sphere_at(double az, double el) {
  Eigen::VectorXd c(3);
  c << std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el);
  return {ManifoldKind::sphere(), c};
}

std::shared_ptr<SynergisticFamily> bench_family() {
  auto family = std::make_shared<SynergisticFamily>();
  family->cost = builtin_cost(ManifoldKind::sphere(), "sphere_1_minus_z3");
  family->gamma = 1.0;
  family->delta = 0.2;
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

void BM_exp_map(benchmark::State& state) {
  const auto z = sphere_at(0.3, -0.4);
  const auto frame = tangent_frame(z);
  const TangentVector v{z, 0.7 * frame[0].vec + 0.2 * frame[1].vec};
  for (auto _ : state) benchmark::DoNotOptimize(exp_map(z, v));
}
BENCHMARK(BM_exp_map);

void BM_warp_apply(benchmark::State& state) {
  auto family = bench_family();
  const auto z = sphere_at(0.3, -1.2);  // inside the warped region
  for (auto _ : state)
    benchmark::DoNotOptimize(warp_apply(family->warps[0], family->cost, z));
}
BENCHMARK(BM_warp_apply);

void BM_min_warped(benchmark::State& state) {
  auto family = bench_family();
  const auto z = sphere_at(2.1, -0.9);
  for (auto _ : state) benchmark::DoNotOptimize(min_warped(*family, z));
}
BENCHMARK(BM_min_warped);

void BM_fd_gradient(benchmark::State& state) {
  auto family = bench_family();
  const auto field = warped_field(*family, 0);
  const auto z = sphere_at(1.0, -0.5);
  for (auto _ : state) benchmark::DoNotOptimize(fd_gradient(field, z));
}
BENCHMARK(BM_fd_gradient);

void BM_zo_flow_field(benchmark::State& state) {
  auto family = bench_family();
  const auto layout = zeroth_order_layout(ManifoldKind::sphere());
  DitherParams p;
  p.epsilon_a = 0.05;
  p.epsilon_p = 0.01;
  p.omega_tilde = {{5, 1}, {7, 1}};
  const State x = pack_zo_state(layout, sphere_at(0.5, -1.0), 0,
                                oscillator_step(p.initial_chi(), p, 0.123));
  for (auto _ : state)
    benchmark::DoNotOptimize(zo_flow_field(*family, layout, p, x));
}
BENCHMARK(BM_zo_flow_field);

void BM_h1_solve_short(benchmark::State& state) {
  auto family = bench_family();
  const auto sys = build_H1(family);
  SolverConfig cfg;
  cfg.step = 0.01;
  cfg.max_t = 1.0;
  const State x0 = pack_fo_state(sys.layout, sphere_at(0.0, -1.0), 0);
  for (auto _ : state) benchmark::DoNotOptimize(solve(sys, x0, cfg));
}
BENCHMARK(BM_h1_solve_short);

}  // namespace

BENCHMARK_MAIN();
