#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include <phs1d/grid.hpp>
#include <phs1d/integrator.hpp>
#include <phs1d/models.hpp>
#include <phs1d/sbp.hpp>
#include <phs1d/transforms.hpp>

using namespace phs1d;
using Eigen::VectorXd;

namespace {

VectorXd pulse(const Grid& g, double c, double w) {
  VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double r = (g.x[i] - c) / w;
    v[i] = std::exp(-0.5 * r * r);
  }
  return v;
}

VectorXd start_state(const PHDescriptor& d, const Grid& g) {
  const int nb = d.n / static_cast<int>(field_names(d.name).size());
  VectorXd z0 = VectorXd::Zero(d.n);
  z0.segment(0, nb) = pulse(g, 0.5, 0.12);
  if (d.consistent_init) z0 = d.consistent_init(z0);
  return z0;
}

void bm_assemble_timoshenko(benchmark::State& state) {
  SbpOps s = build_sbp(build_grid(static_cast<int>(state.range(0))));
  BeamParams p;
  for (auto _ : state) {
    PHDescriptor d = timoshenko_explicit(s, p, Mode::free_ends);
    assemble(d);
    benchmark::DoNotOptimize(d.A);
  }
}

void bm_midpoint_run(benchmark::State& state) {
  SbpOps s = build_sbp(build_grid(static_cast<int>(state.range(0))));
  BeamParams p;
  PHDescriptor d = timoshenko_explicit(s, p, Mode::free_ends);
  VectorXd z0 = start_state(d, s.grid);
  for (auto _ : state) {
    RunResult r = run_midpoint(d, z0, 1e-3, 20, false);
    benchmark::DoNotOptimize(r.max_residual);
  }
}

void bm_green_residual(benchmark::State& state) {
  SbpOps s = build_sbp(build_grid(static_cast<int>(state.range(0))));
  std::mt19937_64 rng(3u);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  VectorXd x(s.grid.n), y(s.grid.n);
  for (int i = 0; i < s.grid.n; ++i) {
    x[i] = u(rng);
    y[i] = u(rng);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(green_residual(s, 4, x, y));
  }
}

void bm_transform_apply(benchmark::State& state) {
  SbpOps s = build_sbp(build_grid(static_cast<int>(state.range(0))));
  BeamTransforms t = build_beam_transforms(s);
  VectorXd z = VectorXd::Random(4 * s.grid.n);
  for (auto _ : state) {
    VectorXd ze = t.G * z;
    VectorXd back = t.F * ze;
    benchmark::DoNotOptimize(back);
  }
}

}  // namespace

BENCHMARK(bm_assemble_timoshenko)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_midpoint_run)->Arg(101)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_green_residual)->Arg(101)->Arg(401);
BENCHMARK(bm_transform_apply)->Arg(101)->Arg(201);

BENCHMARK_MAIN();
