#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "varexp/exponents.hpp"
#include "varexp/norms.hpp"
#include "varexp/nse.hpp"
#include "varexp/semigroup.hpp"
#include "varexp/spectral.hpp"

using namespace varexp;

namespace {

GridFunction bump(const Grid& g) {
  return GridFunction::sample(g, [&](const Point& x) {
    double r2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) r2 += x[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(a)];
    return std::exp(-r2) * (1.0 + 0.3 * std::sin(3.0 * x[0]));
  });
}

}  // namespace

static void BM_LuxemburgNorm(benchmark::State& state) {
  const Grid g = Grid::box(1, static_cast<std::size_t>(state.range(0)), 16.0);
  const GridFunction f = bump(g);
  const ExponentField p = build_exponent(ExponentialApproachExponent{6.0, 2.0, 1.0}, g);
  for (auto _ : state) benchmark::DoNotOptimize(luxemburg_norm(f, p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LuxemburgNorm)->RangeMultiplier(4)->Range(256, 65536);

static void BM_LinearConvolution(benchmark::State& state) {
  const Grid g = Grid::box(1, static_cast<std::size_t>(state.range(0)), 16.0);
  const GridFunction f = bump(g);
  for (auto _ : state) benchmark::DoNotOptimize(linear_convolution(f, f));
}
BENCHMARK(BM_LinearConvolution)->RangeMultiplier(4)->Range(256, 65536);

static void BM_HeatSemigroup2D(benchmark::State& state) {
  const Grid g = Grid::box(2, static_cast<std::size_t>(state.range(0)), 8.0);
  const GridFunction f = bump(g);
  for (auto _ : state) benchmark::DoNotOptimize(apply_semigroup(f, 0.75, 0.5));
}
BENCHMARK(BM_HeatSemigroup2D)->RangeMultiplier(2)->Range(32, 256);

static void BM_BilinearB(benchmark::State& state) {
  const Grid g = Grid::box(2, static_cast<std::size_t>(state.range(0)), std::numbers::pi, BoundaryMode::periodic);
  const Grid time = Grid::time_axis(0.5, 16);
  const VelocityField u = steady_velocity(vortex_field(g, seeded_vortices(g, 1, 3, 0.5)), time);
  for (auto _ : state) benchmark::DoNotOptimize(bilinear_B(u, u, 1.0));
}
BENCHMARK(BM_BilinearB)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_PicardSolve(benchmark::State& state) {
  ProblemSpec spec;
  spec.space = Grid::box(2, 32, std::numbers::pi, BoundaryMode::periodic);
  spec.time_steps = 16;
  spec.u0 = vortex_field(spec.space, seeded_vortices(spec.space, 1, 2, 0.5));
  for (auto& c : spec.u0) c = c.scaled(0.05);
  for (auto _ : state) benchmark::DoNotOptimize(picard_solve(spec).iterations);
}
BENCHMARK(BM_PicardSolve)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
