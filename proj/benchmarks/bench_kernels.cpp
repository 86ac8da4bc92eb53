#include <benchmark/benchmark.h>

#include "levelseg/image_io.hpp"
#include "levelseg/phantom.hpp"
#include "levelseg/solver.hpp"
#include "levelseg/stencil.hpp"

using namespace levelseg;

namespace {

ScalarField disk_phi(int n) {
  return signed_distance(CircleShape{n / 2.0, n / 2.0, n / 4.0}, n, n);
}

void BM_Curvature(benchmark::State& state) {
  const ScalarField phi = disk_phi(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(curvature(phi));
  state.SetItemsProcessed(state.iterations() * phi.size());
}
BENCHMARK(BM_Curvature)->Arg(128)->Arg(256)->Arg(512);

void BM_Reinitialize(benchmark::State& state) {
  ScalarField phi = disk_phi(static_cast<int>(state.range(0)));
  for (auto& v : phi.values()) v *= 2.5;
  for (auto _ : state) benchmark::DoNotOptimize(reinitialize(phi, 10));
  state.SetItemsProcessed(state.iterations() * phi.size());
}
BENCHMARK(BM_Reinitialize)->Arg(128)->Arg(256);

void BM_ExtractContour(benchmark::State& state) {
  const ScalarField phi = signed_distance(default_init_shape(256, 256), 256, 256);
  for (auto _ : state) benchmark::DoNotOptimize(extract_contour(phi));
}
BENCHMARK(BM_ExtractContour);

void BM_EvolveIterations(benchmark::State& state) {
  const ScalarField u0 = normalize(default_disk().image);
  const ScalarField phi0 = signed_distance(default_init_shape(128, 128), 128, 128);
  EvolveParams p;
  p.max_iters = static_cast<int>(state.range(0));
  p.stop_tol = 0.0;
  const auto kind = static_cast<ModelKind>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(evolve(kind, u0, phi0, p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvolveIterations)
    ->Args({100, static_cast<int>(ModelKind::kChanVese)})
    ->Args({100, static_cast<int>(ModelKind::kModified)})
    ->Args({100, static_cast<int>(ModelKind::kGeodesic)})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
