#include <benchmark/benchmark.h>

#include "hextv/lattice.hpp"
#include "hextv/solver.hpp"
#include "hextv/synth.hpp"

using namespace hextv;

namespace {

DiscreteImage noisy_phantom(LatticeKind kind, int size) {
  const double d = kind == LatticeKind::Square ? 1.0 : match_density(1.0, LatticeKind::Square, kind);
  const GridPtr grid = build_grid({kind, d, size - 1.0, size - 1.0});
  return add_salt_pepper(shepp_logan(grid, 256), 0.6, 7);
}

void run(benchmark::State& state, LatticeKind kind, bool reuse) {
  const DiscreteImage f = noisy_phantom(kind, static_cast<int>(state.range(0)));
  SolverConfig cfg;
  cfg.neighbourhood = static_cast<int>(state.range(1));
  cfg.params = {0.9, 1};
  cfg.reuse = reuse;
  const WeightedEdgeSet edges = solver_edges(f.grid_ptr(), cfg.neighbourhood);
  for (auto _ : state) benchmark::DoNotOptimize(denoise(f, cfg, edges));
  state.SetItemsProcessed(state.iterations() * f.size());
}

void BM_DenoiseSquare(benchmark::State& state) { run(state, LatticeKind::Square, true); }
void BM_DenoiseHex(benchmark::State& state) { run(state, LatticeKind::Hex, true); }
void BM_DenoiseSquareCold(benchmark::State& state) { run(state, LatticeKind::Square, false); }

BENCHMARK(BM_DenoiseSquare)->Args({64, 4})->Args({64, 8})->Args({64, 16})->Args({128, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DenoiseHex)->Args({64, 6})->Args({64, 12})->Args({128, 6})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DenoiseSquareCold)->Args({64, 4})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
