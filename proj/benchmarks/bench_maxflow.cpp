#include <benchmark/benchmark.h>

#include <optional>
#include <random>

#include "hextv/maxflow.hpp"

using namespace hextv;

namespace {

// 4-connected grid with random unary terms, the shape of one level cut.
FlowNetwork grid_network(std::uint32_t w, double smooth, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unary(-1.0, 1.0);
  FlowNetwork net(std::size_t{w} * w);
  for (std::uint32_t y = 0; y < w; ++y) {
    for (std::uint32_t x = 0; x < w; ++x) {
      const std::uint32_t p = y * w + x;
      const double c = unary(rng);
      net.source_cap[p] = c < 0 ? -c : 0.0;
      net.sink_cap[p] = c > 0 ? c : 0.0;
      if (x + 1 < w) net.arcs.push_back({p, p + 1, smooth, smooth});
      if (y + 1 < w) net.arcs.push_back({p, p + w, smooth, smooth});
    }
  }
  return net;
}

void BM_GridCut(benchmark::State& state) {
  const auto w = static_cast<std::uint32_t>(state.range(0));
  const FlowNetwork net = grid_network(w, 0.4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(max_flow(net).flow);
  state.SetItemsProcessed(state.iterations() * net.node_count);
}
BENCHMARK(BM_GridCut)->Arg(32)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

// A sequence of cuts with growing sink bias, warm against cold.
void level_sequence(benchmark::State& state, bool reuse) {
  const auto w = static_cast<std::uint32_t>(state.range(0));
  const FlowNetwork base = grid_network(w, 0.4, 2);
  for (auto _ : state) {
    FlowNetwork net = base;
    net.fixed_sink.assign(net.node_count, 0);
    std::optional<MaxflowState> prev;
    for (int level = 0; level < 16; ++level) {
      for (std::size_t p = 0; p < net.node_count; ++p) {
        const double c = net.sink_cap[p] - net.source_cap[p] + 0.1;
        net.source_cap[p] = c < 0 ? -c : 0.0;
        net.sink_cap[p] = c > 0 ? c : 0.0;
      }
      if (reuse) {
        ReuseResult r = solve_reusing(net, std::move(prev));
        for (std::size_t p = 0; p < net.node_count; ++p) {
          if (!r.cut.source_side[p]) net.fixed_sink[p] = 1;
        }
        prev.emplace(std::move(r.state));
      } else {
        benchmark::DoNotOptimize(max_flow(net).flow);
      }
    }
  }
}

void BM_LevelsReuse(benchmark::State& state) { level_sequence(state, true); }
void BM_LevelsCold(benchmark::State& state) { level_sequence(state, false); }
BENCHMARK(BM_LevelsReuse)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LevelsCold)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
