#include <benchmark/benchmark.h>

#include <algorithm>
#include <span>
#include <vector>

#include "gauss2d/datapath.hpp"
#include "gauss2d/generator.hpp"

using namespace gauss2d;

static void BM_Gauss2DFrame(benchmark::State& state) {
  Gauss2D machine(KernelSpec::three_scale(), Latencies::with_mult(static_cast<unsigned>(state.range(0))));
  std::uint64_t samples = 0;
  std::vector<TickRecord> batch(4096);
  for (auto _ : state) {
    machine.start();
    while (!machine.frame_done()) {
      const auto n = std::min<std::uint64_t>(batch.size(), machine.frame_ticks() - machine.tick());
      machine.step_many(std::span(batch.data(), n));
      for (std::size_t i = 0; i < n; ++i) samples += batch[i].valid;
      benchmark::DoNotOptimize(batch.data());
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(samples));
}
BENCHMARK(BM_Gauss2DFrame)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_PureComposition(benchmark::State& state) {
  const auto scales = design_scales();
  const ExpLut& lut = ExpLut::shared();
  for (auto _ : state) {
    unsigned acc = 0;
    for (int y = -128; y < 128; ++y) {
      for (int x = -128; x < 128; ++x) {
        const UMag8 mx = coord_abs(Coord8{static_cast<std::int8_t>(x)});
        const UMag8 my = coord_abs(Coord8{static_cast<std::int8_t>(y)});
        const USum17 s = add_sq(mult8x8(mx, mx), mult8x8(my, my));
        for (const auto& sc : scales) acc += lut(scale_down(s, sc)).value;
      }
    }
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 65536);
}
BENCHMARK(BM_PureComposition)->Unit(benchmark::kMillisecond);

static void BM_ExpLutBuild(benchmark::State& state) {
  for (auto _ : state) {
    ExpLut lut;
    benchmark::DoNotOptimize(lut.entries().data());
  }
}
BENCHMARK(BM_ExpLutBuild);
BENCHMARK_MAIN();
