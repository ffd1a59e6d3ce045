#include <benchmark/benchmark.h>

#include <random>

#include "gauss2d/blur.hpp"
#include "gauss2d/generator.hpp"

using namespace gauss2d;

namespace {
Image noise(std::uint32_t w, std::uint32_t h, std::uint32_t c) {
  Image img(w, h, c);
  std::mt19937 rng(7);
  for (auto& v : img.data) v = static_cast<std::uint8_t>(rng());
  return img;
}
}  // namespace

static void BM_SeparableRgb1600x1200(benchmark::State& state) {
  const Image img = noise(1600, 1200, 3);
  const auto profile = SeparableProfile::make(static_cast<unsigned>(state.range(0)), true);
  for (auto _ : state) {
    Image out = blur_separable(img, profile, Boundary::Replicate, 1);
    benchmark::DoNotOptimize(out.data.data());
  }
  state.counters["fps"] = benchmark::Counter(static_cast<double>(state.iterations()), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SeparableRgb1600x1200)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_Direct2dGray64(benchmark::State& state) {
  const Image img = noise(64, 64, 1);
  const auto tile = generate_tile(KernelSpec::single(static_cast<unsigned>(state.range(0))),
                                  ScaleShift::from_sigma(static_cast<unsigned>(state.range(0))))
                        .first;
  for (auto _ : state) {
    Image out = blur_direct2d(img, tile, Boundary::Replicate, true, 1);
    benchmark::DoNotOptimize(out.data.data());
  }
}
BENCHMARK(BM_Direct2dGray64)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);
