#pragma once

#include <cstdint>
#include <string>

#include "gauss2d/blur.hpp"
#include "gauss2d/datapath.hpp"

namespace gauss2d {

struct BlurBenchResult {
  std::uint64_t frames = 0;
  double seconds = 0;
  double frames_per_sec = 0;
  double samples_per_sec = 0;  // pixels * channels per second
  std::string output_sha256;   // of the last blurred frame
};

/// Repeatedly blurs a synthetic frame filled from `seed` after one warm-up
/// frame. Throws ContractError when frames == 0.
BlurBenchResult benchmark_blur(std::uint32_t width, std::uint32_t height, std::uint32_t channels,
                               const ConvConfig& cfg, std::uint64_t frames, std::uint64_t seed = 1);

struct GeneratorBenchResult {
  std::uint64_t frames = 0;
  std::uint64_t ticks = 0;
  std::uint64_t samples = 0;  // valid gout ticks; each carries g1, g2 and g3
  double seconds = 0;
  double samples_per_sec = 0;
};

/// Streams `frames` full 256x256 three-scale frames through the cycle model.
GeneratorBenchResult benchmark_generator(std::uint64_t frames, const Latencies& lat = {});

}  // namespace gauss2d
