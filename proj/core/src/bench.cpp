#include "gauss2d/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "gauss2d/errors.hpp"
#include "gauss2d/file_util.hpp"
#include "gauss2d/generator.hpp"

namespace gauss2d {

namespace {
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}
}  // namespace

BlurBenchResult benchmark_blur(std::uint32_t width, std::uint32_t height, std::uint32_t channels,
                               const ConvConfig& cfg, std::uint64_t frames, std::uint64_t seed) {
  if (frames == 0) throw ContractError("benchmark needs at least one frame");
  Image frame(width, height, channels);
  frame.validate();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(0, 255);
  for (auto& v : frame.data) v = static_cast<std::uint8_t>(dist(rng));

  const SeparableProfile profile = SeparableProfile::make(cfg.sigma, cfg.normalize);
  const KernelTile tile = cfg.mode == ConvMode::Direct2d
                              ? generate_tile(KernelSpec::single(cfg.sigma), ScaleShift::from_sigma(cfg.sigma)).first
                              : KernelTile{};
  auto run = [&] {
    return cfg.mode == ConvMode::Separable
               ? blur_separable(frame, profile, cfg.boundary, cfg.threads)
               : blur_direct2d(frame, tile, cfg.boundary, cfg.normalize, cfg.threads);
  };

  Image out = run();  // warm-up
  const auto t0 = Clock::now();
  for (std::uint64_t f = 0; f < frames; ++f) out = run();
  BlurBenchResult res;
  res.frames = frames;
  res.seconds = seconds_since(t0);
  res.frames_per_sec = static_cast<double>(frames) / res.seconds;
  res.samples_per_sec = res.frames_per_sec * static_cast<double>(frame.data.size());
  res.output_sha256 = sha256_hex(std::as_bytes(std::span(out.data)));
  return res;
}

GeneratorBenchResult benchmark_generator(std::uint64_t frames, const Latencies& lat) {
  if (frames == 0) throw ContractError("benchmark needs at least one frame");
  Gauss2D machine(KernelSpec::three_scale(), lat);
  GeneratorBenchResult res;
  res.frames = frames;
  unsigned checksum = 0;
  std::vector<TickRecord> batch(4096);
  const auto t0 = Clock::now();
  for (std::uint64_t f = 0; f < frames; ++f) {
    machine.start();
    while (!machine.frame_done()) {
      const auto n = std::min<std::uint64_t>(batch.size(), machine.frame_ticks() - machine.tick());
      machine.step_many(std::span(batch.data(), n));
      res.ticks += n;
      for (std::size_t i = 0; i < n; ++i) {
        const TickRecord& r = batch[i];
        if (r.valid) {
          ++res.samples;
          checksum += r.g[0].value + r.g[1].value + r.g[2].value;
        }
      }
    }
  }
  res.seconds = seconds_since(t0);
  res.samples_per_sec = static_cast<double>(res.samples) / res.seconds;
  if (checksum == 0) throw Error("generator produced an all-zero stream");
  return res;
}

}  // namespace gauss2d
