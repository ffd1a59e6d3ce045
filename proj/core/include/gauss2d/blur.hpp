#pragma once

// Surround-function blur of 8-bit images.
//
// Two routes produce the same filter: a separable pass pair over the
// real-valued 1D profile (fast), and a direct 2D correlation with the UQ8
// tile generated by the bit model (slow, for fidelity checks on crops). Both
// correlate with the kernel on its native coordinate grid, so the tap at
// offset (x, y) weights input pixel (col + x, row + y).

#include <cstdint>
#include <string_view>
#include <vector>

#include "gauss2d/generator.hpp"
#include "gauss2d/image.hpp"

namespace gauss2d {

enum class Boundary { Replicate, Reflect, Zero };
enum class ConvMode { Separable, Direct2d };

Boundary parse_boundary(std::string_view name);
ConvMode parse_mode(std::string_view name);

struct ConvConfig {
  unsigned sigma = 16;
  Boundary boundary = Boundary::Replicate;
  ConvMode mode = ConvMode::Separable;
  bool normalize = true;
  unsigned threads = 0;  // 0: hardware concurrency, capped by GAUSS2D_THREADS
};

/// Worker count for a request: 0 means hardware concurrency; the result is
/// capped by the GAUSS2D_THREADS environment variable when it is set.
unsigned resolve_threads(unsigned requested);

/// Index of the source sample for a possibly out-of-range coordinate, or -1
/// for a zero-boundary miss.
long boundary_index(long i, long n, Boundary b);

/// Real-valued 1D profile e^(-x^2 / 2 sigma^2) over x in [-left, right].
struct SeparableProfile {
  unsigned sigma = 0;
  int left = 0;
  int right = 0;
  bool normalized = false;
  std::vector<float> weights;  // weights[x + left]

  /// The window starts as [-128, 127] (the kernel grid); outermost taps are
  /// dropped while the discarded two-sided mass stays below 2^-16 of the total.
  /// With normalize the kept taps sum to 1.
  static SeparableProfile make(unsigned sigma, bool normalize);

  float at(int x) const { return weights[static_cast<std::size_t>(x + left)]; }
};

Image blur_separable(const Image& img, const SeparableProfile& profile, Boundary boundary,
                     unsigned threads = 0);

/// Integer correlation with the tile; with normalize the result is
/// round(sum / k_raw), otherwise round(sum / 256) saturated at 255.
Image blur_direct2d(const Image& img, const KernelTile& tile, Boundary boundary, bool normalize,
                    unsigned threads = 0);

/// Builds the kernel for cfg.sigma and dispatches on cfg.mode.
Image blur(const Image& img, const ConvConfig& cfg);

}  // namespace gauss2d
