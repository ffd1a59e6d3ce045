#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "gauss2d/errors.hpp"

namespace gauss2d {

/// Fixed-latency pipeline register chain with initiation interval 1.
///
/// tick() presents one input and returns the value presented `latency` ticks
/// earlier; registers reset to T{}.
template <typename T>
class PipeStage {
 public:
  static constexpr unsigned kMaxLatency = 15;

  explicit PipeStage(unsigned latency) : latency_(latency) {
    if (latency < 1 || latency > kMaxLatency) {
      throw ConfigError("pipeline latency must be in [1, 15]");
    }
    reset();
  }

  T tick(const T& in) {
    const T out = ring_[(pos_ - latency_) & kMask];
    ring_[pos_ & kMask] = in;
    ++pos_;
    return out;
  }

  /// Value that the next tick() will return.
  const T& peek() const { return ring_[(pos_ - latency_) & kMask]; }

  void reset() {
    ring_.fill(T{});
    pos_ = 0;
  }

  unsigned latency() const { return latency_; }

 private:
  static constexpr std::size_t kSize = 16;
  static constexpr std::size_t kMask = kSize - 1;

  std::array<T, kSize> ring_{};
  std::size_t pos_ = 0;
  unsigned latency_;
};

}  // namespace gauss2d
