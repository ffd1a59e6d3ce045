#pragma once

// Bit-accurate models of the arithmetic units behind the coordinate ROM:
// squaring multipliers, the x^2 + y^2 adder, the per-scale shift-based
// scale-down units and the shared e^(-u) lookup table.

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "gauss2d/fxp.hpp"

namespace gauss2d {

/// Exact 8x8 -> 16 bit unsigned product.
constexpr UProd16 mult8x8(UMag8 n1, UMag8 n2) {
  return UProd16{static_cast<std::uint16_t>(unsigned{n1.value} * unsigned{n2.value})};
}

constexpr USum17 add_sq(UProd16 x2, UProd16 y2) {
  return USum17{(std::uint32_t{x2.value} + std::uint32_t{y2.value}) & USum17::kMask};
}

/// A Gaussian scale whose divisor 2*sigma^2 is an exact power of two.
class ScaleShift {
 public:
  /// Throws ConfigError unless sigma is a power of two (so 2*sigma^2 = 2^shift).
  static ScaleShift from_sigma(unsigned sigma);

  unsigned sigma() const { return sigma_; }
  unsigned shift() const { return shift_; }

  friend bool operator==(const ScaleShift&, const ScaleShift&) = default;

 private:
  ScaleShift(unsigned sigma, unsigned shift) : sigma_(sigma), shift_(shift) {}

  unsigned sigma_;
  unsigned shift_;
};

/// The three surround scales, sigma = 16, 64, 128 (shifts 9, 13, 15).
std::array<ScaleShift, 3> design_scales();

/// Same arithmetic as scale_down for sums wider than 17 bits (generalised
/// kernel sizes).
inline ExpArg scale_down_wide(std::uint64_t s, const ScaleShift& sc) {
  const std::uint64_t u = (s << ExpArg::kFracBits) >> sc.shift();
  return ExpArg{static_cast<std::uint16_t>(u > ExpArg::kMaxRaw ? ExpArg::kMaxRaw : u)};
}

/// u = s / 2^shift kept with ExpArg::kFracBits fraction bits (truncating),
/// saturated at ExpArg::kMaxRaw.
inline ExpArg scale_down(USum17 s, const ScaleShift& sc) { return scale_down_wide(s.value, sc); }

/// Round-half-up quantisation of a real argument u >= 0 to ExpArg, saturating.
ExpArg exp_arg_from_real(double u);

/// e^(-u) lookup over every ExpArg code.
class ExpLut {
 public:
  static constexpr std::size_t kEntries = std::size_t{1} << ExpArg::kBits;

  ExpLut();

  UQ8 operator()(ExpArg u) const { return entries_[u.raw]; }
  std::span<const UQ8, kEntries> entries() const { return entries_; }

  /// Process-wide immutable instance.
  static const ExpLut& shared();

 private:
  std::array<UQ8, kEntries> entries_;
};

inline UQ8 exp_lut(ExpArg u) { return ExpLut::shared()(u); }

/// "index,argument,value" CSV with a header line, for HDL memory init.
std::string explut_csv(const ExpLut& lut);

/// Per-stage pipeline latencies in clock ticks.
struct Latencies {
  static constexpr unsigned kMinMult = 5;
  static constexpr unsigned kMaxMult = 8;

  unsigned mult = 5;
  unsigned add = 1;
  unsigned scale = 1;
  unsigned exp = 1;

  /// Throws ConfigError if mult is outside [5, 8] or any stage is zero.
  void validate() const;
  unsigned fill() const { return mult + add + scale + exp; }

  static Latencies with_mult(unsigned mult_latency) {
    Latencies l;
    l.mult = mult_latency;
    l.validate();
    return l;
  }
};

}  // namespace gauss2d
