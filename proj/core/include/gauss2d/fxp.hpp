#pragma once

// Fixed-point vocabulary of the gauss2D datapath. Each type is a thin wrapper
// over the narrowest standard integer that holds its declared hardware width.

#include <compare>
#include <cstdint>

namespace gauss2d {

/// Signed 8-bit spatial coordinate, two's complement, range [-128, 127].
struct Coord8 {
  std::int8_t value = 0;

  static constexpr Coord8 from_bits(std::uint8_t bits) {
    return Coord8{static_cast<std::int8_t>(bits)};
  }
  constexpr std::uint8_t bits() const { return static_cast<std::uint8_t>(value); }

  friend constexpr auto operator<=>(Coord8, Coord8) = default;
};

/// Unsigned 8-bit multiplier operand. Coordinate magnitudes lie in [0, 128];
/// 128 is the bit pattern 1000'0000 read as unsigned.
struct UMag8 {
  std::uint8_t value = 0;
  friend constexpr auto operator<=>(UMag8, UMag8) = default;
};

/// Multiplier output, result[15:0].
struct UProd16 {
  std::uint16_t value = 0;
  friend constexpr auto operator<=>(UProd16, UProd16) = default;
};

/// Adder output x^2 + y^2. 17 significant bits, at most 32768 in kernel use.
struct USum17 {
  static constexpr unsigned kBits = 17;
  static constexpr std::uint32_t kMask = (1u << kBits) - 1;

  std::uint32_t value = 0;
  friend constexpr auto operator<=>(USum17, USum17) = default;
};

/// Unsigned 8-bit fraction with implied scale 1/256 (gout[7:0]).
struct UQ8 {
  std::uint8_t value = 0;

  constexpr double real() const { return value / 256.0; }
  friend constexpr auto operator<=>(UQ8, UQ8) = default;
};

/// Exponent-LUT argument: unsigned UQ3.10, 13 bits, saturating at 8191/1024.
struct ExpArg {
  static constexpr unsigned kFracBits = 10;
  static constexpr unsigned kIntBits = 3;
  static constexpr unsigned kBits = kIntBits + kFracBits;
  static constexpr std::uint16_t kMaxRaw = (1u << kBits) - 1;

  std::uint16_t raw = 0;

  constexpr double real() const { return static_cast<double>(raw) / (1u << kFracBits); }
  friend constexpr auto operator<=>(ExpArg, ExpArg) = default;
};

constexpr UMag8 coord_abs(Coord8 c) {
  const int v = c.value;
  return UMag8{static_cast<std::uint8_t>(v < 0 ? -v : v)};
}

/// Quantises r in [0, 1] to UQ8 with round-half-up, clamping 1.0 to 255.
/// Throws ContractError for r outside [0, 1] or NaN.
UQ8 uq8_encode(double r);

}  // namespace gauss2d
