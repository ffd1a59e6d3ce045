#pragma once

// Symmetric coordinate memory and its raster-scan address generator.
//
// The ROM holds a single 256-entry row of the coordinate grid; word[a] is the
// address reinterpreted as two's complement minus the offset, i.e. a - 128.
// Reading the same table through two ports, one indexed by a fast column
// counter and one by a slow row counter, reproduces the full 256x256 'x' and
// 'y' arrays without storing either.

#include <array>
#include <cstddef>
#include <cstdint>
#include <ranges>
#include <span>
#include <string>
#include <utility>

#include "gauss2d/fxp.hpp"

namespace gauss2d {

class CoordRom {
 public:
  static constexpr std::size_t kDepth = 256;

  CoordRom();

  Coord8 word(std::uint8_t addr) const { return words_[addr]; }

  /// Dual-port read; both ports are sampled in the same tick.
  std::pair<Coord8, Coord8> read(std::uint8_t addr1, std::uint8_t addr2) const {
    return {words_[addr1], words_[addr2]};
  }

  std::span<const Coord8, kDepth> words() const { return words_; }

  /// Bytes of persistent coordinate storage.
  static constexpr std::size_t storage_bytes() { return kDepth * sizeof(Coord8); }

 private:
  std::array<Coord8, kDepth> words_;
};

/// The two cascaded 8-bit counters driving the ROM ports.
struct AddressGen {
  std::uint8_t addr1 = 0;  // column, increments every enabled tick
  std::uint8_t addr2 = 0;  // row, increments when addr1 wraps
  bool enable = false;
  std::uint64_t cycle = 0;

  friend constexpr bool operator==(const AddressGen&, const AddressGen&) = default;
};

/// One clock edge. A disabled generator is returned unchanged.
AddressGen addr_step(AddressGen g);

struct CoordPair {
  Coord8 x;
  Coord8 y;
  friend constexpr bool operator==(CoordPair, CoordPair) = default;
};

/// k-th element of the raster stream: x = word[k mod 256], y = word[(k / 256) mod 256].
inline CoordPair coord_at(const CoordRom& rom, std::uint64_t k) {
  return {rom.word(static_cast<std::uint8_t>(k)), rom.word(static_cast<std::uint8_t>(k >> 8))};
}

/// Lazy raster-order stream of the first n_ticks coordinate pairs.
inline auto coord_stream(const CoordRom& rom, std::uint64_t n_ticks) {
  return std::views::iota(std::uint64_t{0}, n_ticks) |
         std::views::transform([&rom](std::uint64_t k) { return coord_at(rom, k); });
}

/// Table-2 style listing: "<8-bit binary address>\t<8-bit binary word> (<decimal>)",
/// one line per address.
std::string rom_dump(const CoordRom& rom);

}  // namespace gauss2d
