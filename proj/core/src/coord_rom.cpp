#include "gauss2d/coord_rom.hpp"

#include <bitset>

namespace gauss2d {

CoordRom::CoordRom() {
  for (std::size_t a = 0; a < kDepth; ++a) {
    words_[a] = Coord8{static_cast<std::int8_t>(static_cast<int>(a) - 128)};
  }
}

AddressGen addr_step(AddressGen g) {
  if (!g.enable) return g;
  if (g.addr1 == 255) ++g.addr2;  // uint8_t wraps 255 -> 0
  ++g.addr1;
  ++g.cycle;
  return g;
}

std::string rom_dump(const CoordRom& rom) {
  std::string out;
  out.reserve(CoordRom::kDepth * 26);
  for (std::size_t a = 0; a < CoordRom::kDepth; ++a) {
    const Coord8 w = rom.words()[a];
    out += std::bitset<8>(a).to_string();
    out += '\t';
    out += std::bitset<8>(w.bits()).to_string();
    out += " (";
    out += std::to_string(static_cast<int>(w.value));
    out += ")\n";
  }
  return out;
}

}  // namespace gauss2d
