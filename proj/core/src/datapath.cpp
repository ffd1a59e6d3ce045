#include "gauss2d/datapath.hpp"

#include <bit>
#include <cmath>
#include <cstdio>

#include "gauss2d/errors.hpp"

namespace gauss2d {

ScaleShift ScaleShift::from_sigma(unsigned sigma) {
  // 2*sigma^2 must fit the 64-bit shift arithmetic of scale_down_wide.
  if (sigma == 0 || !std::has_single_bit(sigma) || sigma > (1u << 15)) {
    throw ConfigError("unsupported sigma " + std::to_string(sigma) +
                      ": 2*sigma^2 must be a power of two (sigma = 2^k, k <= 15)");
  }
  const unsigned k = static_cast<unsigned>(std::countr_zero(sigma));
  return ScaleShift(sigma, 2 * k + 1);
}

std::array<ScaleShift, 3> design_scales() {
  return {ScaleShift::from_sigma(16), ScaleShift::from_sigma(64), ScaleShift::from_sigma(128)};
}

ExpArg exp_arg_from_real(double u) {
  if (!(u >= 0.0)) throw ContractError("exp argument must be non-negative");
  const double x = u * (1u << ExpArg::kFracBits);
  double q = std::floor(x);
  if (x - q >= 0.5) q += 1.0;
  return ExpArg{static_cast<std::uint16_t>(q >= ExpArg::kMaxRaw ? ExpArg::kMaxRaw : q)};
}

ExpLut::ExpLut() {
  for (std::size_t i = 0; i < kEntries; ++i) {
    const long double u = static_cast<long double>(i) / (1u << ExpArg::kFracBits);
    entries_[i] = uq8_encode(static_cast<double>(std::exp(-u)));
  }
}

const ExpLut& ExpLut::shared() {
  static const ExpLut lut;
  return lut;
}

std::string explut_csv(const ExpLut& lut) {
  std::string out = "index,argument,value\n";
  char line[64];
  for (std::size_t i = 0; i < ExpLut::kEntries; ++i) {
    const ExpArg u{static_cast<std::uint16_t>(i)};
    std::snprintf(line, sizeof line, "%zu,%.10f,%u\n", i, u.real(), unsigned{lut(u).value});
    out += line;
  }
  return out;
}

void Latencies::validate() const {
  if (mult < kMinMult || mult > kMaxMult) {
    throw ConfigError("multiplier latency must be in [5, 8], got " + std::to_string(mult));
  }
  if (add == 0 || scale == 0 || exp == 0) throw ConfigError("stage latency must be >= 1");
}

}  // namespace gauss2d
