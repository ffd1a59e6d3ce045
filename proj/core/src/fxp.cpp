#include "gauss2d/fxp.hpp"

#include <cmath>
#include <string>

#include "gauss2d/errors.hpp"

namespace gauss2d {

UQ8 uq8_encode(double r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw ContractError("uq8_encode: value " + std::to_string(r) + " outside [0, 1]");
  }
  // r * 256 is exact, so comparing its fraction avoids the rounding that
  // adding 0.5 would introduce just below a half step.
  const double x = r * 256.0;
  double whole = std::floor(x);
  if (x - whole >= 0.5) whole += 1.0;
  return UQ8{static_cast<std::uint8_t>(whole > 255.0 ? 255.0 : whole)};
}

}  // namespace gauss2d
