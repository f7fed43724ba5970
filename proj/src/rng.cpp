#include "siggeo/rng.hpp"

#include <cmath>
#include <numbers>

namespace siggeo {

double Rng::normal() {
  // u1 in (0, 1] so the log is finite.
  const double u1 =
      (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace siggeo
