#include "udg/constants.hpp"

#include <cmath>
#include <string>

namespace udg {

DimensionConstants dimension_constants(int d) {
  if (d < 3)
    fail(ErrorCode::DimensionTooSmall,
         "dimension " + std::to_string(d) + " < 3");
  DimensionConstants c;
  c.d = d;
  c.h = std::sqrt((d + 1.0) / (2.0 * d));
  c.D = 2.0 * c.h;
  c.r0 = std::sqrt(d / (2.0 * (d - 1.0)));
  c.alpha = std::acos(1.0 / d);
  return c;
}

double chord(double theta, int d) {
  if (!(theta >= 0.0) || !(theta <= kTwoPi))
    fail(ErrorCode::DomainError, "chord angle outside [0, 2*pi]");
  const DimensionConstants c = dimension_constants(d);
  return 2.0 * c.r0 * std::sin(theta / 2.0);
}

}  // namespace udg
