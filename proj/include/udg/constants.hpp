#pragma once

#include "udg/errors.hpp"

namespace udg {

/// Geometry constants of the dimension-d gadget family:
///   h     altitude of the unit regular d-simplex, sqrt((d+1)/(2d))
///   D     2h, the forced spindle terminal distance (> sqrt(2))
///   r0    radius of the circle at unit distance from a unit regular
///         (d-1)-vertex clique, sqrt(d/(2(d-1)))
///   alpha central angle subtending a unit chord on that circle, arccos(1/d)
struct DimensionConstants {
  int d = 0;
  double h = 0.0;
  double D = 0.0;
  double r0 = 0.0;
  double alpha = 0.0;
};

/// Throws DimensionTooSmall for d < 3 (the angular density argument behind
/// the rod constructions needs d >= 3).
DimensionConstants dimension_constants(int d);

/// Length of the chord subtending angle theta on the radius-r0 circle:
/// 2 r0 sin(theta/2). Throws DomainError outside [0, 2*pi].
double chord(double theta, int d);

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

}  // namespace udg
