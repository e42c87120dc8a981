// Shared aliases and small numeric helpers used across the library.
//
// Everything geometric in this project lives in the plane, so the linear
// algebra is fixed to Eigen's 2d types. Matrices always store lattice basis
// vectors as *columns*.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ovals {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// 2d cross product (z-component of the wedge); det[a b] for column pairs.
inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// fractional part in [0,1); frac(-0.25) = 0.75
inline double frac(double x) {
  double f = x - std::floor(x);
  return (f < 1.0) ? f : 0.0;  // guard against f == 1.0 from rounding
}

// reduce an angle difference to (-pi, pi]
inline double wrap_angle(double a) {
  a = std::remainder(a, kTwoPi);
  return a;
}

// mirror map s(x,y) = (x,-y) from the geodesic-flow Taylor expansion
inline Vec2 mirror(const Vec2& v) { return Vec2(v.x(), -v.y()); }

// Raised when a run would exceed a configured work cap (e.g. the candidate
// budget of the exact counter). CLI maps this to exit code 3.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an iterative numeric routine fails to reach its tolerance.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ovals
