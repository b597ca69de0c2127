// Open cones with apex at the origin and the truncated exterior regions
// D = C \cap closure(B_R)^c used for crossing statistics.
#pragma once

#include <array>
#include <cmath>
#include <string>

#include "scatterlab/grid.hpp"

namespace scatterlab {

struct ConeRegion {
  enum class Kind {
    full,       // all of R^d minus the origin (any dim)
    half_line,  // d = 1: sign * x > 0
    sector,     // d = 2: theta_min < atan2(y, x) < theta_max
    axial       // d = 3: angle(x, axis) < half_angle
  };

  Kind kind = Kind::full;
  int dim = 1;
  std::string id = "cone";

  int sign = +1;                           // half_line
  double theta_min = 0, theta_max = 0;     // sector, within (-pi, pi]
  std::array<double, 3> axis{1, 0, 0};     // axial, unit length
  double half_angle = 0;                   // axial, in (0, pi)

  // Strict membership; the apex x = 0 is never contained.
  bool contains(const double* x) const;

  static ConeRegion full_space(int dim, std::string id = "full");
  static ConeRegion half_line(int sign, std::string id = "half");
  static ConeRegion sector(double theta_min, double theta_max,
                           std::string id = "sector");
  // d = 2 convenience: symmetric sector of given half-angle about an axis.
  static ConeRegion sector_about(const std::array<double, 2>& axis,
                                 double half_angle, std::string id = "sector");
  static ConeRegion axial(const std::array<double, 3>& axis, double half_angle,
                          std::string id = "cone");
};

inline double norm2(const double* x, int dim) {
  double s = 0;
  for (int a = 0; a < dim; ++a) s += x[a] * x[a];
  return s;
}

// x in C with |x| > R (both strict).
inline bool region_contains(const ConeRegion& cone, double R, const double* x) {
  return norm2(x, cone.dim) > R * R && cone.contains(x);
}

}  // namespace scatterlab
