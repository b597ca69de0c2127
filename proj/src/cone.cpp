#include "scatterlab/cone.hpp"

#include <stdexcept>

namespace scatterlab {

bool ConeRegion::contains(const double* x) const {
  switch (kind) {
    case Kind::full:
      return norm2(x, dim) > 0.0;
    case Kind::half_line:
      return sign * x[0] > 0.0;
    case Kind::sector: {
      if (x[0] == 0.0 && x[1] == 0.0) return false;
      double th = std::atan2(x[1], x[0]);
      if (theta_min <= theta_max) return th > theta_min && th < theta_max;
      // Wrapped sector straddling the branch cut at pi.
      return th > theta_min || th < theta_max;
    }
    case Kind::axial: {
      double r2 = norm2(x, 3);
      if (r2 == 0.0) return false;
      double dot = x[0] * axis[0] + x[1] * axis[1] + x[2] * axis[2];
      // angle < half_angle  <=>  dot > |x| cos(half_angle), sign-aware.
      double c = std::cos(half_angle);
      if (c >= 0.0) return dot > 0.0 && dot * dot > r2 * c * c;
      return dot > 0.0 || dot * dot < r2 * c * c;
    }
  }
  return false;
}

ConeRegion ConeRegion::full_space(int dim, std::string id) {
  ConeRegion c;
  c.kind = Kind::full;
  c.dim = dim;
  c.id = std::move(id);
  return c;
}

ConeRegion ConeRegion::half_line(int sign, std::string id) {
  ConeRegion c;
  c.kind = Kind::half_line;
  c.dim = 1;
  c.sign = sign >= 0 ? +1 : -1;
  c.id = std::move(id);
  return c;
}

ConeRegion ConeRegion::sector(double theta_min, double theta_max, std::string id) {
  ConeRegion c;
  c.kind = Kind::sector;
  c.dim = 2;
  c.theta_min = theta_min;
  c.theta_max = theta_max;
  c.id = std::move(id);
  return c;
}

ConeRegion ConeRegion::sector_about(const std::array<double, 2>& axis,
                                    double half_angle, std::string id) {
  double th = std::atan2(axis[1], axis[0]);
  auto wrap = [](double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a <= -kPi) a += 2.0 * kPi;
    return a;
  };
  return sector(wrap(th - half_angle), wrap(th + half_angle), std::move(id));
}

ConeRegion ConeRegion::axial(const std::array<double, 3>& axis, double half_angle,
                             std::string id) {
  if (half_angle <= 0.0 || half_angle >= kPi)
    throw std::invalid_argument("ConeRegion::axial: half_angle must lie in (0, pi)");
  ConeRegion c;
  c.kind = Kind::axial;
  c.dim = 3;
  double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (n == 0.0) throw std::invalid_argument("ConeRegion::axial: zero axis");
  c.axis = {axis[0] / n, axis[1] / n, axis[2] / n};
  c.half_angle = half_angle;
  c.id = std::move(id);
  return c;
}

}  // namespace scatterlab
