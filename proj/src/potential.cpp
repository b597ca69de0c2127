#include "scatterlab/potential.hpp"

#include <cmath>

namespace scatterlab {

double Potential::operator()(const double* x, int dim) const {
  switch (kind) {
    case Kind::zero:
      return 0.0;
    case Kind::constant:
      return v0;
    case Kind::gaussian_bump: {
      double r2 = 0.0;
      for (int a = 0; a < dim; ++a) {
        double y = x[a] - center[a];
        r2 += y * y;
      }
      return v0 * std::exp(-r2 / (width * width));
    }
    case Kind::soft_power: {
      double r2 = 0.0;
      for (int a = 0; a < dim; ++a) {
        double y = x[a] - center[a];
        r2 += y * y;
      }
      return v0 * std::pow(1.0 + r2 / (width * width), -0.5 * power);
    }
  }
  return 0.0;
}

std::vector<double> Potential::sample(const Grid& grid) const {
  std::vector<double> v(grid.size(), 0.0);
  if (is_zero()) return v;
  double x[3];
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    grid.node_coords(idx, x);
    v[idx] = (*this)(x, grid.dim);
  }
  return v;
}

Potential Potential::constant(double v) {
  Potential p;
  p.kind = Kind::constant;
  p.v0 = v;
  return p;
}

Potential Potential::gaussian_bump(double v0, double width, std::array<double, 3> center) {
  Potential p;
  p.kind = Kind::gaussian_bump;
  p.v0 = v0;
  p.width = width;
  p.center = center;
  return p;
}

Potential Potential::soft_power(double v0, double width, double pw,
                                std::array<double, 3> center) {
  Potential p;
  p.kind = Kind::soft_power;
  p.v0 = v0;
  p.width = width;
  p.power = pw;
  p.center = center;
  return p;
}

}  // namespace scatterlab
