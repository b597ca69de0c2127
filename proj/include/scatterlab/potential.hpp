// External potentials: bounded, smooth, short range.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "scatterlab/grid.hpp"

namespace scatterlab {

struct Potential {
  enum class Kind { zero, constant, gaussian_bump, soft_power };

  Kind kind = Kind::zero;
  double v0 = 0.0;
  double width = 1.0;
  double power = 7.0;  // soft_power decay exponent; >= 7 keeps it short range
  std::array<double, 3> center{0.0, 0.0, 0.0};

  bool is_zero() const { return kind == Kind::zero || v0 == 0.0; }

  double operator()(const double* x, int dim) const;
  std::vector<double> sample(const Grid& grid) const;

  static Potential zero() { return {}; }
  static Potential constant(double v);
  static Potential gaussian_bump(double v0, double width,
                                 std::array<double, 3> center = {0, 0, 0});
  // v0 * (1 + r^2/w^2)^(-p/2): algebraic short-range family.
  static Potential soft_power(double v0, double width, double p,
                              std::array<double, 3> center = {0, 0, 0});
};

}  // namespace scatterlab
