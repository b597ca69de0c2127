// Wave functions on the grid and the Gaussian packet family with its exact
// free evolution.
#pragma once

#include <array>

#include "scatterlab/fft.hpp"
#include "scatterlab/grid.hpp"

namespace scatterlab {

struct WaveFunction {
  Grid grid;
  double t = 0.0;
  cvector psi;
};

// psi_0(x) = (2 pi sigma^2)^(-d/4) exp(-|x-x0|^2/(4 sigma^2) + i k0.x).
// Position std per axis is sigma, momentum std per axis 1/(2 sigma).
struct GaussianSpec {
  std::array<double, 3> x0{0.0, 0.0, 0.0};
  std::array<double, 3> k0{0.0, 0.0, 0.0};
  double sigma = 1.0;

  double k_norm(int dim) const;
  double spread_at(double t) const {  // per-axis position std at time t
    double s2 = sigma * sigma + t * t / (4.0 * sigma * sigma);
    return std::sqrt(s2);
  }
};

// Samples the packet on the grid and normalizes to unit quadrature norm.
// Throws std::invalid_argument if the spectral support bound
// |k0| + 5/(2 sigma) exceeds the grid Nyquist limit pi/dx, or if the
// 5-sigma envelope of the packet does not fit inside the box.
WaveFunction init_gaussian(const Grid& grid, const GaussianSpec& spec);

// Closed-form free evolution of the same packet, sampled on the grid
// without renormalization:
//   psi_t(x) = prod_a (2 s^2/pi)^(1/4) (2 a)^(-1/2) exp(-(y_a)^2/(4 a))
//              * exp(i (k0.x - |k0|^2 t / 2)),
// with a = sigma^2 + i t/2 and y = x - x0 - k0 t.
WaveFunction free_gaussian_exact(const Grid& grid, const GaussianSpec& spec,
                                 double t);

double norm_l2(const WaveFunction& w);

}  // namespace scatterlab
