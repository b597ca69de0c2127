// Smooth time windows for flux integrals: 1 on [t_start, t_flat], cubic
// taper to 0 at t_end.  Total variation is 1.
#pragma once

#include <string>

namespace scatterlab {

struct WindowFunction {
  std::string name = "window";
  double t_start = 0.0;
  double t_flat = 0.0;
  double t_end = 0.0;

  double operator()(double t) const {
    if (t <= t_flat) return 1.0;
    if (t >= t_end) return 0.0;
    double u = (t - t_flat) / (t_end - t_flat);
    return 1.0 - u * u * (3.0 - 2.0 * u);
  }
};

}  // namespace scatterlab
