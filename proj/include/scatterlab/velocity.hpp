// Asymptotic velocity p_+ = X_T / T per path, with a half-horizon
// convergence diagnostic.
#pragma once

#include <vector>

#include "scatterlab/ensemble.hpp"

namespace scatterlab {

struct VelocityEstimate {
  double horizon = 0.0;       // T
  double half_horizon = 0.0;  // stored sample time nearest T/2
  std::vector<double> p_plus; // [path][axis] at the full horizon
  std::vector<double> two_horizon_gap;  // |X_T/T - X_T'/T'| per path
  double mean_gap = 0.0;
  double mean_speed_sq = 0.0;  // E|p_+|^2
  double se_speed_sq = 0.0;
  long frozen_paths = 0;

  const double* p(int path) const;
  int dim = 1;
  int n_paths = 0;
};

VelocityEstimate asymptotic_velocity(const PathEnsemble& e);

}  // namespace scatterlab
