#include "scatterlab/velocity.hpp"

#include <cmath>
#include <stdexcept>

#include "scatterlab/stats.hpp"

namespace scatterlab {

const double* VelocityEstimate::p(int path) const {
  return p_plus.data() + static_cast<std::size_t>(path) * dim;
}

VelocityEstimate asymptotic_velocity(const PathEnsemble& e) {
  if (e.n_samples() < 3) throw std::invalid_argument("asymptotic_velocity: too few samples");
  VelocityEstimate v;
  v.dim = e.dim;
  v.n_paths = e.n_paths;
  std::size_t last = e.n_samples() - 1;
  v.horizon = e.times[last];
  // Stored sample nearest half the horizon.
  std::size_t half = 0;
  double best = 1e300;
  for (std::size_t s = 0; s < e.n_samples(); ++s) {
    double d = std::abs(e.times[s] - 0.5 * v.horizon);
    if (d < best) {
      best = d;
      half = s;
    }
  }
  v.half_horizon = e.times[half];
  if (v.horizon <= 0.0 || v.half_horizon <= 0.0)
    throw std::invalid_argument("asymptotic_velocity: horizons must be positive");

  v.p_plus.resize(static_cast<std::size_t>(e.n_paths) * e.dim);
  v.two_horizon_gap.resize(e.n_paths);
  std::vector<double> speed2(e.n_paths);
  for (int p = 0; p < e.n_paths; ++p) {
    const double* xT = e.sample(p, last);
    const double* xH = e.sample(p, half);
    double gap2 = 0.0, s2 = 0.0;
    for (int a = 0; a < e.dim; ++a) {
      double pf = xT[a] / v.horizon;
      double ph = xH[a] / v.half_horizon;
      v.p_plus[static_cast<std::size_t>(p) * e.dim + a] = pf;
      gap2 += (pf - ph) * (pf - ph);
      s2 += pf * pf;
    }
    v.two_horizon_gap[p] = std::sqrt(gap2);
    speed2[p] = s2;
  }
  v.mean_gap = mean_se(v.two_horizon_gap).mean;
  MeanSE ms = mean_se(speed2);
  v.mean_speed_sq = ms.mean;
  v.se_speed_sq = ms.se;
  v.frozen_paths = e.frozen_count();
  return v;
}

}  // namespace scatterlab
