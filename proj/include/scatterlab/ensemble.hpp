// Path ensembles: initial sampling from a grid density and Euler-Maruyama
// advancement against a drift provider.
#pragma once

#include <cstdint>
#include <vector>

#include "scatterlab/drift.hpp"
#include "scatterlab/grid.hpp"
#include "scatterlab/provider.hpp"

namespace scatterlab {

struct AdvanceStats {
  long steps = 0;       // path-steps taken
  long cap_hits = 0;    // steps where |b| was clamped to b_cap
  long newly_frozen = 0;
};

struct PathEnsemble {
  int dim = 1;
  int n_paths = 0;
  std::uint64_t seed = 0;
  DriftMode mode = DriftMode::nelson;
  double t0 = 0.0;
  double dt_step = 0.0;    // SDE step
  int sample_stride = 1;   // store every sample_stride-th step
  double box_half = 0.0;   // freeze paths that leave [-box_half, box_half]^d

  std::vector<double> times;   // stored sample times, times[0] == t0
  std::vector<double> pos;     // [sample][path][axis]; appending is contiguous
  std::vector<std::uint8_t> frozen;
  std::vector<double> cur;     // current positions, [path][axis]
  long cur_step = 0;

  double current_time() const { return t0 + cur_step * dt_step; }
  std::size_t n_samples() const { return times.size(); }
  const double* sample(int path, std::size_t s) const {
    return pos.data() + (s * static_cast<std::size_t>(n_paths) +
                         static_cast<std::size_t>(path)) * dim;
  }
  long frozen_count() const;
};

// Draws n_paths i.i.d. positions from the cell-mass distribution of rho
// (inverse CDF over flattened cells, uniform jitter inside the cell).
// Path i depends only on (seed, i), never on n_paths.
PathEnsemble sample_initial(const Grid& grid, const std::vector<double>& rho,
                            int n_paths, std::uint64_t seed, DriftMode mode,
                            double t0, double dt_step, int sample_stride);

// Advances cur_step until t0 + cur_step*dt reaches t_target (which must be a
// whole number of steps away).  Nelson mode adds sqrt(dt) standard normals;
// Bohmian mode is the noiseless current-velocity flow.  Paths leaving the
// box are frozen in place and flagged.
void advance_to(PathEnsemble& e, const DriftProvider& drift, double t_target,
                double b_cap, AdvanceStats& stats);

}  // namespace scatterlab
