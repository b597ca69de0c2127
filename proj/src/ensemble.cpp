#include "scatterlab/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scatterlab/rng.hpp"
#include "scatterlab/stats.hpp"

namespace scatterlab {

long PathEnsemble::frozen_count() const {
  long n = 0;
  for (auto f : frozen) n += f;
  return n;
}

PathEnsemble sample_initial(const Grid& grid, const std::vector<double>& rho,
                            int n_paths, std::uint64_t seed, DriftMode mode,
                            double t0, double dt_step, int sample_stride) {
  if (rho.size() != grid.size()) throw std::invalid_argument("sample_initial: size mismatch");
  if (n_paths < 1 || dt_step <= 0.0 || sample_stride < 1)
    throw std::invalid_argument("sample_initial: bad arguments");

  // Cumulative cell masses over flattened cells.
  std::vector<double> cum(rho.size() + 1);
  cum[0] = 0.0;
  double s = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    double y = rho[i] - comp;
    double t = s + y;
    comp = (t - s) - y;
    s = t;
    cum[i + 1] = s;
  }
  double total = cum.back();
  if (total <= 0.0) throw std::invalid_argument("sample_initial: non-positive density");

  PathEnsemble e;
  e.dim = grid.dim;
  e.n_paths = n_paths;
  e.seed = seed;
  e.mode = mode;
  e.t0 = t0;
  e.dt_step = dt_step;
  e.sample_stride = sample_stride;
  e.box_half = 0.5 * grid.length;
  e.times.push_back(t0);
  e.pos.resize(static_cast<std::size_t>(n_paths) * grid.dim);
  e.frozen.assign(n_paths, 0);
  e.cur.resize(static_cast<std::size_t>(n_paths) * grid.dim);

  double dx = grid.dx();
  int jj[3];
  for (int p = 0; p < n_paths; ++p) {
    RandomStream rs(seed, static_cast<std::uint64_t>(p));
    double u = rs.uniform(counter_init(0)) * total;
    // Find the cell with cum[j] < u <= cum[j+1].
    std::size_t j =
        std::lower_bound(cum.begin() + 1, cum.end(), u) - (cum.begin() + 1);
    if (j >= rho.size()) j = rho.size() - 1;
    grid.unflatten(j, jj);
    double* x = &e.cur[static_cast<std::size_t>(p) * grid.dim];
    for (int a = 0; a < grid.dim; ++a) {
      // Jitter centered on the node: exactly the piecewise-constant cell law.
      double v = rs.uniform(counter_init(1 + a));
      x[a] = grid.coord(jj[a]) + (v - 0.5) * dx;
    }
    double* snap = &e.pos[static_cast<std::size_t>(p) * grid.dim];
    for (int a = 0; a < grid.dim; ++a) snap[a] = x[a];
  }
  return e;
}

void advance_to(PathEnsemble& e, const DriftProvider& drift, double t_target,
                double b_cap, AdvanceStats& stats) {
  double steps_real = (t_target - e.current_time()) / e.dt_step;
  long steps = std::lround(steps_real);
  if (std::abs(steps_real - steps) > 1e-6)
    throw std::invalid_argument("advance_to: target not a whole number of steps");
  bool noisy = (e.mode == DriftMode::nelson);
  double sqdt = std::sqrt(e.dt_step);
  double b[3], z[4];
  for (long s = 0; s < steps; ++s) {
    double t = e.t0 + e.cur_step * e.dt_step;
    long step_idx = e.cur_step;
    for (int p = 0; p < e.n_paths; ++p) {
      if (e.frozen[p]) continue;
      double* x = &e.cur[static_cast<std::size_t>(p) * e.dim];
      drift.drift(t, x, b);
      double bn2 = 0.0;
      for (int a = 0; a < e.dim; ++a) bn2 += b[a] * b[a];
      if (bn2 > b_cap * b_cap) {
        double sc = b_cap / std::sqrt(bn2);
        for (int a = 0; a < e.dim; ++a) b[a] *= sc;
        ++stats.cap_hits;
      }
      if (noisy) {
        RandomStream rs(e.seed, static_cast<std::uint64_t>(p));
        rs.normal_pair(counter_step(step_idx, 0), &z[0], &z[1]);
        if (e.dim == 3) rs.normal_pair(counter_step(step_idx, 2), &z[2], &z[3]);
        for (int a = 0; a < e.dim; ++a) x[a] += b[a] * e.dt_step + sqdt * z[a];
      } else {
        for (int a = 0; a < e.dim; ++a) x[a] += b[a] * e.dt_step;
      }
      ++stats.steps;
      bool out = false;
      for (int a = 0; a < e.dim; ++a)
        if (std::abs(x[a]) > e.box_half) out = true;
      if (out) {
        // Freeze at the clamped boundary position.
        for (int a = 0; a < e.dim; ++a)
          x[a] = std::min(e.box_half, std::max(-e.box_half, x[a]));
        e.frozen[p] = 1;
        ++stats.newly_frozen;
      }
    }
    ++e.cur_step;
    if ((e.cur_step % e.sample_stride) == 0) {
      e.times.push_back(e.t0 + e.cur_step * e.dt_step);
      e.pos.insert(e.pos.end(), e.cur.begin(), e.cur.end());
    }
  }
}

}  // namespace scatterlab
