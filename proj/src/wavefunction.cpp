#include "scatterlab/wavefunction.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "scatterlab/stats.hpp"

namespace scatterlab {

double GaussianSpec::k_norm(int dim) const {
  double s = 0.0;
  for (int a = 0; a < dim; ++a) s += k0[a] * k0[a];
  return std::sqrt(s);
}

WaveFunction init_gaussian(const Grid& grid, const GaussianSpec& spec) {
  double dx = grid.dx();
  double k_need = spec.k_norm(grid.dim) + 5.0 / (2.0 * spec.sigma);
  double k_nyq = kPi / dx;
  if (k_need >= k_nyq)
    throw std::invalid_argument(
        "init_gaussian: spectral support " + std::to_string(k_need) +
        " exceeds Nyquist " + std::to_string(k_nyq));
  for (int a = 0; a < grid.dim; ++a) {
    double margin = 0.5 * grid.length - std::abs(spec.x0[a]) - 5.0 * spec.sigma;
    if (margin < 0.0)
      throw std::invalid_argument("init_gaussian: 5-sigma envelope leaves the box on axis " +
                                  std::to_string(a));
  }

  WaveFunction w;
  w.grid = grid;
  w.t = 0.0;
  w.psi.resize(grid.size());
  double s2 = spec.sigma * spec.sigma;
  double amp = std::pow(2.0 * kPi * s2, -0.25 * grid.dim);
  double x[3];
  for (std::size_t idx = 0; idx < w.psi.size(); ++idx) {
    grid.node_coords(idx, x);
    double q = 0.0, phase = 0.0;
    for (int a = 0; a < grid.dim; ++a) {
      double y = x[a] - spec.x0[a];
      q += y * y;
      phase += spec.k0[a] * x[a];
    }
    w.psi[idx] = amp * std::exp(-q / (4.0 * s2)) * cplx(std::cos(phase), std::sin(phase));
  }
  double nrm = norm_l2(w);
  for (auto& z : w.psi) z /= nrm;
  return w;
}

WaveFunction free_gaussian_exact(const Grid& grid, const GaussianSpec& spec, double t) {
  WaveFunction w;
  w.grid = grid;
  w.t = t;
  w.psi.resize(grid.size());
  double s2 = spec.sigma * spec.sigma;
  cplx a(s2, 0.5 * t);
  cplx inv4a = 1.0 / (4.0 * a);
  // (2 s^2 / pi)^(1/4) (2a)^(-1/2) per axis, principal square root.
  cplx axis_amp = std::pow(2.0 * s2 / kPi, 0.25) / std::sqrt(2.0 * a);
  cplx amp = 1.0;
  for (int d = 0; d < grid.dim; ++d) amp *= axis_amp;
  double k2 = 0.0;
  for (int d = 0; d < grid.dim; ++d) k2 += spec.k0[d] * spec.k0[d];
  double x[3];
  for (std::size_t idx = 0; idx < w.psi.size(); ++idx) {
    grid.node_coords(idx, x);
    double q = 0.0, phase = -0.5 * k2 * t;
    for (int d = 0; d < grid.dim; ++d) {
      double y = x[d] - spec.x0[d] - spec.k0[d] * t;
      q += y * y;
      phase += spec.k0[d] * x[d];
    }
    w.psi[idx] = amp * std::exp(-q * inv4a) * cplx(std::cos(phase), std::sin(phase));
  }
  return w;
}

double norm_l2(const WaveFunction& w) {
  std::vector<double> m(w.psi.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::norm(w.psi[i]);
  return std::sqrt(kahan_sum(m) * w.grid.cell_volume());
}

}  // namespace scatterlab
