#include "scatterlab/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace scatterlab {

Propagator::Propagator(const Grid& grid, const Potential& v, double dt)
    : grid_(grid), dt_(dt), v_zero_(v.is_zero()), fft_(grid) {
  if (dt <= 0.0) throw std::invalid_argument("Propagator: dt must be positive");
  v_samples_ = v.sample(grid);
  if (!v_zero_) {
    exp_v_half_.resize(grid.size());
    for (std::size_t i = 0; i < exp_v_half_.size(); ++i) {
      double ph = -0.5 * v_samples_[i] * dt_;
      exp_v_half_[i] = cplx(std::cos(ph), std::sin(ph));
    }
  }
  exp_kin_.resize(grid.size());
  int jj[3];
  for (std::size_t idx = 0; idx < exp_kin_.size(); ++idx) {
    grid_.unflatten(idx, jj);
    double k2 = 0.0;
    for (int a = 0; a < grid_.dim; ++a) {
      double k = grid_.wavenumber(jj[a]);
      k2 += k * k;
    }
    double ph = -0.5 * k2 * dt_;
    exp_kin_[idx] = cplx(std::cos(ph), std::sin(ph));
  }
}

void Propagator::step(WaveFunction& w) const {
  if (!(w.grid == grid_)) throw std::invalid_argument("Propagator: grid mismatch");
  if (!v_zero_)
    for (std::size_t i = 0; i < w.psi.size(); ++i) w.psi[i] *= exp_v_half_[i];
  fft_.forward(w.psi);
  for (std::size_t i = 0; i < w.psi.size(); ++i) w.psi[i] *= exp_kin_[i];
  fft_.backward(w.psi);
  if (!v_zero_)
    for (std::size_t i = 0; i < w.psi.size(); ++i) w.psi[i] *= exp_v_half_[i];
  w.t += dt_;
}

void Propagator::evolve(WaveFunction& w, long steps) const {
  for (long s = 0; s < steps; ++s) step(w);
}

}  // namespace scatterlab
