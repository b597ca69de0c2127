// Split-step Fourier propagator for i d/dt psi = (-Laplacian/2 + V) psi.
#pragma once

#include <vector>

#include "scatterlab/fft.hpp"
#include "scatterlab/potential.hpp"
#include "scatterlab/wavefunction.hpp"

namespace scatterlab {

// One step is the Strang composition
//   exp(-i V dt/2) F^{-1} exp(-i |k|^2 dt/2) F exp(-i V dt/2),
// exactly unitary on the grid; exact for V = 0 at any dt.
class Propagator {
 public:
  Propagator(const Grid& grid, const Potential& v, double dt);

  void step(WaveFunction& w) const;
  void evolve(WaveFunction& w, long steps) const;

  double dt() const { return dt_; }
  const std::vector<double>& potential_samples() const { return v_samples_; }

 private:
  Grid grid_;
  double dt_;
  bool v_zero_;
  Fft fft_;
  std::vector<double> v_samples_;
  cvector exp_v_half_;  // exp(-i V dt/2) per node
  cvector exp_kin_;     // exp(-i |k|^2 dt/2) per lattice point
};

}  // namespace scatterlab
