// Spectral observables of a wave function: densities, probability current,
// momentum profiles, and the scattering admissibility diagnostics.
#pragma once

#include <array>
#include <vector>

#include "scatterlab/cone.hpp"
#include "scatterlab/fft.hpp"
#include "scatterlab/wavefunction.hpp"

namespace scatterlab {

struct GradientField {
  // Spectral derivative d_a psi, components 0..dim-1.
  std::array<cvector, 3> comp;
};

class SpectralOps {
 public:
  explicit SpectralOps(const Grid& grid);

  const Grid& grid() const { return grid_; }

  // |psi_hat(k)|^2 on the wavenumber lattice (FFT index order), normalized so
  // that sum * k_cell_volume equals the position-space mass exactly.
  std::vector<double> momentum_density(const WaveFunction& w) const;

  // Momentum profile of the evolved state; at a horizon large enough that
  // the packet has left the interaction region this is the outgoing profile.
  std::vector<double> out_state_density(const WaveFunction& w) const {
    return momentum_density(w);
  }

  GradientField gradient(const WaveFunction& w) const;

  std::vector<double> density(const WaveFunction& w) const;

  // J_a = Im(conj(psi) d_a psi).
  std::array<std::vector<double>, 3> current(const WaveFunction& w,
                                             const GradientField& g) const;

  // grad rho = 2 Re(conj(psi) d_a psi).
  std::array<std::vector<double>, 3> grad_density(const WaveFunction& w,
                                                  const GradientField& g) const;

  // Components of (P - Q/t) psi = -i grad psi - (x/t) psi.
  void ballistic_defect(const WaveFunction& w, const GradientField& g, double t,
                        std::array<cvector, 3>& out) const;

  // h2(t) = || (P - Q/t) psi ||_{L^2}; for free evolution t*h2(t) = ||Q psi_0||.
  double h2_diagnostic(const WaveFunction& w, const GradientField& g,
                       double t) const;
  double h2_diagnostic(const WaveFunction& w, double t) const;

  // || f ||_{H^1}^2 = sum (1 + |k|^2) |f_hat|^2 k_cell  (spectral weight).
  double sobolev_h1_sq(const cvector& f) const;

  // Smooth collar: 1 within angular distance delta of the lateral cone
  // boundary outside radius R, falling to 0 at angular distance 2*delta;
  // ramps radially from 0 at R/2 to 1 at R.
  std::vector<double> collar(const ConeRegion& cone, double R,
                             double delta) const;

  // h5(t) = ||theta(Q) psi||_{H^1} * ||(P - Q/t) psi||_{H^1}.
  double h5_diagnostic(const WaveFunction& w, const GradientField& g, double t,
                       const std::vector<double>& collar_field) const;

  double kinetic_energy(const WaveFunction& w) const;
  double energy(const WaveFunction& w, const std::vector<double>& v) const;

  // || Q psi || = sqrt(sum |x|^2 |psi|^2 dV).
  double position_norm(const WaveFunction& w) const;

 private:
  Grid grid_;
  Fft fft_;
  mutable cvector work_;
};

}  // namespace scatterlab
