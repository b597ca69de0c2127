#include "scatterlab/spectral.hpp"

#include <cmath>

#include "scatterlab/stats.hpp"

namespace scatterlab {

SpectralOps::SpectralOps(const Grid& grid)
    : grid_(grid), fft_(grid), work_(grid.size()) {}

std::vector<double> SpectralOps::momentum_density(const WaveFunction& w) const {
  work_ = w.psi;
  fft_.forward(work_);
  std::vector<double> out(work_.size());
  // |psi_hat|^2 = |DFT|^2 dx^{2d} / (2 pi)^d; then sum * (2 pi / L)^d matches
  // the position-space mass by the discrete Parseval identity.
  double scale = std::pow(grid_.dx(), 2 * grid_.dim) / std::pow(2.0 * kPi, grid_.dim);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale * std::norm(work_[i]);
  return out;
}

GradientField SpectralOps::gradient(const WaveFunction& w) const {
  GradientField g;
  work_ = w.psi;
  fft_.forward(work_);
  int n = grid_.n;
  int jj[3];
  for (int a = 0; a < grid_.dim; ++a) {
    g.comp[a].resize(work_.size());
    for (std::size_t idx = 0; idx < work_.size(); ++idx) {
      grid_.unflatten(idx, jj);
      double k = grid_.wavenumber(jj[a]);
      // Zero the unmatched Nyquist mode so the derivative field stays the
      // transform of a real multiplier.
      if (n % 2 == 0 && jj[a] == n / 2) k = 0.0;
      g.comp[a][idx] = cplx(0.0, k) * work_[idx];
    }
    fft_.backward(g.comp[a]);
  }
  return g;
}

std::vector<double> SpectralOps::density(const WaveFunction& w) const {
  std::vector<double> rho(w.psi.size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(w.psi[i]);
  return rho;
}

std::array<std::vector<double>, 3> SpectralOps::current(const WaveFunction& w,
                                                        const GradientField& g) const {
  std::array<std::vector<double>, 3> j;
  for (int a = 0; a < grid_.dim; ++a) {
    j[a].resize(w.psi.size());
    for (std::size_t i = 0; i < w.psi.size(); ++i)
      j[a][i] = std::imag(std::conj(w.psi[i]) * g.comp[a][i]);
  }
  return j;
}

std::array<std::vector<double>, 3> SpectralOps::grad_density(const WaveFunction& w,
                                                             const GradientField& g) const {
  std::array<std::vector<double>, 3> gr;
  for (int a = 0; a < grid_.dim; ++a) {
    gr[a].resize(w.psi.size());
    for (std::size_t i = 0; i < w.psi.size(); ++i)
      gr[a][i] = 2.0 * std::real(std::conj(w.psi[i]) * g.comp[a][i]);
  }
  return gr;
}

void SpectralOps::ballistic_defect(const WaveFunction& w, const GradientField& g,
                                   double t, std::array<cvector, 3>& out) const {
  double x[3];
  for (int a = 0; a < grid_.dim; ++a) out[a].resize(w.psi.size());
  for (std::size_t i = 0; i < w.psi.size(); ++i) {
    grid_.node_coords(i, x);
    for (int a = 0; a < grid_.dim; ++a)
      out[a][i] = cplx(0.0, -1.0) * g.comp[a][i] - (x[a] / t) * w.psi[i];
  }
}

double SpectralOps::h2_diagnostic(const WaveFunction& w, const GradientField& g,
                                  double t) const {
  std::array<cvector, 3> d;
  ballistic_defect(w, g, t, d);
  std::vector<double> m(w.psi.size(), 0.0);
  for (int a = 0; a < grid_.dim; ++a)
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += std::norm(d[a][i]);
  return std::sqrt(kahan_sum(m) * grid_.cell_volume());
}

double SpectralOps::h2_diagnostic(const WaveFunction& w, double t) const {
  GradientField g = gradient(w);
  return h2_diagnostic(w, g, t);
}

double SpectralOps::sobolev_h1_sq(const cvector& f) const {
  work_ = f;
  fft_.forward(work_);
  int jj[3];
  std::vector<double> m(work_.size());
  double scale = std::pow(grid_.dx(), 2 * grid_.dim) / std::pow(2.0 * kPi, grid_.dim);
  for (std::size_t idx = 0; idx < work_.size(); ++idx) {
    grid_.unflatten(idx, jj);
    double k2 = 0.0;
    for (int a = 0; a < grid_.dim; ++a) {
      double k = grid_.wavenumber(jj[a]);
      k2 += k * k;
    }
    m[idx] = (1.0 + k2) * scale * std::norm(work_[idx]);
  }
  return kahan_sum(m) * grid_.k_cell_volume();
}

namespace {

// Smallest angular distance (radians) from direction of x to the lateral
// boundary of the cone.  Positive inside and outside alike.
double angular_gap(const ConeRegion& cone, const double* x) {
  switch (cone.kind) {
    case ConeRegion::Kind::full:
      return kPi;  // no lateral boundary
    case ConeRegion::Kind::half_line: {
      // Boundary is the origin direction flip: gap = 0 or pi.
      return (cone.sign * x[0] > 0) ? kPi : 0.0;
    }
    case ConeRegion::Kind::sector: {
      double th = std::atan2(x[1], x[0]);
      auto wrap = [](double d) {
        while (d > kPi) d -= 2.0 * kPi;
        while (d < -kPi) d += 2.0 * kPi;
        return std::abs(d);
      };
      return std::min(wrap(th - cone.theta_min), wrap(th - cone.theta_max));
    }
    case ConeRegion::Kind::axial: {
      double r = std::sqrt(norm2(x, 3));
      if (r == 0.0) return 0.0;
      double c = (x[0] * cone.axis[0] + x[1] * cone.axis[1] + x[2] * cone.axis[2]) / r;
      c = std::min(1.0, std::max(-1.0, c));
      return std::abs(std::acos(c) - cone.half_angle);
    }
  }
  return kPi;
}

// Cubic smoothstep: 0 at u<=0, 1 at u>=1.
double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * (3.0 - 2.0 * u);
}

}  // namespace

std::vector<double> SpectralOps::collar(const ConeRegion& cone, double R,
                                        double delta) const {
  std::vector<double> th(grid_.size(), 0.0);
  double x[3];
  for (std::size_t idx = 0; idx < th.size(); ++idx) {
    grid_.node_coords(idx, x);
    double r = std::sqrt(norm2(x, grid_.dim));
    if (r <= 0.5 * R) continue;
    double radial = smoothstep((r - 0.5 * R) / (0.5 * R));
    double gap = angular_gap(cone, x);
    double angular = 1.0 - smoothstep((gap - delta) / delta);
    th[idx] = radial * angular;
  }
  return th;
}

double SpectralOps::h5_diagnostic(const WaveFunction& w, const GradientField& g,
                                  double t, const std::vector<double>& collar_field) const {
  cvector masked(w.psi.size());
  for (std::size_t i = 0; i < masked.size(); ++i) masked[i] = collar_field[i] * w.psi[i];
  double a = std::sqrt(sobolev_h1_sq(masked));
  std::array<cvector, 3> d;
  ballistic_defect(w, g, t, d);
  double b2 = 0.0;
  for (int ax = 0; ax < grid_.dim; ++ax) b2 += sobolev_h1_sq(d[ax]);
  return a * std::sqrt(b2);
}

double SpectralOps::kinetic_energy(const WaveFunction& w) const {
  work_ = w.psi;
  fft_.forward(work_);
  int jj[3];
  std::vector<double> m(work_.size());
  double scale = std::pow(grid_.dx(), 2 * grid_.dim) / std::pow(2.0 * kPi, grid_.dim);
  for (std::size_t idx = 0; idx < work_.size(); ++idx) {
    grid_.unflatten(idx, jj);
    double k2 = 0.0;
    for (int a = 0; a < grid_.dim; ++a) {
      double k = grid_.wavenumber(jj[a]);
      k2 += k * k;
    }
    m[idx] = 0.5 * k2 * scale * std::norm(work_[idx]);
  }
  return kahan_sum(m) * grid_.k_cell_volume();
}

double SpectralOps::energy(const WaveFunction& w, const std::vector<double>& v) const {
  double e = kinetic_energy(w);
  if (!v.empty()) {
    std::vector<double> m(w.psi.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = v[i] * std::norm(w.psi[i]);
    e += kahan_sum(m) * grid_.cell_volume();
  }
  return e;
}

double SpectralOps::position_norm(const WaveFunction& w) const {
  std::vector<double> m(w.psi.size());
  double x[3];
  for (std::size_t i = 0; i < m.size(); ++i) {
    grid_.node_coords(i, x);
    m[i] = norm2(x, grid_.dim) * std::norm(w.psi[i]);
  }
  return std::sqrt(kahan_sum(m) * grid_.cell_volume());
}

}  // namespace scatterlab
