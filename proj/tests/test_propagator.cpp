#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "scatterlab/propagator.hpp"
#include "scatterlab/spectral.hpp"
#include "scatterlab/stats.hpp"
#include "scatterlab/wavefunction.hpp"

using namespace scatterlab;

namespace {

double max_node_diff(const WaveFunction& a, const WaveFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.psi.size(); ++i)
    m = std::max(m, std::abs(a.psi[i] - b.psi[i]));
  return m;
}

}  // namespace

TEST_CASE("free evolution reproduces the closed form in 1d") {
  Grid g{1, 512, 120.0};
  GaussianSpec spec;
  spec.sigma = 1.0;
  spec.x0 = {-10.0, 0.0, 0.0};
  spec.k0 = {1.5, 0.0, 0.0};
  WaveFunction w = init_gaussian(g, spec);
  Propagator prop(g, Potential::zero(), 0.05);
  prop.evolve(w, 120);  // t = 6
  CHECK(w.t == doctest::Approx(6.0));
  WaveFunction exact = free_gaussian_exact(g, spec, 6.0);
  CHECK(max_node_diff(w, exact) < 1e-10);
}

TEST_CASE("free evolution reproduces the closed form in 2d") {
  Grid g{2, 128, 60.0};
  GaussianSpec spec;
  spec.sigma = 1.0;
  spec.k0 = {1.0, 0.5, 0.0};
  WaveFunction w = init_gaussian(g, spec);
  Propagator prop(g, Potential::zero(), 0.1);
  prop.evolve(w, 40);  // t = 4
  WaveFunction exact = free_gaussian_exact(g, spec, 4.0);
  CHECK(max_node_diff(w, exact) < 1e-10);
}

TEST_CASE("norm is conserved to rounding with a potential") {
  Grid g{1, 256, 60.0};
  GaussianSpec spec;
  spec.sigma = 1.0;
  spec.x0 = {-6.0, 0.0, 0.0};
  spec.k0 = {2.0, 0.0, 0.0};
  WaveFunction w = init_gaussian(g, spec);
  Propagator prop(g, Potential::gaussian_bump(1.0, 1.0), 1e-3);
  prop.evolve(w, 2000);
  CHECK(std::abs(norm_l2(w) - 1.0) < 1e-10);
}

TEST_CASE("evolution is reversible") {
  Grid g{1, 256, 60.0};
  GaussianSpec spec;
  spec.sigma = 1.0;
  spec.x0 = {-6.0, 0.0, 0.0};
  spec.k0 = {2.0, 0.0, 0.0};
  WaveFunction w0 = init_gaussian(g, spec);
  WaveFunction w = w0;
  Potential v = Potential::gaussian_bump(1.0, 1.0);
  Propagator prop(g, v, 2e-3);
  prop.evolve(w, 500);
  // Time reversal: conjugate, evolve the same span, conjugate again.  The
  // split kernels are even in k, so this inverts the map to roundoff.
  for (auto& z : w.psi) z = std::conj(z);
  prop.evolve(w, 500);
  for (auto& z : w.psi) z = std::conj(z);
  CHECK(max_node_diff(w, w0) < 1e-11);
}

TEST_CASE("constant potential contributes a global phase") {
  Grid g{1, 256, 60.0};
  GaussianSpec spec;
  spec.sigma = 1.0;
  spec.k0 = {1.0, 0.0, 0.0};
  WaveFunction w = init_gaussian(g, spec);
  double v0 = 0.75, t = 2.0;
  Propagator prop(g, Potential::constant(v0), 0.05);
  prop.evolve(w, 40);
  WaveFunction exact = free_gaussian_exact(g, spec, t);
  cplx phase = std::exp(cplx(0.0, -v0 * t));
  double m = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    m = std::max(m, std::abs(w.psi[i] - phase * exact.psi[i]));
  CHECK(m < 1e-10);
}

TEST_CASE("energy is conserved at the default step rule") {
  Grid g{1, 512, 60.0};
  double dt = 0.005 * g.dx() * g.dx();
  GaussianSpec spec;
  spec.sigma = 1.0;
  spec.x0 = {-6.0, 0.0, 0.0};
  spec.k0 = {2.0, 0.0, 0.0};
  WaveFunction w = init_gaussian(g, spec);
  Potential v = Potential::gaussian_bump(1.0, 1.0);
  Propagator prop(g, v, dt);
  SpectralOps ops(g);
  const std::vector<double>& vs = prop.potential_samples();
  double e0 = ops.energy(w, vs);
  long total = std::lround(1.0 / dt);
  double drift = 0.0;
  for (int chunk = 0; chunk < 10; ++chunk) {
    prop.evolve(w, total / 10);
    drift = std::max(drift, std::abs(ops.energy(w, vs) - e0) / std::abs(e0));
  }
  CHECK(drift < 1e-8);
}

TEST_CASE("free momentum profile is horizon independent") {
  Grid g{1, 256, 120.0};
  GaussianSpec spec;
  spec.sigma = 1.0;
  spec.x0 = {-10.0, 0.0, 0.0};
  spec.k0 = {1.5, 0.0, 0.0};
  WaveFunction w = init_gaussian(g, spec);
  Propagator prop(g, Potential::zero(), 0.1);
  SpectralOps ops(g);
  prop.evolve(w, 40);  // t = 4
  auto half = ops.momentum_density(w);
  prop.evolve(w, 40);  // t = 8
  auto full = ops.momentum_density(w);
  double l1 = 0.0;
  for (std::size_t i = 0; i < half.size(); ++i) l1 += std::abs(full[i] - half[i]);
  l1 *= g.k_cell_volume();
  CHECK(l1 < 1e-12);
}

TEST_CASE("ballistic defect decays like 1/t after leaving a bump") {
  // After the packet clears the interaction region it is asymptotically
  // ballistic, so t * h2(t) approaches a constant: fitted log-log slope
  // of h2 on [5, 40] is at most -0.9.
  Grid g{1, 4096, 560.0};
  GaussianSpec spec;
  spec.sigma = 1.0;
  spec.x0 = {-6.0, 0.0, 0.0};
  spec.k0 = {2.0, 0.0, 0.0};
  WaveFunction w = init_gaussian(g, spec);
  Propagator prop(g, Potential::gaussian_bump(1.0, 1.0), 5e-3);
  SpectralOps ops(g);
  std::vector<double> ts = {5.0, 8.0, 12.0, 19.0, 28.0, 40.0};
  std::vector<double> h2s;
  double t_cur = 0.0;
  for (double t : ts) {
    prop.evolve(w, std::lround((t - t_cur) / 5e-3));
    t_cur = t;
    h2s.push_back(ops.h2_diagnostic(w, t));
  }
  double slope = loglog_slope(ts, h2s);
  CHECK(slope <= -0.9);
}

TEST_CASE("collar diagnostic decays superlinearly for an axis-aligned packet") {
  // Sharp packet launched along the axis of a 30-degree sector; the collar
  // band sits in the far angular tail, so the product diagnostic falls
  // faster than the bare 1/t of the ballistic factor.
  Grid g{2, 1024, 400.0};
  GaussianSpec spec;
  spec.sigma = 1.5;
  spec.k0 = {3.0, 0.0, 0.0};
  ConeRegion cone = ConeRegion::sector_about({1.0, 0.0}, kPi / 6, "fwd");
  SpectralOps ops(g);
  auto th = ops.collar(cone, 10.0, 0.1);
  std::vector<double> ts = {5.0, 7.5, 11.0, 16.0, 24.0, 33.0, 40.0};
  std::vector<double> h5s;
  for (double t : ts) {
    WaveFunction w = free_gaussian_exact(g, spec, t);
    GradientField gf = ops.gradient(w);
    h5s.push_back(ops.h5_diagnostic(w, gf, t, th));
  }
  double slope = loglog_slope(ts, h5s);
  CHECK(slope <= -1.5);
}
