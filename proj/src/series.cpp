#include "scatterlab/series.hpp"

#include <cmath>
#include <stdexcept>

#include "scatterlab/stats.hpp"

namespace scatterlab {

double plateau(const std::vector<double>& t, const std::vector<double>& y,
               double tail_fraction) {
  if (t.size() != y.size() || t.empty())
    throw std::invalid_argument("plateau: bad series");
  double cutoff = t.back() - tail_fraction * (t.back() - t.front());
  double s = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= cutoff) {
      s += y[i];
      ++n;
    }
  return s / static_cast<double>(n);
}

double windowed_integral(const std::vector<double>& t,
                         const std::vector<double>& y,
                         const WindowFunction& phi) {
  if (t.size() != y.size() || t.size() < 2)
    throw std::invalid_argument("windowed_integral: bad series");
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    double f0 = phi(t[i]) * y[i];
    double f1 = phi(t[i + 1]) * y[i + 1];
    s += 0.5 * (f0 + f1) * (t[i + 1] - t[i]);
  }
  return s;
}

ContinuityResult continuity_residual(const std::vector<double>& t,
                                     const std::vector<double>& mass,
                                     const std::vector<double>& outflux) {
  if (t.size() != mass.size() || t.size() != outflux.size() || t.size() < 3)
    throw std::invalid_argument("continuity_residual: bad series");
  ContinuityResult r;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    double dmdt = (mass[i + 1] - mass[i - 1]) / (t[i + 1] - t[i - 1]);
    double res = dmdt + outflux[i];
    r.t.push_back(t[i]);
    r.residual.push_back(res);
    r.max_abs = std::max(r.max_abs, std::abs(res));
  }
  return r;
}

FluxComparison crossing_vs_flux(const CrossingLedger& ledger,
                                const WindowFunction& phi,
                                const std::vector<double>& t,
                                const std::vector<double>& cap_flux,
                                const std::vector<double>& lat_flux) {
  FluxComparison fc;
  WindowedCrossingSum ws = windowed_crossing_sum(ledger, phi);
  fc.mc = ws.mean;
  fc.mc_se = ws.se;
  std::vector<double> net(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) net[i] = cap_flux[i] - lat_flux[i];
  fc.quad = windowed_integral(t, net, phi);
  fc.diff = std::abs(fc.mc - fc.quad);
  return fc;
}

}  // namespace scatterlab
