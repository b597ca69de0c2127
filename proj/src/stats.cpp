#include "scatterlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scatterlab {

double kahan_sum(const double* x, std::size_t n) {
  double s = 0.0, c = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double y = x[i] - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

double kahan_sum(const std::vector<double>& x) { return kahan_sum(x.data(), x.size()); }

MeanSE mean_se(const std::vector<double>& x) {
  MeanSE r;
  r.n = x.size();
  if (r.n == 0) return r;
  r.mean = kahan_sum(x) / static_cast<double>(r.n);
  if (r.n < 2) return r;
  double ss = 0.0, c = 0.0;
  for (double v : x) {
    double d = v - r.mean;
    double y = d * d - c;
    double t = ss + y;
    c = (t - ss) - y;
    ss = t;
  }
  double var = ss / static_cast<double>(r.n - 1);
  r.se = std::sqrt(var / static_cast<double>(r.n));
  return r;
}

double ks_statistic_from_cdf(const std::vector<double>& cdf_at_sorted_sample) {
  std::size_t n = cdf_at_sorted_sample.size();
  if (n == 0) return 0.0;
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double f = cdf_at_sorted_sample[i];
    double lo = f - static_cast<double>(i) / n;
    double hi = static_cast<double>(i + 1) / n - f;
    d = std::max(d, std::max(lo, hi));
  }
  return d;
}

namespace {

// P(K <= x) for the Kolmogorov distribution, via the alternating series.
double kolmogorov_cdf(double x) {
  if (x < 1e-8) return 0.0;
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double term = std::exp(-2.0 * k * k * x * x);
    s += (k % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return 1.0 - 2.0 * s;
}

}  // namespace

double ks_critical_value(double alpha, std::size_t n) {
  if (n == 0 || alpha <= 0.0 || alpha >= 1.0)
    throw std::invalid_argument("ks_critical_value: bad arguments");
  // Solve P(K <= x) = 1 - alpha by bisection.
  double lo = 0.2, hi = 3.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (kolmogorov_cdf(mid) < 1.0 - alpha)
      lo = mid;
    else
      hi = mid;
  }
  double k_alpha = 0.5 * (lo + hi);
  // Stephens: D_crit = k_alpha / (sqrt(n) + 0.12 + 0.11/sqrt(n)).
  double rn = std::sqrt(static_cast<double>(n));
  return k_alpha / (rn + 0.12 + 0.11 / rn);
}

double loglog_slope(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size()) throw std::invalid_argument("loglog_slope: size mismatch");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] <= 0.0 || y[i] <= 0.0) continue;
    double lx = std::log(t[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) throw std::invalid_argument("loglog_slope: need >= 2 positive points");
  double den = m * sxx - sx * sx;
  return (m * sxy - sx * sy) / den;
}

double GridCdf::operator()(double x) const {
  std::size_t nc = cum.size() - 1;
  double u = (x - x_min) / dx;
  if (u <= 0.0) return 0.0;
  if (u >= static_cast<double>(nc)) return cum.back();
  auto j = static_cast<std::size_t>(u);
  double frac = u - static_cast<double>(j);
  return cum[j] + frac * (cum[j + 1] - cum[j]);
}

GridCdf grid_cdf(double x_min, double dx, const std::vector<double>& cell_mass) {
  GridCdf c;
  c.x_min = x_min;
  c.dx = dx;
  c.cum.resize(cell_mass.size() + 1);
  c.cum[0] = 0.0;
  double s = 0.0, comp = 0.0;
  for (std::size_t j = 0; j < cell_mass.size(); ++j) {
    double y = cell_mass[j] - comp;
    double t = s + y;
    comp = (t - s) - y;
    s = t;
    c.cum[j + 1] = s;
  }
  // Normalize so the CDF tops out at exactly 1.
  double total = c.cum.back();
  if (total > 0.0)
    for (auto& v : c.cum) v /= total;
  return c;
}

double ks_statistic(std::vector<double>& sample, const GridCdf& cdf) {
  std::sort(sample.begin(), sample.end());
  std::vector<double> f(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) f[i] = cdf(sample[i]);
  return ks_statistic_from_cdf(f);
}

}  // namespace scatterlab
