// Small numerical statistics helpers shared by estimators and tests.
#pragma once

#include <cstddef>
#include <vector>

namespace scatterlab {

double kahan_sum(const double* x, std::size_t n);
double kahan_sum(const std::vector<double>& x);

struct MeanSE {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean
  std::size_t n = 0;
};
MeanSE mean_se(const std::vector<double>& x);

// Two-sided Kolmogorov-Smirnov statistic of a sample against the continuous
// CDF values supplied at the sorted sample points.
double ks_statistic_from_cdf(const std::vector<double>& cdf_at_sorted_sample);

// Critical value of the two-sided one-sample KS statistic at level alpha
// (Kolmogorov asymptotic law with the Stephens small-sample correction).
double ks_critical_value(double alpha, std::size_t n);

// Least-squares slope of log(y) against log(t); ignores non-positive y.
double loglog_slope(const std::vector<double>& t, const std::vector<double>& y);

// Piecewise-linear CDF of per-cell masses on a uniform 1-d grid of cell
// centers.  Breakpoints are cell edges; evaluation clamps outside the box.
struct GridCdf {
  double x_min = 0.0;  // left edge of the first cell
  double dx = 0.0;
  std::vector<double> cum;  // cum[j] = mass of cells 0..j-1, size n_cells+1

  double operator()(double x) const;
};
GridCdf grid_cdf(double x_min, double dx, const std::vector<double>& cell_mass);

// KS statistic of a sample (modified in place by sorting) against a CDF.
double ks_statistic(std::vector<double>& sample, const GridCdf& cdf);

}  // namespace scatterlab
