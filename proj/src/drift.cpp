#include "scatterlab/drift.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scatterlab {

DriftFrame drift_field(const Grid& grid, double t, const std::vector<double>& rho,
                       const std::array<std::vector<double>, 3>& current,
                       const std::array<std::vector<double>, 3>& grad_rho,
                       DriftMode mode, DriftConvention convention, double b_cap,
                       double eps_rel) {
  DriftFrame f;
  f.grid = grid;
  f.t = t;
  std::size_t n = rho.size();
  if (n != grid.size()) throw std::invalid_argument("drift_field: size mismatch");
  double rho_max = *std::max_element(rho.begin(), rho.end());
  double floor = eps_rel * rho_max;
  double osmotic = 0.0;
  if (mode == DriftMode::nelson)
    osmotic = (convention == DriftConvention::half) ? 0.5 : 1.0;
  for (int a = 0; a < grid.dim; ++a) f.b[a].resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = std::max(rho[i], floor);
    double norm2 = 0.0;
    double bi[3];
    for (int a = 0; a < grid.dim; ++a) {
      double num = current[a][i];
      if (osmotic != 0.0) num += osmotic * grad_rho[a][i];
      bi[a] = num / r;
      norm2 += bi[a] * bi[a];
    }
    if (norm2 > b_cap * b_cap) {
      double scale = b_cap / std::sqrt(norm2);
      for (int a = 0; a < grid.dim; ++a) bi[a] *= scale;
      ++f.capped_nodes;
    }
    for (int a = 0; a < grid.dim; ++a) f.b[a][i] = bi[a];
  }
  return f;
}

const char* to_string(DriftMode m) {
  return m == DriftMode::nelson ? "nelson" : "bohmian";
}

const char* to_string(DriftConvention c) {
  return c == DriftConvention::half ? "half" : "paper_literal";
}

}  // namespace scatterlab
