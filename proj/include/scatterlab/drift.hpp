// Drift fields driving the path ensembles.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "scatterlab/grid.hpp"

namespace scatterlab {

enum class DriftMode { nelson, bohmian };

// Normalization of the osmotic term in the diffusion drift.
//   half:          b = (grad rho / 2 + J) / rho   -- the Fokker-Planck
//                  equation of dX = b dt + dB then transports |psi_t|^2.
//   paper_literal: b = (grad rho + J) / rho       -- osmotic term twice as
//                  large; kept selectable so the density-tracking test can
//                  demonstrate the mismatch.
// Bohmian mode uses b = J / rho with no noise.
enum class DriftConvention { half, paper_literal };

struct DriftFrame {
  Grid grid;
  double t = 0.0;
  std::array<std::vector<double>, 3> b;
  long capped_nodes = 0;
};

// Assembles the drift on the grid.  rho is floored at eps_rel * max(rho)
// before dividing, and |b| is clamped to b_cap nodewise (capped nodes are
// counted in the frame).
DriftFrame drift_field(const Grid& grid, double t,
                       const std::vector<double>& rho,
                       const std::array<std::vector<double>, 3>& current,
                       const std::array<std::vector<double>, 3>& grad_rho,
                       DriftMode mode, DriftConvention convention, double b_cap,
                       double eps_rel = 1e-10);

const char* to_string(DriftMode m);
const char* to_string(DriftConvention c);

}  // namespace scatterlab
