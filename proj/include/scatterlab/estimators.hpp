// Turns a pipeline result into report rows, applying the configured bands.
#pragma once

#include <string>

#include "scatterlab/config.hpp"
#include "scatterlab/pipeline.hpp"
#include "scatterlab/report.hpp"

namespace scatterlab {

struct EstimatorSelection {
  bool propagation = true;   // norm, energy, Parseval, oracle, h2 identity
  bool out_state = true;     // total momentum mass, two-horizon distance
  bool density_tracking = true;
  bool cones = true;         // chi_C(p_+) vs cone-mass plateau vs out-state
  bool pathwise_fas = true;  // agreement table + telescoping
  bool flux = true;          // cap/lateral flux, crossing-vs-flux identity
  bool continuity = true;
  bool velocity = true;
};

// Appends rows for everything selected and available in `res`.
void run_estimators(const ExperimentConfig& cfg, const PipelineResult& res,
                    const EstimatorSelection& sel, RunReport& report);

// Convenience: quadrature of the momentum profile over a cone on the
// wavenumber lattice.
double cone_momentum_mass(const Grid& grid, const std::vector<double>& kdens,
                          const ConeRegion& cone);

}  // namespace scatterlab
