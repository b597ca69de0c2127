// Per-frame scalar reductions of the quantum state and the estimators that
// consume them as time series.
#pragma once

#include <string>
#include <vector>

#include "scatterlab/ledger.hpp"
#include "scatterlab/window.hpp"

namespace scatterlab {

// Filled frame by frame by the pipeline.  Indexing: [cone][R][frame] for the
// per-region series, [cone][frame] for whole-cone series.
struct QuantumSeries {
  std::vector<double> t;
  std::vector<double> total_mass;
  std::vector<double> energy;
  std::vector<double> h2;

  std::vector<std::string> cone_ids;
  std::vector<double> r_list;

  std::vector<std::vector<double>> cone_mass;                 // int_C rho
  std::vector<std::vector<std::vector<double>>> region_mass;  // int_{C, r>R} rho
  std::vector<std::vector<std::vector<double>>> cap_flux;     // oint_cap J.rhat
  std::vector<std::vector<std::vector<double>>> lat_flux;     // oint_lat J.n_ext

  double ball_radius = 0.0;
  std::vector<double> ball_mass;     // int_{|x|<R_ball} rho (interpolated cells)
  std::vector<double> ball_outflux;  // oint_{S_Rball} J.rhat

  std::size_t frames() const { return t.size(); }
};

// Mean of the series tail (last `tail_fraction` of the time span).
double plateau(const std::vector<double>& t, const std::vector<double>& y,
               double tail_fraction = 0.1);

// Trapezoid integral of phi(t) * y(t) over the frame times.
double windowed_integral(const std::vector<double>& t,
                         const std::vector<double>& y,
                         const WindowFunction& phi);

struct ContinuityResult {
  std::vector<double> t;         // interior frame times
  std::vector<double> residual;  // d/dt mass + outflux
  double max_abs = 0.0;
};

// Central-difference residual of d/dt int_B rho + oint_dB J.n = 0.
ContinuityResult continuity_residual(const std::vector<double>& t,
                                     const std::vector<double>& mass,
                                     const std::vector<double>& outflux);

struct FluxComparison {
  double mc = 0.0;      // E sum sign*phi(t_event) over dD
  double mc_se = 0.0;
  double quad = 0.0;    // int phi (cap_flux - lat_flux) dt
  double diff = 0.0;
};

// Both sides of the expected-crossings / flux identity for one (cone, R).
FluxComparison crossing_vs_flux(const CrossingLedger& ledger,
                                const WindowFunction& phi,
                                const std::vector<double>& t,
                                const std::vector<double>& cap_flux,
                                const std::vector<double>& lat_flux);

}  // namespace scatterlab
