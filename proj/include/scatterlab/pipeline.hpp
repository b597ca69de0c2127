// Streaming orchestrator: propagates the wave function frame by frame,
// feeding drift windows, SDE ensembles, flux quadratures, and diagnostics
// without retaining full field history.
#pragma once

#include <vector>

#include "scatterlab/config.hpp"
#include "scatterlab/ensemble.hpp"
#include "scatterlab/io.hpp"
#include "scatterlab/series.hpp"

namespace scatterlab {

struct DriftVariant {
  DriftMode mode = DriftMode::nelson;
  DriftConvention convention = DriftConvention::half;
  int sample_stride = 0;  // 0: use config default
  std::string label() const;
};

struct PipelineOptions {
  bool with_sde = true;
  bool with_flux = true;      // surface quadrature series
  bool with_oracle = false;   // nodewise free-packet comparison
  bool record_from_zero = true;  // diagnostics start at t=0 rather than t0
  std::vector<DriftVariant> variants;  // empty + with_sde: config mode/conv
};

struct KsCheck {
  double t = 0.0;
  int axis = 0;
  double statistic = 0.0;
  double critical = 0.0;
  bool pass = false;
};

struct PipelineResult {
  QuantumSeries series;

  std::vector<DriftVariant> variants;
  std::vector<PathEnsemble> ensembles;    // parallel to variants
  std::vector<AdvanceStats> sde_stats;
  std::vector<std::vector<KsCheck>> ks;   // per variant

  std::vector<double> out_density;        // |psi_hat|^2 at t_final
  std::vector<double> out_density_half;   // ... at the frame nearest t_final/2
  double out_half_time = 0.0;

  double oracle_max_err = 0.0;  // only when with_oracle

  std::vector<FrameRecord> dumped_frames;

  double wall_total = 0.0, wall_fft = 0.0, wall_sde = 0.0;
};

PipelineResult run_pipeline(const ExperimentConfig& cfg,
                            const PipelineOptions& opt);

}  // namespace scatterlab
