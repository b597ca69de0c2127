// Experiment configuration: presets, the flat key = value file format, and
// fail-fast validation.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "scatterlab/cone.hpp"
#include "scatterlab/drift.hpp"
#include "scatterlab/potential.hpp"

namespace scatterlab {

struct ConeConfig {
  std::string id = "cone";
  // 1d: "half_line" (sign), 2d: "sector" (axis_angle or theta bounds),
  // 3d: "axial" (axis + half_angle), any: "full".
  std::string kind = "full";
  int sign = +1;
  double theta_min = 0.0, theta_max = 0.0;
  std::array<double, 3> axis{1, 0, 0};
  double half_angle = 0.0;

  ConeRegion build(int dim) const;
};

struct WindowConfig {
  std::string name = "std";
  double t_flat = 0.0;  // 0 means "use the default for this run"
};

struct ExperimentConfig {
  std::string preset;  // name this config was derived from, may be empty

  // Grid and initial state.
  int dim = 1;
  int n = 256;
  double length = 0.0;
  std::array<double, 3> x0{0, 0, 0};
  std::array<double, 3> k0{0, 0, 0};
  double sigma = 1.0;

  Potential potential;

  // Times.  dt divides frame_dt; frames are where drift fields, flux
  // quadratures, and diagnostics are evaluated.
  double dt = 0.0;        // 0 means "default": frame_dt if V==0, else 0.005 dx^2
  double frame_dt = 0.1;
  double t0 = 1.0;
  double t_final = 10.0;

  // Ensemble.
  int n_paths = 2000;
  std::uint64_t seed = 12345;
  DriftMode mode = DriftMode::nelson;
  DriftConvention convention = DriftConvention::half;
  int sde_substeps = 4;     // SDE steps per frame interval
  int sample_stride = 0;    // in SDE steps; 0 means "every frame"
  double drift_eps_rel = 1e-10;

  // Geometry.
  std::vector<ConeConfig> cones;
  std::vector<double> r_list;
  double r_outer = 0.0;       // 0 means "default": 0.45 * length
  int quad_m = 64;            // surface quadrature resolution
  double ball_radius = 10.0;  // continuity-check ball
  double collar_delta = 0.1;  // collar angular width (radians)

  std::vector<WindowConfig> windows{{"std", 0.0}, {"wide", 0.0}};

  // Density-tracking checks.
  int ks_times = 10;
  double ks_alpha = 0.01;

  // Output controls.
  std::string out_dir;
  bool dump_frames = false;
  int dump_frame_stride = 0;  // 0 means "at most ~16 frames"
  std::string dump_ensemble = "none";  // none | csv | binary
  bool compare_free_oracle = false;    // nodewise closed-form comparison
  int oracle_stride = 10;

  // Report bands (absolute unless noted).
  double band_stat = 0.02;        // statistical-identity allowance
  double band_energy_rel = 1e-8;  // relative energy drift
  double band_out_l1 = 1e-8;      // two-horizon L1 distance

  // Derived helpers.
  double dx() const { return length / n; }
  double dt_effective() const;
  double sde_dt() const { return frame_dt / sde_substeps; }
  int sample_stride_effective() const {
    return sample_stride > 0 ? sample_stride : sde_substeps;
  }
  double r_outer_effective() const {
    return r_outer > 0 ? r_outer : 0.45 * length;
  }
  double k_max() const;  // |k0| + 5/(2 sigma)
  std::vector<double> ks_check_times() const;
  std::vector<double> default_window_flats() const;

  // Canonical text echo (sorted keys) and its FNV-1a hash.
  std::string canonical_text() const;
  std::uint64_t hash() const;
};

// Built-in presets: free-1d, free-2d-cone, bump-2d-cone, free-3d-small,
// bohmian-2d.  Throws std::invalid_argument for unknown names.
ExperimentConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

// Parses the flat "key = value" format (# comments, [a, b] arrays).  A
// "preset" key selects the base config; other keys override it.  Unknown
// keys are collected as errors.
ExperimentConfig load_config_file(const std::string& path,
                                  std::vector<std::string>& errors);
ExperimentConfig apply_config_text(const std::string& text,
                                   std::vector<std::string>& errors);

// Collects every constraint violation (empty result means valid):
// power-of-two grid, Nyquist headroom for the packet's spectral support,
// the box-sizing rule L >= 2(|x0| + (|k0| + 5 sigma_k) T + 5 sigma_x(T)),
// time alignment, cone shapes, R ladder inside the box-safe radius, and
// SDE segment-length resolvability.
std::vector<std::string> validate(const ExperimentConfig& cfg);

}  // namespace scatterlab
