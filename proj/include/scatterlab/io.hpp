// On-disk artifact formats.
//
// Frame dump (one file per frame, extension .nslf):
//   magic "NSLF" | u32 version=1 | u32 dim | u32 n | f64 L | f64 t
//   then n^dim nodes row-major, each (f64 re, f64 im).  Little endian.
// A sidecar manifest.json lists {index, file, t} per stored frame.
//
// Ensemble dump: CSV (path_id, sample_index, t, x1[, x2[, x3]]) or the
// binary mirror (.nsle):
//   magic "NSLE" | u32 version=1 | u32 dim | u32 n_paths | u32 n_samples
//   | f64 t0 | times f64[n_samples] | pos f64[path][sample][axis]
//   | frozen u8[n_paths]
#pragma once

#include <string>
#include <vector>

#include "scatterlab/ensemble.hpp"
#include "scatterlab/wavefunction.hpp"

namespace scatterlab {

void write_frame(const std::string& path, const WaveFunction& w);
WaveFunction read_frame(const std::string& path);

struct FrameRecord {
  long index = 0;
  std::string file;
  double t = 0.0;
};
void write_manifest(const std::string& path,
                    const std::vector<FrameRecord>& frames);

void write_ensemble_csv(const std::string& path, const PathEnsemble& e);
void write_ensemble_binary(const std::string& path, const PathEnsemble& e);
PathEnsemble read_ensemble_binary(const std::string& path);

bool make_directories(const std::string& path);

}  // namespace scatterlab
