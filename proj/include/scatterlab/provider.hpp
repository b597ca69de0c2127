// Drift lookup for the SDE integrator: multilinear in space (periodic),
// linear in time between stored frames.
#pragma once

#include <memory>
#include <vector>

#include "scatterlab/drift.hpp"

namespace scatterlab {

class DriftProvider {
 public:
  virtual ~DriftProvider() = default;
  virtual int dim() const = 0;
  virtual double t_min() const = 0;
  virtual double t_max() const = 0;
  // Throws std::out_of_range if t falls outside [t_min, t_max] (beyond a
  // small rounding slack); x must lie inside the box.
  virtual void drift(double t, const double* x, double* b) const = 0;
};

// Multilinear interpolation of per-axis node fields at x, periodic wrap.
void multilinear_eval(const Grid& grid, const std::array<std::vector<double>, 3>& f,
                      const double* x, double* out);

// Holds every frame; supports arbitrary query order.
class StoredDriftProvider : public DriftProvider {
 public:
  void push(DriftFrame frame);  // times must be strictly increasing
  int dim() const override;
  double t_min() const override;
  double t_max() const override;
  void drift(double t, const double* x, double* b) const override;
  const std::vector<DriftFrame>& frames() const { return frames_; }

 private:
  std::vector<DriftFrame> frames_;
};

// Keeps only the two most recent frames; supports the monotone time sweep
// of the streaming pipeline without storing the full frame history.
class SlidingDriftProvider : public DriftProvider {
 public:
  void push(DriftFrame frame);
  bool ready() const { return have_ > 0; }
  int dim() const override;
  double t_min() const override;
  double t_max() const override;
  void drift(double t, const double* x, double* b) const override;
  long capped_nodes_total() const { return capped_total_; }

 private:
  DriftFrame f0_, f1_;
  int have_ = 0;
  long capped_total_ = 0;
};

}  // namespace scatterlab
