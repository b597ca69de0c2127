#include "scatterlab/provider.hpp"

#include <cmath>
#include <stdexcept>

namespace scatterlab {

void multilinear_eval(const Grid& grid, const std::array<std::vector<double>, 3>& f,
                      const double* x, double* out) {
  int dim = grid.dim, n = grid.n;
  double dx = grid.dx();
  int j0[3];
  double w1[3];
  for (int a = 0; a < dim; ++a) {
    // Fractional index relative to the cell-center lattice.
    double u = (x[a] + 0.5 * grid.length) / dx - 0.5;
    double fl = std::floor(u);
    w1[a] = u - fl;
    long jl = static_cast<long>(fl) % n;
    if (jl < 0) jl += n;
    j0[a] = static_cast<int>(jl);
  }
  int corners = 1 << dim;
  for (int a = 0; a < dim; ++a) out[a] = 0.0;
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    std::size_t idx = 0;
    for (int a = 0; a < dim; ++a) {
      int bit = (c >> a) & 1;
      int j = j0[a] + bit;
      if (j >= n) j -= n;
      w *= bit ? w1[a] : (1.0 - w1[a]);
      idx = idx * n + static_cast<std::size_t>(j);
    }
    for (int a = 0; a < dim; ++a) out[a] += w * f[a][idx];
  }
}

void StoredDriftProvider::push(DriftFrame frame) {
  if (!frames_.empty() && frame.t <= frames_.back().t)
    throw std::invalid_argument("StoredDriftProvider: times must increase");
  frames_.push_back(std::move(frame));
}

int StoredDriftProvider::dim() const {
  return frames_.empty() ? 0 : frames_.front().grid.dim;
}

double StoredDriftProvider::t_min() const {
  if (frames_.empty()) throw std::out_of_range("StoredDriftProvider: no frames");
  return frames_.front().t;
}

double StoredDriftProvider::t_max() const {
  if (frames_.empty()) throw std::out_of_range("StoredDriftProvider: no frames");
  return frames_.back().t;
}

void StoredDriftProvider::drift(double t, const double* x, double* b) const {
  if (frames_.empty()) throw std::out_of_range("StoredDriftProvider: no frames");
  double slack = 1e-9 * (1.0 + std::abs(t));
  if (t < t_min() - slack || t > t_max() + slack)
    throw std::out_of_range("StoredDriftProvider: time outside stored range");
  // Binary search for the bracketing pair.
  std::size_t lo = 0, hi = frames_.size() - 1;
  if (frames_.size() == 1 || t <= frames_.front().t) {
    multilinear_eval(frames_.front().grid, frames_.front().b, x, b);
    return;
  }
  if (t >= frames_.back().t) {
    multilinear_eval(frames_.back().grid, frames_.back().b, x, b);
    return;
  }
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (frames_[mid].t <= t)
      lo = mid;
    else
      hi = mid;
  }
  const DriftFrame& f0 = frames_[lo];
  const DriftFrame& f1 = frames_[hi];
  double u = (t - f0.t) / (f1.t - f0.t);
  double b0[3], b1[3];
  multilinear_eval(f0.grid, f0.b, x, b0);
  multilinear_eval(f1.grid, f1.b, x, b1);
  for (int a = 0; a < f0.grid.dim; ++a) b[a] = (1.0 - u) * b0[a] + u * b1[a];
}

void SlidingDriftProvider::push(DriftFrame frame) {
  if (have_ > 0 && frame.t <= f1_.t)
    throw std::invalid_argument("SlidingDriftProvider: times must increase");
  capped_total_ += frame.capped_nodes;
  if (have_ == 0) {
    f1_ = std::move(frame);
    have_ = 1;
  } else {
    f0_ = std::move(f1_);
    f1_ = std::move(frame);
    have_ = 2;
  }
}

int SlidingDriftProvider::dim() const { return have_ ? f1_.grid.dim : 0; }

double SlidingDriftProvider::t_min() const {
  if (!have_) throw std::out_of_range("SlidingDriftProvider: no frames");
  return have_ == 2 ? f0_.t : f1_.t;
}

double SlidingDriftProvider::t_max() const {
  if (!have_) throw std::out_of_range("SlidingDriftProvider: no frames");
  return f1_.t;
}

void SlidingDriftProvider::drift(double t, const double* x, double* b) const {
  if (!have_) throw std::out_of_range("SlidingDriftProvider: no frames");
  double slack = 1e-9 * (1.0 + std::abs(t));
  if (t < t_min() - slack || t > t_max() + slack)
    throw std::out_of_range("SlidingDriftProvider: time outside window");
  if (have_ == 1 || t <= f0_.t) {
    const DriftFrame& f = (have_ == 2 && t <= f0_.t) ? f0_ : f1_;
    multilinear_eval(f.grid, f.b, x, b);
    return;
  }
  if (t >= f1_.t) {
    multilinear_eval(f1_.grid, f1_.b, x, b);
    return;
  }
  double u = (t - f0_.t) / (f1_.t - f0_.t);
  double b0[3], b1[3];
  multilinear_eval(f0_.grid, f0_.b, x, b0);
  multilinear_eval(f1_.grid, f1_.b, x, b1);
  for (int a = 0; a < f0_.grid.dim; ++a) b[a] = (1.0 - u) * b0[a] + u * b1[a];
}

}  // namespace scatterlab
