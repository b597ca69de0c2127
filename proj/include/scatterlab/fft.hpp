// Thin FFTW wrapper.  Plans use FFTW_ESTIMATE so plan selection (and hence
// every output bit) is reproducible run to run.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "scatterlab/grid.hpp"

namespace scatterlab {

using cplx = std::complex<double>;

// Allocator backed by fftw_malloc so all field buffers share the SIMD
// alignment of the buffer the plans were created on.
template <class T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() = default;
  template <class U>
  FftwAllocator(const FftwAllocator<U>&) {}
  T* allocate(std::size_t n);
  void deallocate(T* p, std::size_t) noexcept;
  bool operator==(const FftwAllocator&) const { return true; }
};

using cvector = std::vector<cplx, FftwAllocator<cplx>>;
using rvector = std::vector<double>;

class Fft {
 public:
  explicit Fft(const Grid& grid);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  // In-place unnormalized DFT with the e^{-ikx} sign convention.
  void forward(cvector& f) const;
  // In-place inverse, normalized by 1/size so backward(forward(f)) == f.
  void backward(cvector& f) const;

  const Grid& grid() const { return grid_; }

 private:
  Grid grid_;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
  cvector probe_;  // representative buffer the plans were created on
};

}  // namespace scatterlab
