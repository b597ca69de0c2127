#include "scatterlab/fft.hpp"

#include <fftw3.h>

#include <stdexcept>

namespace scatterlab {

template <class T>
T* FftwAllocator<T>::allocate(std::size_t n) {
  void* p = fftw_malloc(n * sizeof(T));
  if (!p) throw std::bad_alloc();
  return static_cast<T*>(p);
}

template <class T>
void FftwAllocator<T>::deallocate(T* p, std::size_t) noexcept {
  fftw_free(p);
}

template struct FftwAllocator<cplx>;
template struct FftwAllocator<double>;

Fft::Fft(const Grid& grid) : grid_(grid), probe_(grid.size()) {
  auto* buf = reinterpret_cast<fftw_complex*>(probe_.data());
  int n = grid_.n;
  fftw_plan f = nullptr, b = nullptr;
  switch (grid_.dim) {
    case 1:
      f = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
      b = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
      break;
    case 2:
      f = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
      b = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
      break;
    case 3:
      f = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
      b = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
      break;
    default:
      throw std::invalid_argument("Fft: dim must be 1, 2, or 3");
  }
  if (!f || !b) throw std::runtime_error("Fft: plan creation failed");
  plan_fwd_ = f;
  plan_bwd_ = b;
}

Fft::~Fft() {
  if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void Fft::forward(cvector& f) const {
  if (f.size() != grid_.size()) throw std::invalid_argument("Fft: size mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(f.data());
  fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), p, p);
}

void Fft::backward(cvector& f) const {
  if (f.size() != grid_.size()) throw std::invalid_argument("Fft: size mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(f.data());
  fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_), p, p);
  double scale = 1.0 / static_cast<double>(f.size());
  for (auto& z : f) z *= scale;
}

}  // namespace scatterlab
