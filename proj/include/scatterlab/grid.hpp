// Uniform periodic grid on [-L/2, L/2)^dim and its dual wavenumber lattice.
#pragma once

#include <cmath>
#include <cstddef>

namespace scatterlab {

inline constexpr double kPi = 3.14159265358979323846;

// Nodes sit at cell centers: x_j = -L/2 + (j + 1/2) dx, so the n^dim cells
// tile the box exactly and cell-anchored sampling is mean-preserving.
struct Grid {
  int dim = 1;
  int n = 0;
  double length = 0.0;

  double dx() const { return length / n; }

  std::size_t size() const {
    std::size_t s = 1;
    for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(n);
    return s;
  }

  double cell_volume() const { return std::pow(dx(), dim); }
  double k_cell_volume() const { return std::pow(2.0 * kPi / length, dim); }

  double coord(int j) const { return -0.5 * length + (j + 0.5) * dx(); }

  // FFT index ordering: m in [0, n/2) maps to nonnegative frequencies,
  // m in [n/2, n) to negative ones (the upper half starts at -n/2).
  double wavenumber(int m) const {
    int s = (m < n / 2) ? m : m - n;
    return 2.0 * kPi * s / length;
  }

  // Row-major flattening, axis 0 slowest.
  std::size_t flatten(const int* j) const {
    std::size_t idx = 0;
    for (int a = 0; a < dim; ++a) idx = idx * n + static_cast<std::size_t>(j[a]);
    return idx;
  }

  void unflatten(std::size_t idx, int* j) const {
    for (int a = dim - 1; a >= 0; --a) {
      j[a] = static_cast<int>(idx % n);
      idx /= n;
    }
  }

  void node_coords(std::size_t idx, double* x) const {
    int j[3];
    unflatten(idx, j);
    for (int a = 0; a < dim; ++a) x[a] = coord(j[a]);
  }

  bool operator==(const Grid& o) const {
    return dim == o.dim && n == o.n && length == o.length;
  }
};

}  // namespace scatterlab
