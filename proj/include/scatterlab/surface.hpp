// Quadrature rules on the boundary pieces of D = C \cap closure(B_R)^c:
// the spherical cap C \cap S_R and the lateral face dC outside B_R.
#pragma once

#include <vector>

#include "scatterlab/cone.hpp"

namespace scatterlab {

struct SurfaceQuadrature {
  int dim = 0;
  std::vector<double> x;       // node coordinates, dim per node
  std::vector<double> normal;  // unit normal per node, dim per node
  std::vector<double> w;       // positive weights

  std::size_t nodes() const { return w.size(); }
  double area() const;
};

// Cap nodes carry the radially outward normal.  m controls resolution:
// d=1 emits the boundary points, d=2 uses m arc midpoints, d=3 a
// Gauss-Legendre rule in cos(polar angle) times 2m uniform azimuths.
SurfaceQuadrature cap_quadrature(const ConeRegion& cone, double R, int m);

// Lateral face between radii R and R_outer; normals point out of C
// (n . x = 0 at every node).  Empty for d=1 and for full-space cones.
SurfaceQuadrature lateral_quadrature(const ConeRegion& cone, double R,
                                     double R_outer, int m);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace scatterlab
