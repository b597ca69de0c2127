#include "scatterlab/surface.hpp"

#include <cmath>
#include <stdexcept>

#include "scatterlab/stats.hpp"

namespace scatterlab {

double SurfaceQuadrature::area() const { return kahan_sum(w); }

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

namespace {

void push_node(SurfaceQuadrature& q, const double* x, const double* n, double w) {
  for (int a = 0; a < q.dim; ++a) {
    q.x.push_back(x[a]);
    q.normal.push_back(n[a]);
  }
  q.w.push_back(w);
}

// Orthonormal pair completing axis to a right-handed frame (e1, e2, axis).
void frame_of(const std::array<double, 3>& axis, double* e1, double* e2) {
  // Pick the coordinate axis least aligned with the cone axis.
  int least = 0;
  for (int a = 1; a < 3; ++a)
    if (std::abs(axis[a]) < std::abs(axis[least])) least = a;
  double u[3] = {0, 0, 0};
  u[least] = 1.0;
  double dot = u[0] * axis[0] + u[1] * axis[1] + u[2] * axis[2];
  double nrm = 0.0;
  for (int a = 0; a < 3; ++a) {
    e1[a] = u[a] - dot * axis[a];
    nrm += e1[a] * e1[a];
  }
  nrm = std::sqrt(nrm);
  for (int a = 0; a < 3; ++a) e1[a] /= nrm;
  e2[0] = axis[1] * e1[2] - axis[2] * e1[1];
  e2[1] = axis[2] * e1[0] - axis[0] * e1[2];
  e2[2] = axis[0] * e1[1] - axis[1] * e1[0];
}

double sector_span(const ConeRegion& c) {
  double span = c.theta_max - c.theta_min;
  if (span <= 0.0) span += 2.0 * kPi;
  return span;
}

}  // namespace

SurfaceQuadrature cap_quadrature(const ConeRegion& cone, double R, int m) {
  if (R <= 0.0 || m < 1) throw std::invalid_argument("cap_quadrature: bad arguments");
  SurfaceQuadrature q;
  q.dim = cone.dim;
  switch (cone.kind) {
    case ConeRegion::Kind::half_line: {
      double x = cone.sign * R, n = static_cast<double>(cone.sign);
      push_node(q, &x, &n, 1.0);
      break;
    }
    case ConeRegion::Kind::full: {
      if (cone.dim == 1) {
        double xp = R, np = 1.0, xm = -R, nm = -1.0;
        push_node(q, &xp, &np, 1.0);
        push_node(q, &xm, &nm, 1.0);
        break;
      }
      if (cone.dim == 2) {
        double dth = 2.0 * kPi / m;
        for (int i = 0; i < m; ++i) {
          double th = -kPi + (i + 0.5) * dth;
          double n[2] = {std::cos(th), std::sin(th)};
          double x[2] = {R * n[0], R * n[1]};
          push_node(q, x, n, R * dth);
        }
        break;
      }
      // dim == 3: full sphere, Gauss-Legendre in cos(polar) x uniform azimuth.
      std::vector<double> gx, gw;
      gauss_legendre(m, gx, gw);
      double e1[3] = {1, 0, 0}, e2[3] = {0, 1, 0}, e3[3] = {0, 0, 1};
      int naz = 2 * m;
      double dphi = 2.0 * kPi / naz;
      for (int i = 0; i < m; ++i) {
        double c = gx[i], s = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (int j = 0; j < naz; ++j) {
          double ph = (j + 0.5) * dphi;
          double n[3], x[3];
          for (int a = 0; a < 3; ++a) {
            n[a] = s * (std::cos(ph) * e1[a] + std::sin(ph) * e2[a]) + c * e3[a];
            x[a] = R * n[a];
          }
          push_node(q, x, n, R * R * gw[i] * dphi);
        }
      }
      break;
    }
    case ConeRegion::Kind::sector: {
      double span = sector_span(cone);
      double dth = span / m;
      for (int i = 0; i < m; ++i) {
        double th = cone.theta_min + (i + 0.5) * dth;
        double n[2] = {std::cos(th), std::sin(th)};
        double x[2] = {R * n[0], R * n[1]};
        push_node(q, x, n, R * dth);
      }
      break;
    }
    case ConeRegion::Kind::axial: {
      // Integrate over u = cos(polar angle from the axis) in [cos alpha, 1].
      std::vector<double> gx, gw;
      gauss_legendre(m, gx, gw);
      double u_lo = std::cos(cone.half_angle), u_hi = 1.0;
      double half = 0.5 * (u_hi - u_lo), mid = 0.5 * (u_hi + u_lo);
      double e1[3], e2[3];
      frame_of(cone.axis, e1, e2);
      int naz = 2 * m;
      double dphi = 2.0 * kPi / naz;
      for (int i = 0; i < m; ++i) {
        double u = mid + half * gx[i];
        double s = std::sqrt(std::max(0.0, 1.0 - u * u));
        double wu = half * gw[i];
        for (int j = 0; j < naz; ++j) {
          double ph = (j + 0.5) * dphi;
          double n[3], x[3];
          for (int a = 0; a < 3; ++a) {
            n[a] = s * (std::cos(ph) * e1[a] + std::sin(ph) * e2[a]) +
                   u * cone.axis[a];
            x[a] = R * n[a];
          }
          push_node(q, x, n, R * R * wu * dphi);
        }
      }
      break;
    }
  }
  return q;
}

SurfaceQuadrature lateral_quadrature(const ConeRegion& cone, double R,
                                     double R_outer, int m) {
  if (R <= 0.0 || R_outer <= R || m < 1)
    throw std::invalid_argument("lateral_quadrature: bad arguments");
  SurfaceQuadrature q;
  q.dim = cone.dim;
  switch (cone.kind) {
    case ConeRegion::Kind::full:
    case ConeRegion::Kind::half_line:
      break;  // no lateral face
    case ConeRegion::Kind::sector: {
      double dr = (R_outer - R) / m;
      double th[2] = {cone.theta_min, cone.theta_max};
      // Outward normals: at theta_min the sector lies at larger angles, at
      // theta_max at smaller ones.
      for (int side = 0; side < 2; ++side) {
        double c = std::cos(th[side]), s = std::sin(th[side]);
        double n[2];
        if (side == 0) {
          n[0] = s;
          n[1] = -c;
        } else {
          n[0] = -s;
          n[1] = c;
        }
        for (int i = 0; i < m; ++i) {
          double r = R + (i + 0.5) * dr;
          double x[2] = {r * c, r * s};
          push_node(q, x, n, dr);
        }
      }
      break;
    }
    case ConeRegion::Kind::axial: {
      // Surface element r sin(alpha) dr dphi at distance r from the origin.
      std::vector<double> gx, gw;
      gauss_legendre(m, gx, gw);
      double half = 0.5 * (R_outer - R), mid = 0.5 * (R_outer + R);
      double ca = std::cos(cone.half_angle), sa = std::sin(cone.half_angle);
      double e1[3], e2[3];
      frame_of(cone.axis, e1, e2);
      int naz = 2 * m;
      double dphi = 2.0 * kPi / naz;
      for (int i = 0; i < m; ++i) {
        double r = mid + half * gx[i];
        double wr = half * gw[i] * r * sa;
        for (int j = 0; j < naz; ++j) {
          double ph = (j + 0.5) * dphi;
          double e[3], x[3], n[3];
          for (int a = 0; a < 3; ++a) {
            e[a] = std::cos(ph) * e1[a] + std::sin(ph) * e2[a];
            x[a] = r * (sa * e[a] + ca * cone.axis[a]);
            n[a] = ca * e[a] - sa * cone.axis[a];
          }
          push_node(q, x, n, wr * dphi);
        }
      }
      break;
    }
  }
  return q;
}

}  // namespace scatterlab
