#include "scatterlab/crossing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scatterlab {

namespace {

struct Candidate {
  double s;
  Piece piece;
};

// Roots of A s^2 + B s + C = 0 inside the closed interval [0, 1] (endpoint
// roots matter when a polyline vertex sits exactly on a boundary: accepting
// them keeps the per-segment telescoping identity exact).  Sets *tangent when
// the discriminant indicates a grazing contact (0 <= disc < 1e-18), which
// produces no roots.
int quadratic_roots(double A, double B, double C, double* s, bool* tangent) {
  *tangent = false;
  if (A == 0.0) {
    if (B == 0.0) return 0;
    double r = -C / B;
    if (r >= 0.0 && r <= 1.0) {
      s[0] = r;
      return 1;
    }
    return 0;
  }
  double disc = B * B - 4.0 * A * C;
  if (disc < 1e-18) {
    if (disc >= 0.0) *tangent = true;
    return 0;
  }
  double sq = std::sqrt(disc);
  double qq = -0.5 * (B + (B >= 0.0 ? sq : -sq));
  double r1 = qq / A;
  double r2 = (qq != 0.0) ? C / qq : r1;
  if (r1 > r2) std::swap(r1, r2);
  int n = 0;
  if (r1 >= 0.0 && r1 <= 1.0) s[n++] = r1;
  if (r2 >= 0.0 && r2 <= 1.0 && r2 != r1) s[n++] = r2;
  return n;
}

// Angular distance from the direction of x to the lateral cone boundary.
double rim_angular_gap(const ConeRegion& cone, const double* x) {
  switch (cone.kind) {
    case ConeRegion::Kind::full:
    case ConeRegion::Kind::half_line:
      return kPi;
    case ConeRegion::Kind::sector: {
      double th = std::atan2(x[1], x[0]);
      auto wrap = [](double d) {
        while (d > kPi) d -= 2.0 * kPi;
        while (d < -kPi) d += 2.0 * kPi;
        return std::abs(d);
      };
      return std::min(wrap(th - cone.theta_min), wrap(th - cone.theta_max));
    }
    case ConeRegion::Kind::axial: {
      double r = std::sqrt(norm2(x, 3));
      if (r == 0.0) return kPi;
      double c = (x[0] * cone.axis[0] + x[1] * cone.axis[1] + x[2] * cone.axis[2]) / r;
      c = std::min(1.0, std::max(-1.0, c));
      return std::abs(std::acos(c) - cone.half_angle);
    }
  }
  return kPi;
}

}  // namespace

SegmentEvents classify_segment(const ConeRegion& cone, double R, const double* a,
                               const double* b) {
  int dim = cone.dim;
  double d[3] = {0, 0, 0};
  double len2 = 0.0;
  for (int ax = 0; ax < dim; ++ax) {
    d[ax] = b[ax] - a[ax];
    len2 += d[ax] * d[ax];
  }
  SegmentEvents out;
  Candidate cand[6];
  int nc = 0;
  bool tangent = false;

  // Sphere |a + s d| = R.
  {
    double A = len2, B = 0.0, C = -R * R;
    for (int ax = 0; ax < dim; ++ax) {
      B += 2.0 * a[ax] * d[ax];
      C += a[ax] * a[ax];
    }
    double roots[2];
    int n = quadratic_roots(A, B, C, roots, &tangent);
    if (tangent) ++out.tangency_drops;
    for (int i = 0; i < n; ++i) cand[nc++] = {roots[i], Piece::cap};
  }

  // Lateral boundary of the cone.
  switch (cone.kind) {
    case ConeRegion::Kind::full:
      break;
    case ConeRegion::Kind::half_line: {
      // Apex crossing x = 0; always strictly inside B_R, kept only so the
      // midpoint chain stays well resolved.
      if (d[0] != 0.0) {
        double r = -a[0] / d[0];
        if (r >= 0.0 && r <= 1.0) cand[nc++] = {r, Piece::lateral};
      }
      break;
    }
    case ConeRegion::Kind::sector: {
      double th[2] = {cone.theta_min, cone.theta_max};
      for (int side = 0; side < 2; ++side) {
        // Line x . n(theta) = 0 with n = (-sin, cos); keep only the ray side.
        double nx = -std::sin(th[side]), ny = std::cos(th[side]);
        double den = d[0] * nx + d[1] * ny;
        if (den == 0.0) continue;
        double r = -(a[0] * nx + a[1] * ny) / den;
        if (r < 0.0 || r > 1.0) continue;
        double px = a[0] + r * d[0], py = a[1] + r * d[1];
        if (px * std::cos(th[side]) + py * std::sin(th[side]) > 0.0)
          cand[nc++] = {r, Piece::lateral};
      }
      break;
    }
    case ConeRegion::Kind::axial: {
      double c = std::cos(cone.half_angle);
      double aw = 0.0, dw = 0.0, ad = 0.0, aa = 0.0;
      for (int ax = 0; ax < 3; ++ax) {
        aw += a[ax] * cone.axis[ax];
        dw += d[ax] * cone.axis[ax];
        ad += a[ax] * d[ax];
        aa += a[ax] * a[ax];
      }
      if (std::abs(c) < 1e-12) {
        // Half-space: plane x . axis = 0.
        if (dw != 0.0) {
          double r = -aw / dw;
          if (r >= 0.0 && r <= 1.0) cand[nc++] = {r, Piece::lateral};
        }
        break;
      }
      // (x . axis)^2 = c^2 |x|^2, filtered against the mirror cone.
      double A = dw * dw - c * c * len2;
      double B = 2.0 * (aw * dw - c * c * ad);
      double C = aw * aw - c * c * aa;
      double roots[2];
      bool tan2 = false;
      int n = quadratic_roots(A, B, C, roots, &tan2);
      if (tan2) ++out.tangency_drops;
      for (int i = 0; i < n; ++i) {
        double p = aw + roots[i] * dw;
        if (p * c > 0.0) cand[nc++] = {roots[i], Piece::lateral};
      }
      break;
    }
  }

  std::sort(cand, cand + nc, [](const Candidate& u, const Candidate& v) { return u.s < v.s; });

  // Membership chain: endpoints, then midpoints between consecutive hits.
  // Event signs are differences of neighboring memberships, so the per
  // segment sum telescopes to chi_D(b) - chi_D(a) identically.
  bool m_prev = region_contains(cone, R, a);
  double x[3];
  for (int i = 0; i < nc; ++i) {
    bool m_next;
    if (i + 1 < nc) {
      double sm = 0.5 * (cand[i].s + cand[i + 1].s);
      for (int ax = 0; ax < dim; ++ax) x[ax] = a[ax] + sm * d[ax];
      m_next = region_contains(cone, R, x);
    } else {
      m_next = region_contains(cone, R, b);
    }
    if (m_next != m_prev) {
      CrossingEvent ev;
      ev.s = cand[i].s;
      ev.piece = cand[i].piece;
      ev.sign = m_next ? +1 : -1;
      for (int ax = 0; ax < dim; ++ax) x[ax] = a[ax] + ev.s * d[ax];
      bool junction = false;
      if (ev.piece == Piece::cap) {
        junction = rim_angular_gap(cone, x) < 1e-9;
      } else {
        junction = std::abs(std::sqrt(norm2(x, dim)) - R) < 1e-9 * R;
      }
      if (junction) ++out.junction_events;
      out.events.push_back(ev);
    }
    m_prev = m_next;
  }
  // No candidates: membership cannot change along the segment interior.

  return out;
}

}  // namespace scatterlab
