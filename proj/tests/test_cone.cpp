#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "scatterlab/cone.hpp"
#include "scatterlab/crossing.hpp"
#include "scatterlab/surface.hpp"

using namespace scatterlab;

TEST_CASE("membership: full, half line, apex") {
  ConeRegion full1 = ConeRegion::full_space(1);
  double xp = 2.0, xm = -3.0, x0 = 0.0;
  CHECK(full1.contains(&xp));
  CHECK(full1.contains(&xm));
  CHECK(!full1.contains(&x0));  // apex excluded

  ConeRegion right = ConeRegion::half_line(+1);
  ConeRegion left = ConeRegion::half_line(-1);
  CHECK(right.contains(&xp));
  CHECK(!right.contains(&xm));
  CHECK(!right.contains(&x0));
  CHECK(left.contains(&xm));
  CHECK(!left.contains(&xp));
}

TEST_CASE("membership: sector, including the wrap-around branch") {
  ConeRegion s = ConeRegion::sector(0.2, 1.0);
  double in[2] = {std::cos(0.6), std::sin(0.6)};
  double out[2] = {std::cos(1.4), std::sin(1.4)};
  double neg[2] = {std::cos(-0.1), std::sin(-0.1)};
  CHECK(s.contains(in));
  CHECK(!s.contains(out));
  CHECK(!s.contains(neg));

  // Sector of half-angle 0.34 about the -x axis straddles theta = pi.
  ConeRegion back = ConeRegion::sector_about({-1.0, 0.0}, 0.34);
  double on_axis[2] = {-5.0, 0.0};
  double above[2] = {-5.0 * std::cos(0.2), 5.0 * std::sin(0.2)};  // theta ~ pi-0.2
  double below[2] = {-5.0 * std::cos(0.2), -5.0 * std::sin(0.2)};
  double fwd[2] = {5.0, 0.0};
  CHECK(back.contains(on_axis));
  CHECK(back.contains(above));
  CHECK(back.contains(below));
  CHECK(!back.contains(fwd));
}

TEST_CASE("membership: axial cones, acute and obtuse") {
  ConeRegion c = ConeRegion::axial({0.0, 0.0, 1.0}, kPi / 4);
  double in[3] = {0.1, 0.0, 1.0};
  double out[3] = {1.0, 0.0, 0.9};
  double behind[3] = {0.1, 0.0, -1.0};
  CHECK(c.contains(in));
  CHECK(!c.contains(out));
  CHECK(!c.contains(behind));

  ConeRegion wide = ConeRegion::axial({0.0, 0.0, 1.0}, 2.5);  // obtuse
  double side[3] = {1.0, 0.0, -0.5};   // polar angle ~ 2.03 < 2.5
  double deep[3] = {0.1, 0.0, -1.0};   // polar angle ~ 3.04 > 2.5
  CHECK(wide.contains(side));
  CHECK(!wide.contains(deep));

  double apex[3] = {0.0, 0.0, 0.0};
  CHECK(!c.contains(apex));
  CHECK(!wide.contains(apex));
}

TEST_CASE("region membership is strict in the radius") {
  ConeRegion full = ConeRegion::full_space(2);
  double at[2] = {2.0, 0.0};
  double just_out[2] = {2.0 + 1e-9, 0.0};
  CHECK(!region_contains(full, 2.0, at));
  CHECK(region_contains(full, 2.0, just_out));
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(5, x, w);
  REQUIRE(x.size() == 5);
  auto integ = [&](int k) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], k);
    return s;
  };
  CHECK(integ(0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(integ(1) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(integ(2) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(integ(8) == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
  CHECK(integ(9) == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("cap quadrature areas match closed forms") {
  double R = 2.0;
  // d=1: single endpoint with unit weight.
  SurfaceQuadrature q1 = cap_quadrature(ConeRegion::half_line(+1), R, 4);
  CHECK(q1.nodes() == 1);
  CHECK(q1.x[0] == doctest::Approx(R));
  CHECK(q1.normal[0] == doctest::Approx(1.0));
  CHECK(q1.area() == doctest::Approx(1.0));
  SurfaceQuadrature q1f = cap_quadrature(ConeRegion::full_space(1), R, 4);
  CHECK(q1f.nodes() == 2);
  CHECK(q1f.area() == doctest::Approx(2.0));

  // d=2 full circle and sector arc.
  SurfaceQuadrature q2 = cap_quadrature(ConeRegion::full_space(2), R, 64);
  CHECK(q2.area() == doctest::Approx(2.0 * kPi * R).epsilon(1e-12));
  ConeRegion sec = ConeRegion::sector(0.25, 1.0);
  SurfaceQuadrature q2s = cap_quadrature(sec, R, 32);
  CHECK(q2s.area() == doctest::Approx(R * 0.75).epsilon(1e-12));

  // d=3 full sphere and axial cap.
  SurfaceQuadrature q3 = cap_quadrature(ConeRegion::full_space(3), R, 8);
  CHECK(q3.area() == doctest::Approx(4.0 * kPi * R * R).epsilon(1e-12));
  double alpha = kPi / 6;
  ConeRegion ax = ConeRegion::axial({0.0, 0.0, 1.0}, alpha);
  SurfaceQuadrature q3c = cap_quadrature(ax, R, 8);
  CHECK(q3c.area() ==
        doctest::Approx(2.0 * kPi * R * R * (1.0 - std::cos(alpha))).epsilon(1e-12));
  // Cap normals are radial.
  for (std::size_t i = 0; i < q3c.nodes(); ++i) {
    double dot = 0.0, r = 0.0;
    for (int a = 0; a < 3; ++a) {
      dot += q3c.normal[3 * i + a] * q3c.x[3 * i + a];
      r += q3c.x[3 * i + a] * q3c.x[3 * i + a];
    }
    CHECK(dot == doctest::Approx(R).epsilon(1e-12));
    CHECK(std::sqrt(r) == doctest::Approx(R).epsilon(1e-12));
  }
}

TEST_CASE("cap quadrature integrates a linear function exactly") {
  // Over the axial cap about +z: integral of z dA = pi R^3 sin^2(alpha).
  double R = 1.7, alpha = 0.6;
  ConeRegion ax = ConeRegion::axial({0.0, 0.0, 1.0}, alpha);
  SurfaceQuadrature q = cap_quadrature(ax, R, 6);
  double s = 0.0;
  for (std::size_t i = 0; i < q.nodes(); ++i) s += q.w[i] * q.x[3 * i + 2];
  double expect = kPi * R * R * R * std::sin(alpha) * std::sin(alpha);
  CHECK(s == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("lateral quadrature areas and tangential normals") {
  double R = 2.0, Ro = 5.0;

  ConeRegion sec = ConeRegion::sector(-0.5, 0.9);
  SurfaceQuadrature l2 = lateral_quadrature(sec, R, Ro, 16);
  CHECK(l2.area() == doctest::Approx(2.0 * (Ro - R)).epsilon(1e-12));
  for (std::size_t i = 0; i < l2.nodes(); ++i) {
    double dot = l2.normal[2 * i] * l2.x[2 * i] + l2.normal[2 * i + 1] * l2.x[2 * i + 1];
    CHECK(std::abs(dot) < 1e-12);  // normal orthogonal to the boundary ray
    double n2 = l2.normal[2 * i] * l2.normal[2 * i] +
                l2.normal[2 * i + 1] * l2.normal[2 * i + 1];
    CHECK(n2 == doctest::Approx(1.0).epsilon(1e-12));
  }

  double alpha = kPi / 5;
  ConeRegion ax = ConeRegion::axial({0.0, 0.0, 1.0}, alpha);
  SurfaceQuadrature l3 = lateral_quadrature(ax, R, Ro, 8);
  CHECK(l3.area() ==
        doctest::Approx(kPi * std::sin(alpha) * (Ro * Ro - R * R)).epsilon(1e-12));
  for (std::size_t i = 0; i < l3.nodes(); ++i) {
    double dot = 0.0;
    for (int a = 0; a < 3; ++a) dot += l3.normal[3 * i + a] * l3.x[3 * i + a];
    CHECK(std::abs(dot) < 1e-12);
  }

  CHECK(lateral_quadrature(ConeRegion::full_space(3), R, Ro, 8).nodes() == 0);
  CHECK(lateral_quadrature(ConeRegion::half_line(+1), R, Ro, 8).nodes() == 0);
}

TEST_CASE("segment classification: simple cap crossings") {
  ConeRegion right = ConeRegion::half_line(+1);
  double R = 2.0;
  double a = 1.0, b = 3.0;
  SegmentEvents ev = classify_segment(right, R, &a, &b);
  REQUIRE(ev.events.size() == 1);
  CHECK(ev.events[0].sign == +1);
  CHECK(ev.events[0].piece == Piece::cap);
  CHECK(ev.events[0].s == doctest::Approx(0.5));
  SegmentEvents back = classify_segment(right, R, &b, &a);
  REQUIRE(back.events.size() == 1);
  CHECK(back.events[0].sign == -1);

  // Crossing from the far side: enters D only at x = +2.
  double am = -3.0, bp = 3.0;
  SegmentEvents through = classify_segment(right, R, &am, &bp);
  REQUIRE(through.events.size() == 1);
  CHECK(through.events[0].sign == +1);
  CHECK(through.events[0].s == doctest::Approx(5.0 / 6.0));
}

TEST_CASE("segment classification: sector cap and lateral pieces") {
  ConeRegion fwd = ConeRegion::sector_about({1.0, 0.0}, kPi / 6, "fwd");
  double R = 2.0;
  double a[2] = {3.0, 0.0};
  double b[2] = {0.1, 0.0};
  SegmentEvents ev = classify_segment(fwd, R, a, b);
  REQUIRE(ev.events.size() == 1);
  CHECK(ev.events[0].piece == Piece::cap);
  CHECK(ev.events[0].sign == -1);
  CHECK(ev.events[0].s == doctest::Approx(1.0 / 2.9));

  double c[2] = {0.0, 3.0};  // leaves through the theta = +pi/6 ray
  SegmentEvents lat = classify_segment(fwd, R, a, c);
  REQUIRE(lat.events.size() == 1);
  CHECK(lat.events[0].piece == Piece::lateral);
  CHECK(lat.events[0].sign == -1);
}

TEST_CASE("segment classification: double crossing with both ends outside") {
  ConeRegion full = ConeRegion::full_space(2);
  double a[2] = {-2.0, 0.5};
  double b[2] = {2.0, 0.5};
  SegmentEvents ev = classify_segment(full, 1.0, a, b);
  REQUIRE(ev.events.size() == 2);
  CHECK(ev.events[0].sign == -1);
  CHECK(ev.events[1].sign == +1);
  CHECK(ev.events[0].s < ev.events[1].s);
}

TEST_CASE("segment classification: exact tangency produces no event") {
  ConeRegion full = ConeRegion::full_space(2);
  double a[2] = {2.0, -1.0};
  double b[2] = {2.0, 1.0};  // the segment grazes the circle at (2, 0)
  SegmentEvents ev = classify_segment(full, 2.0, a, b);
  CHECK(ev.events.empty());
  CHECK(ev.tangency_drops == 1);
}

TEST_CASE("segment through the cap-lateral junction counts once") {
  // alpha = pi/4 about +z, R = sqrt(2): the rim passes through (1, 0, 1).
  ConeRegion ax = ConeRegion::axial({0.0, 0.0, 1.0}, kPi / 4);
  double R = std::sqrt(2.0);
  double a[3] = {1.0, 0.0, 0.5};
  double b[3] = {1.0, 0.0, 1.5};
  SegmentEvents ev = classify_segment(ax, R, a, b);
  REQUIRE(ev.events.size() == 1);
  CHECK(ev.events[0].sign == +1);
  CHECK(ev.junction_events >= 1);
}

namespace {

// Membership flips found by scanning the segment at fine resolution.
int dense_signed_flips(const ConeRegion& cone, double R, const double* a,
                       const double* b, int dim, std::vector<int>* signs) {
  const int kScan = 2000;
  double prev[3], cur[3];
  for (int ax = 0; ax < dim; ++ax) prev[ax] = a[ax];
  bool m_prev = region_contains(cone, R, prev);
  int total = 0;
  for (int i = 1; i <= kScan; ++i) {
    double s = static_cast<double>(i) / kScan;
    for (int ax = 0; ax < dim; ++ax) cur[ax] = a[ax] + s * (b[ax] - a[ax]);
    bool m = region_contains(cone, R, cur);
    if (m != m_prev) {
      int sg = m ? +1 : -1;
      total += sg;
      if (signs) signs->push_back(sg);
      m_prev = m;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("telescoping over random polylines matches dense scans") {
  std::mt19937 rng(404);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::normal_distribution<double> step(0.0, 0.8);

  ConeRegion cones2[2] = {ConeRegion::sector_about({1.0, 0.0}, kPi / 6),
                          ConeRegion::full_space(2)};
  for (const ConeRegion& cone : cones2) {
    for (int walk = 0; walk < 25; ++walk) {
      double a[2] = {u(rng), u(rng)};
      for (int seg = 0; seg < 200; ++seg) {
        double b[2] = {a[0] + step(rng), a[1] + step(rng)};
        SegmentEvents ev = classify_segment(cone, 1.5, a, b);
        int sum = 0;
        for (const auto& e : ev.events) sum += e.sign;
        int expect = static_cast<int>(region_contains(cone, 1.5, b)) -
                     static_cast<int>(region_contains(cone, 1.5, a));
        CHECK(sum == expect);  // per-segment telescoping, always exact
        std::vector<int> dense_signs;
        int dense = dense_signed_flips(cone, 1.5, a, b, 2, &dense_signs);
        CHECK(sum == dense);
        if (dense_signs.size() == ev.events.size())
          for (std::size_t i = 0; i < dense_signs.size(); ++i)
            CHECK(dense_signs[i] == ev.events[i].sign);
        a[0] = b[0];
        a[1] = b[1];
      }
    }
  }

  ConeRegion ax = ConeRegion::axial({0.0, 0.0, 1.0}, kPi / 4);
  for (int walk = 0; walk < 10; ++walk) {
    double a[3] = {u(rng), u(rng), u(rng)};
    for (int seg = 0; seg < 100; ++seg) {
      double b[3] = {a[0] + step(rng), a[1] + step(rng), a[2] + step(rng)};
      SegmentEvents ev = classify_segment(ax, 1.5, a, b);
      int sum = 0;
      for (const auto& e : ev.events) sum += e.sign;
      int expect = static_cast<int>(region_contains(ax, 1.5, b)) -
                   static_cast<int>(region_contains(ax, 1.5, a));
      CHECK(sum == expect);
      CHECK(sum == dense_signed_flips(ax, 1.5, a, b, 3, nullptr));
      for (int c = 0; c < 3; ++c) a[c] = b[c];
    }
  }
}
