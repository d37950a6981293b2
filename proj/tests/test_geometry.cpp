#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "xsect/errors.hpp"
#include "xsect/geometry.hpp"

using namespace xsect;

TEST(Hyperplane, NormalizesNormalAndOffset) {
  const Hyperplane<3> h(Vec3{0, 0, 2}, 3.0);
  EXPECT_DOUBLE_EQ(norm(h.normal), 1.0);
  EXPECT_DOUBLE_EQ(h.offset, 1.5);
  EXPECT_DOUBLE_EQ(signed_distance(Vec3{0, 0, 2}, h), 0.5);
}

TEST(Hyperplane, ZeroNormalThrows) { EXPECT_THROW(Hyperplane<2>(Vec2{0, 0}, 1.0), GeometryError); }

TEST(Hyperplane, FlipAndProject) {
  const Hyperplane<2> h(Vec2{1, 1}, 1.0);
  const auto f = h.flipped();
  const Vec2 x{3, -1};
  EXPECT_NEAR(signed_distance(x, f), -signed_distance(x, h), 1e-15);
  EXPECT_NEAR(signed_distance(h.project(x), h), 0.0, 1e-15);
}

TEST(PlaneFrame, CanonicalFrameIsOrthonormalAndRoundTrips) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int i = 0; i < 50; ++i) {
    const Hyperplane<3> h(Vec3{g(rng), g(rng), g(rng)}, g(rng));
    const auto f = PlaneFrame<3>::canonical(h);
    EXPECT_NEAR(dot(f.u, f.v), 0.0, 1e-12);
    EXPECT_NEAR(norm(f.u), 1.0, 1e-12);
    EXPECT_NEAR(dot(f.u, h.normal), 0.0, 1e-12);
    EXPECT_NEAR(signed_distance(f.origin, h), 0.0, 1e-12);
    const Vec2 p{g(rng), g(rng)};
    const Vec2 q = f.to_local(f.to_world(p));
    EXPECT_NEAR(q[0], p[0], 1e-12);
    EXPECT_NEAR(q[1], p[1], 1e-12);
  }
}

TEST(PlaneFrame, CanonicalFrameIsDeterministic) {
  const Hyperplane<3> h(Vec3{0.3, -0.2, 0.9}, 0.4);
  const auto a = PlaneFrame<3>::canonical(h), b = PlaneFrame<3>::canonical(h);
  EXPECT_EQ(a.u, b.u);
  EXPECT_EQ(a.origin, b.origin);
}

TEST(Polygon, SignedAreaOfSquare) {
  const Loop ccw{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  EXPECT_DOUBLE_EQ(signed_area(ccw), 4.0);
  const Loop cw(ccw.rbegin(), ccw.rend());
  EXPECT_DOUBLE_EQ(signed_area(cw), -4.0);
}

TEST(Polygon, PointInPolygonAgreesWithWindingNumber) {
  PolygonWithHoles poly;
  for (int k = 0; k < 12; ++k) {
    const double t = 2 * M_PI * k / 12, r = k % 2 ? 1.0 : 0.6;
    poly.outer.push_back({r * std::cos(t), r * std::sin(t)});
  }
  poly.holes.push_back({{-0.1, -0.1}, {-0.1, 0.1}, {0.1, 0.1}, {0.1, -0.1}});
  const Tolerance tol;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  int inside = 0;
  for (int i = 0; i < 5000; ++i) {
    const Vec2 p{u(rng), u(rng)};
    const Location loc = point_in_polygon(p, poly, tol);
    if (loc == Location::OnBoundary) continue;
    const bool ref = oracle::inside_polygon(p, poly);
    EXPECT_EQ(loc == Location::Inside, ref) << p;
    inside += ref;
  }
  EXPECT_GT(inside, 500);
}

TEST(Polygon, BoundaryPointsAreReported) {
  const PolygonWithHoles sq{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {}};
  EXPECT_EQ(point_in_polygon(Vec2{0.5, 0.0}, sq, Tolerance{}), Location::OnBoundary);
  EXPECT_EQ(point_in_polygon(Vec2{1.0, 1.0}, sq, Tolerance{}), Location::OnBoundary);
}

TEST(Polygon, DegenerateLoopThrows) {
  const PolygonWithHoles flat{{{0, 0}, {1, 0}, {2, 0}}, {}};
  EXPECT_THROW(point_in_polygon(Vec2{0.5, 0.5}, flat, Tolerance{}), GeometryError);
}

TEST(Polygon, ClipToConvexKeepsOverlap) {
  const Loop a{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  const Loop b{{1, 1}, {3, 1}, {3, 3}, {1, 3}};
  EXPECT_NEAR(signed_area(clip_to_convex(a, b)), 1.0, 1e-12);
  const Loop far{{5, 5}, {6, 5}, {6, 6}, {5, 6}};
  EXPECT_TRUE(clip_to_convex(a, far).empty());
}

TEST(Polygon, DistanceToSegmentClampsToEnds) {
  EXPECT_DOUBLE_EQ(distance_to_segment(Vec2{0, 1}, Vec2{-1, 0}, Vec2{1, 0}), 1.0);
  EXPECT_DOUBLE_EQ(distance_to_segment(Vec2{3, 4}, Vec2{-1, 0}, Vec2{0, 0}), 5.0);
}

TEST(Tolerance, ScalesWithDiameterAndValidates) {
  const Tolerance t = Tolerance::scaled(10.0, 1e-8);
  EXPECT_DOUBLE_EQ(t.eps_geom, 1e-7);
  Tolerance bad;
  bad.eps_geom = -1;
  EXPECT_THROW(bad.validate(), Error);
}
