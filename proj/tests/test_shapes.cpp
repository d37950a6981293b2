#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "xsect/errors.hpp"
#include "xsect/shapes.hpp"

using namespace xsect;

namespace {

const Box<3> kBox{Vec3{-3, -3, -3}, Vec3{3, 3, 3}};

double loop_area(const PolygonWithHoles& p) {
  double a = signed_area(p.outer);
  for (const auto& h : p.holes) a += signed_area(h);
  return a;
}

}  // namespace

TEST(Shapes, BallSignedDistance) {
  const Shape<3> s({make_ball(Vec3{1, 0, 0}, 0.5)});
  EXPECT_NEAR(s.signed_distance(Vec3{1, 0, 0}), -0.5, 1e-15);
  EXPECT_NEAR(s.signed_distance(Vec3{3, 0, 0}), 1.5, 1e-15);
  EXPECT_DOUBLE_EQ(s.reach(), 0.5);
}

TEST(Shapes, TorusMatchesImplicitFormula) {
  const Vec3 c{0.1, -0.2, 0.3}, axis{1, 2, 2};
  const Shape<3> s({make_torus(c, axis, 1.0, 0.3)});
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 x{u(rng), u(rng), u(rng)};
    EXPECT_NEAR(s.signed_distance(x), oracle::torus_sdf(x, c, axis, 1.0, 0.3), 1e-9);
  }
  EXPECT_NEAR(s.reach(), 0.3, 1e-12);
  const Shape<3> fat({make_torus(c, axis, 0.5, 0.3)});
  EXPECT_NEAR(fat.reach(), 0.2, 1e-12);
}

TEST(Shapes, ContainsAgreesWithSignedDistance) {
  const Shape<3> s({make_torus(Vec3{0, 0, 0}, Vec3{0, 0, 1}, 1.0, 0.3), make_capsule(Vec3{-2, -2, 0}, Vec3{-2, 2, 0}, 0.3),
                    make_tube({{2, -2, 0}, {2, 2, 0}, {2.5, 2, 1}}, 0.2, 0.4)});
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3, 3);
  int inside = 0;
  for (int i = 0; i < 20000; ++i) {
    const Vec3 x{u(rng), u(rng), u(rng)};
    const bool ref = s.signed_distance(x) <= 0;
    EXPECT_EQ(s.contains(x), ref);
    inside += ref;
  }
  EXPECT_GT(inside, 50);
}

TEST(Shapes, BoundaryNormalMatchesFiniteDifferences) {
  const Shape<3> s({make_torus(Vec3{0, 0, 0}, Vec3{0, 1, 1}, 1.0, 0.35), make_capsule(Vec3{3, 0, 0}, Vec3{3, 0, 2}, 0.4)});
  const Tolerance tol = Tolerance::scaled(kBox.diameter());
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 200; ++i) {
    const Vec3 a = s.project_to_boundary(Vec3{u(rng), u(rng), u(rng)});
    EXPECT_NEAR(s.signed_distance(a), 0.0, 1e-9);
    const Vec3 n = s.boundary_normal(a, tol);
    const Vec3 ref = oracle::fd_normal<3>([&](const Vec3& x) { return s.signed_distance(x); }, a);
    EXPECT_GT(dot(n, ref), 1 - 1e-6);
  }
  EXPECT_THROW(s.boundary_normal(Vec3{0, 0, 0}, tol), GeometryError);
}

TEST(Shapes, CapsuleAndTubeBasics) {
  const Shape<3> cap({make_capsule(Vec3{0, 0, -1}, Vec3{0, 0, 1}, 0.5)});
  EXPECT_NEAR(cap.signed_distance(Vec3{0, 0, 2}), 0.5, 1e-15);
  EXPECT_NEAR(cap.signed_distance(Vec3{1, 0, 0}), 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(cap.reach(), 0.5);
  const Shape<3> tube({make_tube({{0, 0, 0}, {2, 0, 0}, {2, 2, 0}}, 0.2, 0.5)});
  // The filleted corner lies inside the square corner.
  EXPECT_GT(tube.signed_distance(Vec3{2, 0, 0}), 0.0);
  EXPECT_LT(tube.signed_distance(Vec3{1, 0, 0}), 0.0);
  EXPECT_LE(tube.reach(), 0.2 + 1e-12);
  EXPECT_GT(tube.reach(), 0.15);
}

TEST(Shapes, TwoDimensionalPrimitives) {
  const Shape<2> s({make_disk(Vec2{0, 0}, 1.0), make_annulus(Vec2{4, 0}, 0.5, 1.0)});
  EXPECT_NEAR(s.signed_distance(Vec2{0, 0}), -1.0, 1e-15);
  EXPECT_NEAR(s.signed_distance(Vec2{4, 0}), 0.5, 1e-15);
  EXPECT_NEAR(s.signed_distance(Vec2{4.75, 0}), -0.25, 1e-15);
  EXPECT_NEAR(s.reach(), 0.25, 1e-12);
  EXPECT_NEAR(s.min_clearance(), 2.0, 1e-12);
}

TEST(Shapes, OverlappingComponentsAreRejected) {
  EXPECT_THROW(Shape<3>({make_ball(Vec3{0, 0, 0}, 1.0), make_ball(Vec3{1.5, 0, 0}, 1.0)}), ValidationError);
  EXPECT_THROW(make_torus(Vec3{0, 0, 0}, Vec3{0, 0, 1}, 0.3, 0.5), ValidationError);
}

TEST(Shapes, ReachIsHalfTheClearanceForCloseComponents) {
  const Shape<3> s({make_ball(Vec3{0, 0, 0}, 1.0), make_ball(Vec3{2.4, 0, 0}, 1.0)});
  EXPECT_NEAR(s.reach(), 0.2, 1e-12);
}

TEST(Sections, BallSliceIsACircle) {
  const Shape<3> s({make_ball(Vec3{0, 0, 0}, 1.0)});
  const Hyperplane<3> h(Vec3{0, 0, 1}, 0.6);
  const auto frame = PlaneFrame<3>::canonical(h);
  const auto regions = s.section(h, frame, 1e-4, Tolerance::scaled(kBox.diameter()));
  ASSERT_EQ(regions.size(), 1u);
  EXPECT_TRUE(regions[0].holes.empty());
  EXPECT_NEAR(loop_area(regions[0]), M_PI * 0.64, 0.01);
  for (const auto& p : regions[0].outer) EXPECT_LE(norm(frame.to_world(p)), 1.0 + 1e-9);
}

TEST(Sections, TorusSliceThroughTheAxisHasTwoDisks) {
  const Shape<3> s({make_torus(Vec3{0, 0, 0}, Vec3{0, 0, 1}, 1.0, 0.3)});
  const Hyperplane<3> h(Vec3{1, 0, 0}, 0.0);
  const auto frame = PlaneFrame<3>::canonical(h);
  const auto regions = s.section(h, frame, 1e-4, Tolerance::scaled(kBox.diameter()));
  ASSERT_EQ(regions.size(), 2u);
  for (const auto& r : regions) EXPECT_NEAR(loop_area(r), M_PI * 0.09, 0.005);
}

TEST(Sections, TorusSliceAcrossTheAxisIsAnAnnulus) {
  const Shape<3> s({make_torus(Vec3{0, 0, 0}, Vec3{0, 0, 1}, 1.0, 0.3)});
  const Hyperplane<3> h(Vec3{0, 0, 1}, 0.1);
  const auto regions = s.section(h, PlaneFrame<3>::canonical(h), 1e-4, Tolerance::scaled(kBox.diameter()));
  ASSERT_EQ(regions.size(), 1u);
  EXPECT_EQ(regions[0].holes.size(), 1u);
  const double w = std::sqrt(0.09 - 0.01);
  EXPECT_NEAR(loop_area(regions[0]), M_PI * ((1 + w) * (1 + w) - (1 - w) * (1 - w)), 0.01);
}

TEST(Sections, AnnulusLineSliceGivesIntervals) {
  const Shape<2> s({make_annulus(Vec2{0, 0}, 0.5, 1.0)});
  const Hyperplane<2> h(Vec2{0, 1}, 0.0);
  const auto frame = PlaneFrame<2>::canonical(h);
  auto regions = s.section(h, frame, 1e-4, Tolerance::scaled(6.0));
  ASSERT_EQ(regions.size(), 2u);
  for (const auto& iv : regions) EXPECT_NEAR(iv.hi - iv.lo, 0.5, 1e-9);
}

TEST(Sections, TangentPlaneViolatesGeneralPosition) {
  const Shape<3> s({make_ball(Vec3{0, 0, 0}, 1.0)});
  const Hyperplane<3> h(Vec3{0, 0, 1}, 1.0);
  const Tolerance tol = Tolerance::scaled(kBox.diameter());
  EXPECT_THROW(s.check_general_position(h, tol), GeneralPositionViolation);
  EXPECT_THROW(s.section(h, PlaneFrame<3>::canonical(h), 1e-3, tol), GeneralPositionViolation);
  EXPECT_NO_THROW(s.check_general_position(Hyperplane<3>(Vec3{0, 0, 1}, 0.9), tol));
}

TEST(Sections, PlaneMissingTheShapeHasNoSections) {
  const Shape<3> s({make_ball(Vec3{0, 0, 0}, 1.0)});
  const Hyperplane<3> h(Vec3{0, 0, 1}, 2.0);
  EXPECT_TRUE(s.section(h, PlaneFrame<3>::canonical(h), 1e-3, Tolerance::scaled(kBox.diameter())).empty());
}

TEST(Sections, BoundarySheetsCut) {
  const Shape<2> s({make_annulus(Vec2{0, 0}, 0.5, 1.0)});
  // y = 0.8 meets only the outer circle; y = 0 meets both.
  const auto outer_only = s.boundary_sheets_cut({Hyperplane<2>(Vec2{0, 1}, 0.8)});
  ASSERT_EQ(outer_only.size(), 2u);
  EXPECT_NE(outer_only[0], outer_only[1]);
  const auto both = s.boundary_sheets_cut({Hyperplane<2>(Vec2{0, 1}, 0.0)});
  EXPECT_TRUE(both[0] && both[1]);
}

TEST(Medial, SamplesAreEquidistantFromTheBoundary) {
  const Shape<3> s({make_torus(Vec3{0, 0, 0}, Vec3{0, 0, 1}, 1.0, 0.3)});
  for (const auto& m : s.medial_samples(MedialSide::Internal, 100, kBox)) {
    EXPECT_NEAR(-s.signed_distance(m.m), m.radius, 1e-6);
    EXPECT_NEAR(m.radius, 0.3, 1e-6);
  }
  const auto ext = s.medial_samples(MedialSide::External, 100, kBox);
  ASSERT_FALSE(ext.empty());
  for (const auto& m : ext) EXPECT_NEAR(s.signed_distance(m.m), m.radius, 1e-6);
}

TEST(Medial, BallHasNoFiniteExternalRadius) {
  const Shape<3> s({make_ball(Vec3{0, 0, 0}, 1.0)});
  EXPECT_TRUE(std::isinf(s.external_radius(Vec3{1, 0, 0}, Vec3{1, 0, 0}, kBox)));
}
