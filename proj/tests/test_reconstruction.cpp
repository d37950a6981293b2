#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "xsect/reconstruction.hpp"
#include "xsect/shapes.hpp"
#include "xsect/topology.hpp"

using namespace xsect;
using exact::LoopQ;
using exact::PointQ;

namespace {

LoopQ square(int x, int y) {
  return {PointQ(Vec2(x, y)), PointQ(Vec2(x + 1, y)), PointQ(Vec2(x + 1, y + 1)), PointQ(Vec2(x, y + 1))};
}

double area_of(const exact::PolygonQ& p) {
  mpq_class a = exact::twice_area(p.outer);
  for (const auto& h : p.holes) a += exact::twice_area(h);
  return a.get_d() / 2;
}

struct Scene2 {
  Shape<2> shape;
  std::vector<Hyperplane<2>> lines;
  Box<2> box;
};

Scene2 disk_grid() {
  Scene2 s{Shape<2>({make_disk(Vec2{0, 0}, 1.0)}), {}, Box<2>{Vec2{-1.5, -1.5}, Vec2{1.5, 1.5}}};
  for (double o : {-0.6, 0.0, 0.6}) {
    s.lines.emplace_back(Vec2{1, 0}, o + 0.05);
    s.lines.emplace_back(Vec2{0, 1}, o - 0.03);
  }
  return s;
}

Scene2 annulus_grid() {
  Scene2 s{Shape<2>({make_annulus(Vec2{0, 0}, 0.6, 1.0)}), {}, Box<2>{Vec2{-1.5, -1.5}, Vec2{1.5, 1.5}}};
  for (int k = -3; k <= 3; ++k) {
    s.lines.emplace_back(Vec2{1, 0.1}, 0.3 * k + 0.02);
    s.lines.emplace_back(Vec2{-0.1, 1}, 0.3 * k - 0.04);
  }
  return s;
}

}  // namespace

TEST(Union, AdjacentSquaresMerge) {
  const auto u = union_of_tiles({square(0, 0), square(1, 0)});
  ASSERT_EQ(u.size(), 1u);
  EXPECT_DOUBLE_EQ(area_of(u[0]), 2.0);
  EXPECT_TRUE(u[0].holes.empty());
}

TEST(Union, RingOfSquaresHasOneHole) {
  std::vector<LoopQ> tiles;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      if (x != 1 || y != 1) tiles.push_back(square(x, y));
  const auto u = union_of_tiles(tiles);
  ASSERT_EQ(u.size(), 1u);
  EXPECT_EQ(u[0].holes.size(), 1u);
  EXPECT_DOUBLE_EQ(area_of(u[0]), 8.0);
  EXPECT_EQ(betti_2d(u).beta1, 1);
}

TEST(Union, DisjointSquaresStaySeparate) {
  const auto u = union_of_tiles({square(0, 0), square(3, 0)});
  EXPECT_EQ(u.size(), 2u);
  EXPECT_EQ(betti_2d(u).beta0, 2);
}

TEST(Union, CornerContactJoinsComponents) {
  const auto u = union_of_tiles({square(0, 0), square(1, 1)});
  EXPECT_EQ(betti_2d(u).beta0, 1);
}

TEST(Membership, AgreesWithSegmentUnionIn2D) {
  for (const Scene2& s : {disk_grid(), annulus_grid()}) {
    const Arrangement<2> arr(s.lines, s.box, Tolerance::scaled(s.box.diameter()));
    const auto sections = slice(s.shape, s.lines, 1e-3, arr.tolerance());
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    int agree = 0, total = 0;
    for (int i = 0; i < 5000; ++i) {
      const Vec2 x{u(rng), u(rng)};
      const int c = arr.locate(x);
      const auto ref = oracle::in_reconstruction_segments(x, c, arr, sections);
      const bool lib = in_reconstruction(x, arr, sections);
      ++total;
      if (lib == ref.inside) ++agree;
      else EXPECT_LT(ref.margin, 1e-9) << x;
    }
    EXPECT_GE(agree, total * 999 / 1000);
  }
}

TEST(Membership, SectionsBelongToTheReconstruction) {
  const Scene2 s = disk_grid();
  const Arrangement<2> arr(s.lines, s.box, Tolerance::scaled(s.box.diameter()));
  const auto sections = slice(s.shape, s.lines, 1e-3, arr.tolerance());
  for (int p = 0; p < sections.plane_count(); ++p) {
    const auto& ps = sections.on_plane(p);
    for (const auto& iv : ps.regions) {
      const Vec2 mid = ps.frame.to_world(0.5 * (iv.lo + iv.hi));
      EXPECT_TRUE(in_reconstruction(mid, arr, sections));
    }
  }
  EXPECT_FALSE(in_reconstruction(Vec2{1.45, 1.45}, arr, sections));
}

TEST(Exact2D, PiecesMatchPointMembership) {
  const Scene2 s = annulus_grid();
  const Arrangement<2> arr(s.lines, s.box, Tolerance::scaled(s.box.diameter()));
  const auto sections = slice(s.shape, s.lines, 1e-3, arr.tolerance());
  const auto rec = reconstruct_2d(arr, sections);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  int checked = 0;
  for (int i = 0; i < 3000; ++i) {
    const Vec2 x{u(rng), u(rng)};
    const PointQ q(x);
    int where = -1;
    for (const auto& poly : rec.global) {
      int loc = exact::locate(q, poly.outer);
      for (const auto& h : poly.holes)
        if (loc > 0) {
          const int lh = exact::locate(q, h);
          if (lh == 0) loc = 0;
          else if (lh > 0) loc = -1;
        }
      where = std::max(where, loc);
    }
    if (where == 0) continue;
    EXPECT_EQ(where > 0, in_reconstruction(x, arr, sections)) << x;
    ++checked;
  }
  EXPECT_GT(checked, 2900);
}

TEST(Exact2D, AnnulusReconstructionHasOneHole) {
  const Scene2 s = annulus_grid();
  const Arrangement<2> arr(s.lines, s.box, Tolerance::scaled(s.box.diameter()));
  const auto sections = slice(s.shape, s.lines, 1e-3, arr.tolerance());
  const auto t = betti_2d(reconstruct_2d(arr, sections).global);
  EXPECT_EQ(t.beta0, 1);
  EXPECT_EQ(t.beta1, 1);
  EXPECT_EQ(t.per_component_holes, std::vector<int>{1});
}

TEST(Exact2D, PiecesAreSimpleCounterClockwise) {
  const Scene2 s = disk_grid();
  const Arrangement<2> arr(s.lines, s.box, Tolerance::scaled(s.box.diameter()));
  const auto sections = slice(s.shape, s.lines, 1e-3, arr.tolerance());
  for (const auto& c : arr.cells())
    for (const auto& piece : reconstruction_pieces_2d(c, arr, sections)) {
      EXPECT_GT(exact::twice_area(piece), 0);
      EXPECT_TRUE(exact::is_simple(piece));
    }
}

TEST(Membership, AgreesWithSegmentUnionIn3D) {
  const Shape<3> shape({make_torus(Vec3{0, 0, 0}, Vec3{0.2, 0.1, 1}, 1.0, 0.35)});
  std::vector<Hyperplane<3>> planes;
  for (int k = -4; k <= 4; ++k) {
    planes.emplace_back(Vec3{1, 0.05, 0}, 0.31 * k + 0.01);
    planes.emplace_back(Vec3{0, 1, 0.07}, 0.29 * k - 0.02);
    planes.emplace_back(Vec3{0.04, 0, 1}, 0.33 * k + 0.03);
  }
  const Box<3> box{Vec3{-1.6, -1.6, -0.8}, Vec3{1.6, 1.6, 0.8}};
  const Arrangement<3> arr(planes, box, Tolerance::scaled(box.diameter()));
  const auto sections = slice(shape, planes, 0.003, arr.tolerance());
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0, 1);
  int agree = 0, total = 0;
  for (int i = 0; i < 3000; ++i) {
    Vec3 x;
    for (int k = 0; k < 3; ++k) x[k] = box.lo[k] + u(rng) * (box.hi[k] - box.lo[k]);
    const auto ref = oracle::in_reconstruction_segments(x, arr.locate(x), arr, sections);
    const bool lib = in_reconstruction(x, arr, sections);
    ++total;
    if (lib == ref.inside) ++agree;
    else EXPECT_LT(ref.margin, 1e-6 * box.diameter()) << x;
  }
  EXPECT_GE(agree, total * 999 / 1000);
}
