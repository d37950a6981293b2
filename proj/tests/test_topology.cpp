#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "oracles.hpp"
#include "xsect/grid.hpp"
#include "xsect/topology.hpp"

using namespace xsect;

namespace {

template <int D>
std::vector<std::uint8_t> voxelize(const std::array<int, D>& n, const std::function<bool(const Vec<D>&)>& inside) {
  Grid<D> g;
  g.n = n;
  std::size_t size = 1;
  for (int k = 0; k < D; ++k) size *= static_cast<std::size_t>(n[k]);
  std::vector<std::uint8_t> occ(size);
  for (std::size_t i = 0; i < size; ++i) {
    const auto idx = g.unindex(i);
    Vec<D> x;
    for (int k = 0; k < D; ++k) x[k] = (idx[k] + 0.5) / n[k] * 2 - 1;
    occ[i] = inside(x) ? 1 : 0;
  }
  return occ;
}

}  // namespace

TEST(Cubical, SingleVoxel) {
  std::vector<std::uint8_t> occ(27, 0);
  occ[13] = 1;
  const auto t = cubical_betti<3>(occ, {3, 3, 3});
  EXPECT_EQ(t.beta0, 1);
  EXPECT_EQ(t.beta1, 0);
  EXPECT_EQ(t.beta2, 0);
}

TEST(Cubical, ClosedCubeCountsOfOneSquare) {
  std::vector<std::uint8_t> occ{1};
  const auto c = cubical_counts_serial<2>(occ, {1, 1});
  EXPECT_EQ(c.v, 4);
  EXPECT_EQ(c.e, 4);
  EXPECT_EQ(c.f, 1);
  EXPECT_EQ(c.euler(), 1);
}

TEST(Cubical, DiagonalNeighboursAreConnected) {
  // Closed squares sharing a corner form one component.
  std::vector<std::uint8_t> occ{1, 0, 0, 1};
  EXPECT_EQ(cubical_betti<2>(occ, {2, 2}).beta0, 1);
}

TEST(Cubical, RingHasOneHole) {
  const auto occ = voxelize<2>({40, 40}, [](const Vec2& x) {
    const double r = norm(x);
    return r > 0.4 && r < 0.8;
  });
  const auto t = cubical_betti<2>(occ, {40, 40});
  EXPECT_EQ(t.beta0, 1);
  EXPECT_EQ(t.beta1, 1);
}

TEST(Cubical, HollowBallEnclosesAVoid) {
  const auto occ = voxelize<3>({24, 24, 24}, [](const Vec3& x) {
    const double r = norm(x);
    return r > 0.5 && r < 0.85;
  });
  const auto t = cubical_betti<3>(occ, {24, 24, 24});
  EXPECT_EQ(t.beta0, 1);
  EXPECT_EQ(t.beta1, 0);
  EXPECT_EQ(t.beta2, 1);
}

TEST(Cubical, TorusHasOneLoop) {
  const auto occ = voxelize<3>({40, 40, 20}, [](const Vec3& x) {
    return oracle::torus_sdf(Vec3{x[0], x[1], x[2] * 0.5}, Vec3{0, 0, 0}, Vec3{0, 0, 1}, 0.6, 0.25) < 0;
  });
  const auto t = cubical_betti<3>(occ, {40, 40, 20});
  EXPECT_EQ(t.beta0, 1);
  EXPECT_EQ(t.beta1, 1);
  EXPECT_EQ(t.beta2, 0);
}

TEST(Cubical, EulerCharacteristicMatchesBetti) {
  std::mt19937_64 rng(12);
  std::bernoulli_distribution coin(0.3);
  for (int trial = 0; trial < 10; ++trial) {
    const std::array<int, 3> n{9, 8, 7};
    std::vector<std::uint8_t> occ(9 * 8 * 7);
    for (auto& v : occ) v = coin(rng);
    const auto t = cubical_betti<3>(occ, n);
    EXPECT_EQ(cubical_counts_serial<3>(occ, n).euler(), t.beta0 - t.beta1 + t.beta2);
  }
}

TEST(Cubical, SerialAndParallelCountsAgree) {
  std::mt19937_64 rng(13);
  std::bernoulli_distribution coin(0.45);
  const std::array<int, 3> n{31, 17, 23};
  std::vector<std::uint8_t> occ(31 * 17 * 23);
  for (auto& v : occ) v = coin(rng);
  const auto a = cubical_counts_serial<3>(occ, n), b = cubical_counts_parallel<3>(occ, n);
  EXPECT_EQ(a.v, b.v);
  EXPECT_EQ(a.e, b.e);
  EXPECT_EQ(a.f, b.f);
  EXPECT_EQ(a.c, b.c);
  const std::array<int, 2> m{64, 37};
  std::vector<std::uint8_t> occ2(64 * 37);
  for (auto& v : occ2) v = coin(rng);
  EXPECT_EQ(cubical_counts_serial<2>(occ2, m).euler(), cubical_counts_parallel<2>(occ2, m).euler());
}

TEST(Exact2DTopology, GroundTruthOfDisksAndAnnuli) {
  const Shape<2> s({make_disk(Vec2{0, 0}, 0.5), make_annulus(Vec2{2, 0}, 0.3, 0.6), make_annulus(Vec2{0, 2}, 0.2, 0.5)});
  const auto t = betti_2d(s);
  EXPECT_EQ(t.beta0, 3);
  EXPECT_EQ(t.beta1, 2);
  EXPECT_EQ(t.per_component_holes, (std::vector<int>{0, 1, 1}));
}

TEST(Bijection, SlabThroughABallLinksItsTwoSections) {
  const Shape<3> ball({make_ball(Vec3{0, 0, 0}, 1.0)});
  std::vector<Hyperplane<3>> planes{{Vec3{0, 0, 1}, -0.4}, {Vec3{0, 0, 1}, 0.4}};
  const Box<3> box{Vec3{-1.3, -1.3, -1.3}, Vec3{1.3, 1.3, 1.3}};
  const Arrangement<3> arr(planes, box, Tolerance::scaled(box.diameter()));
  const auto sections = slice(ball, planes, 0.01, arr.tolerance());
  const auto grid = Grid<3>::covering(box, 0.06);
  const auto labels = classify_grid_parallel(grid, arr, sections, &ball);
  const int middle = arr.locate(Vec3{0, 0, 0});
  EXPECT_EQ(sections_of_cell(arr.cell(middle), arr, sections).size(), 2u);
  const auto b = component_bijection(middle, arr, sections, grid, labels);
  EXPECT_TRUE(b.match);
  ASSERT_EQ(b.from_r.blocks.size(), 1u);
  EXPECT_EQ(b.from_r.blocks[0].size(), 2u);
  const auto all = component_bijection_all(arr, sections, grid, labels);
  ASSERT_EQ(all.size(), arr.cells().size());
  for (const auto& r : all) EXPECT_TRUE(r.match);
}

TEST(Bijection, PartitionSeparatesDisjointBlobs) {
  // Two balls in one slab: each links its own pair of sections.
  const Shape<3> balls({make_ball(Vec3{-1.2, 0, 0}, 0.8), make_ball(Vec3{1.2, 0, 0}, 0.8)});
  std::vector<Hyperplane<3>> planes{{Vec3{0, 0, 1}, -0.3}, {Vec3{0, 0, 1}, 0.3}};
  const Box<3> box{Vec3{-2.3, -1.2, -1.2}, Vec3{2.3, 1.2, 1.2}};
  const Arrangement<3> arr(planes, box, Tolerance::scaled(box.diameter()));
  const auto sections = slice(balls, planes, 0.01, arr.tolerance());
  const auto grid = Grid<3>::covering(box, 0.06);
  const auto labels = classify_grid_serial(grid, arr, sections, &balls);
  const int middle = arr.locate(Vec3{0, 0, 0});
  const auto p = section_partition(middle, arr, sections, grid, labels.cell, labels.in_o);
  ASSERT_EQ(p.blocks.size(), 2u);
  for (const auto& b : p.blocks) EXPECT_EQ(b.size(), 2u);
}

TEST(Anchoring, IsolatedVoxelsAwayFromFacesAreRemoved) {
  std::vector<Hyperplane<2>> lines{{Vec2{0, 1}, 0.0}};
  const Box<2> box{Vec2{-1, -1}, Vec2{1, 1}};
  const Arrangement<2> arr(lines, box, Tolerance::scaled(box.diameter()));
  const auto grid = Grid<2>::covering(box, 0.1);
  std::vector<int> cell_of(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) cell_of[i] = arr.locate(grid.center(grid.unindex(i)));
  std::vector<std::uint8_t> occ(grid.size(), 0);
  // A blob touching the line, plus a lone voxel near the top wall.
  for (int x = 8; x < 12; ++x)
    for (int y = 10; y < 13; ++y) occ[grid.index({x, y})] = 1;
  occ[grid.index({3, 17})] = 1;
  const int flipped = drop_unanchored_components(occ, grid, cell_of, arr);
  EXPECT_EQ(flipped, 1);
  EXPECT_EQ(occ[grid.index({3, 17})], 0);
  EXPECT_EQ(occ[grid.index({9, 11})], 1);
}
