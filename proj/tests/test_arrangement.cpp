#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "xsect/arrangement.hpp"
#include "xsect/errors.hpp"

using namespace xsect;

namespace {

// Lines x = 0, x = 1, y = 0, y = 1 in the box [-2, 3]^2: a 3 x 3 grid of cells.
Arrangement<2> tic_tac_toe() {
  std::vector<Hyperplane<2>> lines{{Vec2{1, 0}, 0.0}, {Vec2{1, 0}, 1.0}, {Vec2{0, 1}, 0.0}, {Vec2{0, 1}, 1.0}};
  return Arrangement<2>(lines, Box<2>{Vec2{-2, -2}, Vec2{3, 3}}, Tolerance::scaled(5 * std::sqrt(2.0)));
}

Arrangement<3> unit_cube_lattice() {
  std::vector<Hyperplane<3>> planes;
  for (int k = 0; k < 3; ++k)
    for (double o : {0.0, 1.0}) {
      Vec3 n{};
      n[k] = 1;
      planes.emplace_back(n, o);
    }
  return Arrangement<3>(planes, Box<3>{Vec3{-1, -1, -1}, Vec3{2, 2, 2}}, Tolerance::scaled(3 * std::sqrt(3.0)));
}

}  // namespace

TEST(Arrangement, CountsCellsOfALineGrid) {
  const auto arr = tic_tac_toe();
  EXPECT_EQ(arr.cells().size(), 9u);
  int bounded = 0;
  for (const auto& c : arr.cells()) bounded += c.bounded;
  EXPECT_EQ(bounded, 1);
}

TEST(Arrangement, CountsCellsOfAPlaneLattice) {
  const auto arr = unit_cube_lattice();
  EXPECT_EQ(arr.cells().size(), 27u);
}

TEST(Arrangement, LinesMissingTheBoxAddNoCells) {
  std::vector<Hyperplane<2>> lines{{Vec2{1, 0}, 0.0}, {Vec2{1, 0}, 10.0}};
  const Arrangement<2> arr(lines, Box<2>{Vec2{-1, -1}, Vec2{1, 1}}, Tolerance::scaled(3));
  EXPECT_EQ(arr.cells().size(), 2u);
}

TEST(Arrangement, LocateMatchesSignVectors) {
  const auto arr = tic_tac_toe();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2, 3);
  for (int i = 0; i < 500; ++i) {
    const Vec2 x{u(rng), u(rng)};
    const auto& c = arr.cell(arr.locate(x));
    EXPECT_TRUE(c.contains(x, 1e-12));
    for (std::size_t p = 0; p < arr.planes().size(); ++p)
      EXPECT_EQ(signed_distance(x, arr.planes()[p]) > 0 ? 1 : -1, c.signs[p]);
  }
  EXPECT_THROW(arr.locate(Vec2{10, 0}), Error);
}

TEST(Arrangement, CellsContainingExpandsTies) {
  const auto arr = tic_tac_toe();
  EXPECT_EQ(arr.cells_containing(Vec2{0.5, 0.5}).size(), 1u);
  EXPECT_EQ(arr.cells_containing(Vec2{0.0, 0.5}).size(), 2u);
  EXPECT_EQ(arr.cells_containing(Vec2{0.0, 0.0}).size(), 4u);
}

TEST(Arrangement, CellVerticesAreCounterClockwiseIn2D) {
  const auto arr = tic_tac_toe();
  for (const auto& c : arr.cells()) {
    ASSERT_GE(c.vertices.size(), 3u);
    Loop l(c.vertices.begin(), c.vertices.end());
    EXPECT_GT(signed_area(l), 0.0);
    EXPECT_TRUE(c.contains(c.interior, 0.0));
  }
}

TEST(Arrangement, FacePolygonsLieOnTheirPlanes) {
  const auto arr = unit_cube_lattice();
  for (const auto& c : arr.cells())
    for (const auto& f : c.faces)
      for (const auto& v : f.vertices) EXPECT_NEAR(f.interior_distance(v), 0.0, 1e-12);
}

TEST(CellHeight, CentreSquareAndHalfStrip) {
  const auto arr = tic_tac_toe();
  EXPECT_NEAR(cell_height(arr.cell(arr.locate(Vec2{0.5, 0.5})), arr), 0.5, 1e-12);
  EXPECT_NEAR(cell_height(arr.cell(arr.locate(Vec2{0.5, 2.5})), arr), 0.5, 1e-12);
  EXPECT_TRUE(std::isinf(cell_height(arr.cell(arr.locate(Vec2{2.5, 2.5})), arr)));
}

TEST(CellHeight, ChebyshevCentreOfATriangle) {
  // Right triangle with legs 3 and 4: inradius 1 at (1, 1).
  std::vector<Hyperplane<2>> lines{{Vec2{1, 0}, 0.0}, {Vec2{0, 1}, 0.0}, {Vec2{4, 3}, 12.0}};
  const Arrangement<2> arr(lines, Box<2>{Vec2{-1, -1}, Vec2{5, 5}}, Tolerance::scaled(8.5));
  const auto& c = arr.cell(arr.locate(Vec2{0.5, 0.5}));
  const auto [h, centre] = cell_height_with_center(c, arr);
  EXPECT_NEAR(h, 1.0, 1e-12);
  EXPECT_NEAR(centre[0], 1.0, 1e-9);
  EXPECT_NEAR(centre[1], 1.0, 1e-9);
  EXPECT_NEAR(oracle::cell_height_grid(c, arr), 1.0, 1e-9);
}

TEST(CellHeight, AgreesWithGridSearchOnRandomLines) {
  Box<2> box{Vec2{-1, -1}, Vec2{1, 1}};
  const auto lines = [] {
    std::vector<Hyperplane<2>> out;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 12; ++i) out.emplace_back(Vec2{u(rng), u(rng)}, 0.5 * u(rng));
    return out;
  }();
  const Arrangement<2> arr(lines, box, Tolerance::scaled(box.diameter()));
  int checked = 0;
  for (const auto& c : arr.cells()) {
    if (!c.bounded) continue;
    const double ref = oracle::cell_height_grid(c, arr);
    EXPECT_NEAR(cell_height(c, arr), ref, 1e-6 * ref);
    ++checked;
  }
  EXPECT_GT(checked, 5);
}

TEST(NearestFace, ReportsTiesAndProjections) {
  const auto arr = tic_tac_toe();
  const auto& c = arr.cell(arr.locate(Vec2{0.5, 0.5}));
  const auto tol = arr.tolerance();
  const auto one = nearest_face(Vec2{0.5, 0.2}, c, tol);
  ASSERT_EQ(one.faces.size(), 1u);
  EXPECT_NEAR(one.distance, 0.2, 1e-12);
  EXPECT_NEAR(one.points[0][1], 0.0, 1e-12);
  EXPECT_EQ(nearest_face(Vec2{0.5, 0.5}, c, tol).faces.size(), 4u);
  EXPECT_THROW(nearest_face(Vec2{2.0, 2.0}, c, tol), GeometryError);
}

TEST(NearestFace, DistanceToCuttingPlanesIgnoresWalls) {
  const auto arr = tic_tac_toe();
  const auto& corner = arr.cell(arr.locate(Vec2{2.5, 2.5}));
  EXPECT_NEAR(distance_to_cutting_planes(Vec2{2.9, 2.5}, corner, arr), 1.5, 1e-12);
}
