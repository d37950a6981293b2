#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "xsect/errors.hpp"
#include "xsect/io.hpp"
#include "xsect/mesh.hpp"
#include "xsect/reconstruction.hpp"
#include "xsect/scene.hpp"
#include "xsect/shapes.hpp"

using namespace xsect;
using nlohmann::json;

namespace {

Mesh3D tetrahedron() {
  Mesh3D m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  m.triangles = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
  m.cell_tags = {0, 0, 1, 1};
  return m;
}

double loop_area(const Loop& l) { return std::abs(signed_area(l)); }

}  // namespace

TEST(Off, RoundTrip) {
  const Mesh3D m = tetrahedron();
  std::stringstream s;
  write_off(m, s);
  const Mesh3D back = read_off(s);
  ASSERT_EQ(back.vertices.size(), m.vertices.size());
  EXPECT_EQ(back.triangles, m.triangles);
  for (std::size_t i = 0; i < m.vertices.size(); ++i) EXPECT_EQ(back.vertices[i], m.vertices[i]);
  EXPECT_TRUE(check_manifold(back).ok());
  EXPECT_EQ(check_manifold(back).euler, 2);
}

TEST(Off, RejectsBadInput) {
  std::stringstream a("PLY\n");
  EXPECT_THROW(read_off(a), ValidationError);
  std::stringstream b("OFF\n1 1 0\n0 0 0\n3 0 0 5\n");
  EXPECT_THROW(read_off(b), ValidationError);
}

TEST(Obj, RoundTrip) {
  const Mesh3D m = tetrahedron();
  std::stringstream s;
  write_obj(m, s);
  const Mesh3D back = read_obj(s);
  EXPECT_EQ(back.triangles, m.triangles);
  ASSERT_EQ(back.vertices.size(), 4u);
  EXPECT_EQ(back.vertices[3], m.vertices[3]);
}

TEST(Manifold, DetectsOpenAndFlippedSurfaces) {
  Mesh3D open = tetrahedron();
  open.triangles.pop_back();
  EXPECT_EQ(check_manifold(open).boundary_edges, 3);
  Mesh3D flipped = tetrahedron();
  std::swap(flipped.triangles[0][1], flipped.triangles[0][2]);
  EXPECT_GT(check_manifold(flipped).misoriented_edges, 0);
}

TEST(Csv, RoundTrip) {
  CsvTable t;
  t.header = {"a", "b"};
  t.rows = {{"1", "x"}, {"2.5", "true"}};
  std::stringstream s;
  write_csv(t, s);
  const CsvTable back = read_csv(s);
  EXPECT_EQ(back.header, t.header);
  EXPECT_EQ(back.rows, t.rows);
}

TEST(Svg, RegionsRoundTrip) {
  const Shape<2> ring({make_annulus(Vec2{0, 0}, 0.5, 1.0)});
  std::vector<Hyperplane<2>> lines;
  for (int k = -4; k <= 4; ++k) {
    lines.emplace_back(Vec2{1, 0}, 0.3 * k + 0.01);
    lines.emplace_back(Vec2{0, 1}, 0.3 * k - 0.02);
  }
  const Box<2> box{Vec2{-1.5, -1.5}, Vec2{1.5, 1.5}};
  const Arrangement<2> arr(lines, box, Tolerance::scaled(box.diameter()));
  const auto sections = slice(ring, lines, 1e-3, arr.tolerance());
  const auto rec = reconstruct_2d(arr, sections);
  const std::string svg = render_svg(arr, sections, rec);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  const auto regions = read_svg_regions(svg);
  ASSERT_EQ(regions.size(), rec.global.size());
  ASSERT_EQ(regions[0].size(), 1 + rec.global[0].holes.size());
  Loop outer;
  for (const auto& p : rec.global[0].outer) outer.push_back(p.approx());
  const double expect = loop_area(outer);
  EXPECT_NEAR(loop_area(regions[0][0]), expect, 1e-6 * expect);
}

TEST(SceneJson, RoundTripThroughSerializer) {
  const json doc = json::parse(R"({
    "schema": 1, "dim": 3, "name": "rt", "seed": 7,
    "bbox": {"lo": [-2, -2, -2], "hi": [2, 2, 2]},
    "grid": {"voxel": 0.1},
    "plane_generators": [
      {"type": "parallel", "normal": [0, 0, 2], "spacing": 0.5, "count": 3, "start": -0.5},
      {"type": "random", "count": 4}
    ],
    "shape": {"components": [
      {"type": "torus", "center": [0, 0, 0], "axis": [0, 0, 1], "major": 1.0, "minor": 0.3},
      {"type": "capsule", "p": [-1.8, -1.8, -1], "q": [-1.8, -1.8, 1], "radius": 0.1}
    ]}
  })");
  const auto a = std::get<SceneData<3>>(parse_scene(doc));
  ASSERT_EQ(a.planes.size(), 7u);
  EXPECT_NEAR(a.planes[0].offset, -0.5, 1e-15);
  const auto b = std::get<SceneData<3>>(parse_scene(scene_to_json(a)));
  EXPECT_EQ(b.name, a.name);
  EXPECT_EQ(b.seed, a.seed);
  ASSERT_EQ(b.planes.size(), a.planes.size());
  for (std::size_t i = 0; i < a.planes.size(); ++i) {
    // Re-normalizing the parsed normal may move it by an ulp.
    EXPECT_LT(distance(b.planes[i].normal, a.planes[i].normal), 1e-15);
    EXPECT_NEAR(b.planes[i].offset, a.planes[i].offset, 1e-15);
  }
  ASSERT_TRUE(b.shape);
  EXPECT_EQ(b.shape->components().size(), 2u);
  EXPECT_DOUBLE_EQ(b.shape->reach(), a.shape->reach());
  EXPECT_DOUBLE_EQ(b.voxel, 0.1);
}

TEST(SceneJson, RandomPlanesDependOnTheSeed) {
  auto doc = json::parse(R"({"schema": 1, "dim": 2, "bbox": {"lo": [-1, -1], "hi": [1, 1]},
    "plane_generators": [{"type": "random", "count": 5}],
    "shape": {"components": [{"type": "disk", "center": [0, 0], "radius": 0.5}]}})");
  doc["seed"] = 1;
  const auto a = std::get<SceneData<2>>(parse_scene(doc));
  const auto a2 = std::get<SceneData<2>>(parse_scene(doc));
  doc["seed"] = 2;
  const auto b = std::get<SceneData<2>>(parse_scene(doc));
  EXPECT_EQ(a.planes[0].normal, a2.planes[0].normal);
  EXPECT_NE(a.planes[0].normal, b.planes[0].normal);
}

TEST(SceneJson, ExplicitSectionsRoundTrip) {
  const json doc = json::parse(R"({
    "schema": 1, "dim": 3, "bbox": {"lo": [-2, -2, -2], "hi": [2, 2, 2]},
    "planes": [{"normal": [0, 0, 1], "offset": 0}],
    "sections": [{"plane": 0, "frame": {"origin": [0, 0, 0], "u": [1, 0, 0], "v": [0, 1, 0]},
                  "regions": [{"outer": [[0, 0], [1, 0], [1, 1], [0, 1]], "holes": []}]}]
  })");
  const auto a = std::get<SceneData<3>>(parse_scene(doc));
  ASSERT_TRUE(a.explicit_sections);
  EXPECT_FALSE(a.shape);
  const auto b = std::get<SceneData<3>>(parse_scene(scene_to_json(a)));
  ASSERT_TRUE(b.explicit_sections);
  EXPECT_EQ(b.explicit_sections->total(), 1);
  EXPECT_EQ(b.explicit_sections->find(0, Vec3{0.5, 0.5, 0}, a.tol), 0);
  EXPECT_EQ(b.explicit_sections->find(0, Vec3{-0.5, 0.5, 0}, a.tol), -1);
}

TEST(Files, TextRoundTripAndMissingFile) {
  const auto dir = std::filesystem::temp_directory_path() / "xsect_io_test";
  std::filesystem::create_directories(dir);
  const std::string p = (dir / "a.txt").string();
  write_text_file(p, "hello\n");
  EXPECT_EQ(read_text_file(p), "hello\n");
  EXPECT_THROW(read_text_file((dir / "missing.txt").string()), Error);
}
