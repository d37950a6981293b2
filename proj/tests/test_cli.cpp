#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"
#include "xsect/io.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const fs::path p = fs::temp_directory_path() / "xsect_cli_test";
  fs::create_directories(p);
  return p;
}

int run(const std::string& args) {
  const std::string cmd = std::string(XSECT_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string scene(const std::string& name) { return std::string(XSECT_SOURCE_DIR) + "/scenes/" + name; }

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

const char* kSmallDisk = R"({"schema": 1, "dim": 2, "name": "disk",
  "bbox": {"lo": [-1.5, -1.5], "hi": [1.5, 1.5]}, "grid": {"voxel": 0.05},
  "plane_generators": [{"type": "parallel", "normal": [1, 0], "spacing": 0.5, "count": 6, "start": -1.24},
                       {"type": "parallel", "normal": [0, 1], "spacing": 0.5, "count": 6, "start": -1.23}],
  "shape": {"components": [{"type": "disk", "center": [0, 0], "radius": 1.0}]}})";

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("frobnicate x.json"), 2);
  EXPECT_EQ(run("reconstruct"), 2);
  EXPECT_EQ(run("--help"), 0);
}

TEST(Cli, MalformedAndInvalidScenesExitTwo) {
  EXPECT_EQ(run("reconstruct " + write("bad.json", "{ not json")), 2);
  EXPECT_EQ(run("reconstruct " + write("nodim.json", R"({"schema": 1})")), 2);
  EXPECT_EQ(run("reconstruct " + (scratch() / "missing.json").string()), 2);
}

TEST(Cli, TangentPlaneExitsTwo) {
  const std::string tangent = R"({"schema": 1, "dim": 2, "bbox": {"lo": [-2, -2], "hi": [2, 2]},
    "planes": [{"normal": [0, 1], "offset": 1.0}],
    "shape": {"components": [{"type": "disk", "center": [0, 0], "radius": 1.0}]}})";
  EXPECT_EQ(run("check " + write("tangent.json", tangent)), 2);
}

TEST(Cli, ReconstructWritesReportAndDrawing) {
  const fs::path out = scratch() / "rec";
  fs::remove_all(out);
  const std::string path = write("disk.json", kSmallDisk);
  ASSERT_EQ(run("--out-dir " + out.string() + " reconstruct " + path), 0);
  ASSERT_TRUE(fs::exists(out / "disk.report.json"));
  ASSERT_TRUE(fs::exists(out / "disk.svg"));
  const auto j = nlohmann::json::parse(xsect::read_text_file((out / "disk.report.json").string()));
  EXPECT_EQ(j["verdict"], "TopologyMatch");
}

TEST(Cli, RenderWritesMeshIn3D) {
  const fs::path out = scratch() / "mesh";
  fs::remove_all(out);
  ASSERT_EQ(run("--grid 0.1 --format obj --out-dir " + out.string() + " render " + scene("ball_two_planes.json")), 0);
  EXPECT_TRUE(fs::exists(out / "ball_two_planes.obj"));
}

TEST(Cli, CheckReflectsTheConditions) {
  EXPECT_EQ(run("check " + write("disk.json", kSmallDisk)), 0);
  // Two planes leave the caps of the ball in cells of infinite height.
  EXPECT_EQ(run("--grid 0.1 check " + scene("ball_two_planes.json")), 1);
  // Explicit sections carry no shape to evaluate.
  EXPECT_EQ(run("--grid 0.1 check " + scene("fig12_torus_sections.json")), 1);
}

TEST(Cli, SweepWritesCsv) {
  const std::string cfg = write("sweep.json", R"({"family": "disk_parallel", "from": 0.5, "to": 1.0,
    "steps": 2, "trials": 2, "voxel": 0.05})");
  const fs::path out = scratch() / "sweep";
  fs::remove_all(out);
  ASSERT_EQ(run("--out-dir " + out.string() + " sweep " + cfg + " --csv rows.csv"), 0);
  std::ifstream in(out / "rows.csv");
  const auto t = xsect::read_csv(in);
  EXPECT_EQ(t.rows.size(), 4u);
  EXPECT_EQ(t.header.at(0), "param_value");
}
