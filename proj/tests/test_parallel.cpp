// Serial reference kernels against their OpenMP counterparts, and
// run-to-run determinism of the whole pipeline.

#include <gtest/gtest.h>

#include <sstream>

#include "xsect/grid.hpp"
#include "xsect/io.hpp"
#include "xsect/mesh.hpp"
#include "xsect/scenario.hpp"
#include "xsect/suites.hpp"
#include "xsect/sweep.hpp"

using namespace xsect;

TEST(Parallel, GridClassificationMatchesSerial2D) {
  const auto sc = make_suite_2d_scene(3, 42);
  const Arrangement<2> arr(sc.planes, sc.bbox, sc.tol);
  const auto sections = slice(*sc.shape, sc.planes, sc.shape->reach() / 100, sc.tol);
  const auto grid = Grid<2>::covering(sc.bbox, 0.03);
  const auto a = classify_grid_serial(grid, arr, sections, &*sc.shape);
  const auto b = classify_grid_parallel(grid, arr, sections, &*sc.shape);
  EXPECT_EQ(a.cell, b.cell);
  EXPECT_EQ(a.in_r, b.in_r);
  EXPECT_EQ(a.in_o, b.in_o);
}

TEST(Parallel, GridClassificationMatchesSerial3D) {
  const auto sc = make_suite_density_scene(1, 42);
  const Arrangement<3> arr(sc.planes, sc.bbox, sc.tol);
  const auto sections = slice(*sc.shape, sc.planes, sc.shape->reach() / 100, sc.tol);
  const auto grid = Grid<3>::covering(sc.bbox, 0.1);
  const auto a = classify_grid_serial(grid, arr, sections, &*sc.shape);
  const auto b = classify_grid_parallel(grid, arr, sections, &*sc.shape);
  EXPECT_EQ(a.cell, b.cell);
  EXPECT_EQ(a.in_r, b.in_r);
  EXPECT_EQ(a.in_o, b.in_o);
  const auto without_shape = classify_grid_parallel<3>(grid, arr, sections, nullptr);
  EXPECT_TRUE(without_shape.in_o.empty());
  EXPECT_EQ(without_shape.in_r, a.in_r);
}

TEST(Parallel, SweepMatchesSerial) {
  SweepConfig cfg;
  cfg.from = 0.6;
  cfg.to = 2.4;
  cfg.steps = 3;
  cfg.trials = 2;
  cfg.voxel = 0.15;
  cfg.seed = 9;
  const auto a = run_sweep_serial(cfg), b = run_sweep_parallel(cfg);
  ASSERT_EQ(a.size(), 6u);
  ASSERT_EQ(a.size(), b.size());
  std::stringstream sa, sb;
  write_csv(sweep_table(a), sa);
  write_csv(sweep_table(b), sb);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Parallel, DiskSweepRuns) {
  SweepConfig cfg;
  cfg.family = "disk_parallel";
  cfg.from = 0.5;
  cfg.to = 1.5;
  cfg.steps = 2;
  cfg.trials = 2;
  cfg.voxel = 0.05;
  const auto rows = run_sweep_parallel(cfg);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) EXPECT_TRUE(r.connectivity_match);
}

TEST(Determinism, ReportsAreIdenticalAcrossRuns) {
  const auto sc = make_suite_density_scene(0, 42);
  RunOptions opt;
  opt.check_stability = false;
  opt.voxel = 0.1;
  const auto a = report_to_json(run_scenario(sc, opt)), b = report_to_json(run_scenario(sc, opt));
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(Determinism, SuiteGeneratorsAreSeeded) {
  const auto a = make_suite_transversal_scene(2, 42), b = make_suite_transversal_scene(2, 42);
  EXPECT_EQ(scene_to_json(a).dump(), scene_to_json(b).dump());
  const auto c = make_suite_2d_scene(5, 42), d = make_suite_2d_scene(5, 43);
  EXPECT_NE(scene_to_json(c).dump(), scene_to_json(d).dump());
}

TEST(Determinism, SweepSeedsDependOnStepAndTrial) {
  SweepConfig cfg;
  EXPECT_NE(sweep_trial_seed(cfg, 0, 1), sweep_trial_seed(cfg, 1, 0));
  EXPECT_EQ(sweep_trial_seed(cfg, 2, 3), sweep_trial_seed(cfg, 2, 3));
}
