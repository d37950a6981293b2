#include "xsect/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <random>

#include "xsect/scenario.hpp"

namespace xsect {

using nlohmann::json;

SweepConfig parse_sweep_config(const json& doc) {
  if (!doc.is_object()) throw ValidationError("sweep", "expected an object");
  SweepConfig c;
  try {
    c.family = doc.value("family", c.family);
    if (c.family != "ball_parallel" && c.family != "disk_parallel")
      throw ValidationError("sweep.family", "unknown sweep family '" + c.family + "'");
    if (doc.contains("param") && doc["param"].get<std::string>() != "spacing")
      throw ValidationError("sweep.param", "only 'spacing' can be swept");
    c.radius = doc.value("radius", c.radius);
    c.from = doc.value("from", c.from);
    c.to = doc.value("to", c.to);
    c.steps = doc.value("steps", c.steps);
    c.trials = doc.value("trials", c.trials);
    c.seed = doc.value("seed", c.seed);
    c.voxel = doc.value("voxel", c.voxel);
    c.constructed_trial = doc.value("constructed_trial", c.constructed_trial);
  } catch (const json::exception& e) {
    throw ValidationError("sweep", std::string("type error: ") + e.what());
  }
  if (!(c.radius > 0) || !(c.from > 0) || !(c.to >= c.from) || c.steps < 1 || c.trials < 0 || !(c.voxel > 0))
    throw ValidationError("sweep", "need radius > 0, 0 < from <= to, steps >= 1, trials >= 0, voxel > 0");
  return c;
}

std::uint64_t sweep_trial_seed(const SweepConfig& cfg, int step, int trial) {
  // splitmix64 of (seed, step, trial).
  std::uint64_t z = cfg.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(step) * 0x100000001B3ULL +
                    static_cast<std::uint64_t>(trial) + 1;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

template <int D>
SceneData<D> sweep_trial_scene(const SweepConfig& cfg, double s, int trial, std::uint64_t seed) {
  SceneData<D> sc;
  sc.name = cfg.family;
  sc.seed = seed;
  const double r = cfg.radius;
  double phase;
  if (cfg.constructed_trial && trial == 0) {
    phase = 0.5 * s;
  } else {
    std::mt19937_64 rng(seed);
    phase = static_cast<double>(rng() >> 11) * 0x1.0p-53 * s;
  }
  const double reach_out = r + s;
  const int kmax = static_cast<int>(std::ceil(reach_out / s)) + 1;
  double zmax = 1.5 * r;
  Vec<D> n{};
  n[D - 1] = 1.0;
  for (int k = -kmax; k <= kmax; ++k) {
    const double z = phase + k * s;
    if (std::abs(z) > reach_out) continue;
    // A plane tangent to the shape violates general position; it would carry
    // only a point section, so the trial drops it.
    if (std::abs(std::abs(z) - r) < 1e-6 * r) continue;
    sc.planes.push_back(Hyperplane<D>(n, z));
    zmax = std::max(zmax, std::abs(z) + 0.25 * s);
  }
  for (int k = 0; k < D; ++k) {
    sc.bbox.lo[k] = -1.5 * r;
    sc.bbox.hi[k] = 1.5 * r;
  }
  sc.bbox.lo[D - 1] = -zmax;
  sc.bbox.hi[D - 1] = zmax;
  sc.tol = Tolerance::scaled(sc.bbox.diameter());
  sc.voxel = cfg.voxel;
  if constexpr (D == 3) sc.shape.emplace(std::vector<Primitive<3>>{make_ball({0, 0, 0}, r)});
  else sc.shape.emplace(std::vector<Primitive<2>>{make_disk({0, 0}, r)});
  return sc;
}

namespace {

template <int D>
SweepRow run_trial_dim(const SweepConfig& cfg, double s, int trial, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const SceneData<D> scene = sweep_trial_scene<D>(cfg, s, trial, seed);
  RunOptions opt;
  opt.check_stability = false;
  const ScenarioReport<D> rep = run_scenario(scene, opt);
  SweepRow row;
  row.param_value = s;
  row.trial = trial;
  row.seed = seed;
  row.h_over_reach = 0.0;
  for (const auto& c : rep.conditions.cells) {
    if (std::isfinite(c.h) && std::isfinite(c.reach)) row.h_over_reach = std::max(row.h_over_reach, c.h / c.reach);
    row.alpha_c = std::max(row.alpha_c, c.alpha);
  }
  row.c1 = rep.conditions.all_c1();
  row.c2 = rep.conditions.all_c2();
  row.beta_match = rep.betti_match;
  row.connectivity_match = rep.connectivity_match;
  if (cfg.timings)
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

SweepRow run_trial(const SweepConfig& cfg, int step, int trial) {
  const double s = cfg.steps == 1 ? cfg.from : cfg.from + (cfg.to - cfg.from) * step / (cfg.steps - 1);
  const std::uint64_t seed = sweep_trial_seed(cfg, step, trial);
  return cfg.family == "ball_parallel" ? run_trial_dim<3>(cfg, s, trial, seed) : run_trial_dim<2>(cfg, s, trial, seed);
}

}  // namespace

std::vector<SweepRow> run_sweep_serial(const SweepConfig& cfg) {
  std::vector<SweepRow> rows;
  for (int step = 0; step < cfg.steps; ++step)
    for (int t = 0; t < cfg.trials; ++t) rows.push_back(run_trial(cfg, step, t));
  return rows;
}

std::vector<SweepRow> run_sweep_parallel(const SweepConfig& cfg) {
  const int total = cfg.steps * cfg.trials;
  std::vector<SweepRow> rows(static_cast<std::size_t>(total));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < total; ++i) {
    try {
      rows[static_cast<std::size_t>(i)] = run_trial(cfg, i / cfg.trials, i % cfg.trials);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

CsvTable sweep_table(const std::vector<SweepRow>& rows) {
  CsvTable t;
  t.header = {"param_value", "trial", "seed", "h_over_reach", "alpha_C", "c1", "c2",
              "beta_match", "connectivity_match", "runtime_ms"};
  auto f = [](double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return std::string(buf);
  };
  auto b = [](bool x) { return std::string(x ? "true" : "false"); };
  for (const auto& r : rows)
    t.rows.push_back({f(r.param_value), std::to_string(r.trial), std::to_string(r.seed), f(r.h_over_reach),
                      f(r.alpha_c), b(r.c1), b(r.c2), b(r.beta_match), b(r.connectivity_match), f(r.runtime_ms)});
  return t;
}

template SceneData<2> sweep_trial_scene(const SweepConfig&, double, int, std::uint64_t);
template SceneData<3> sweep_trial_scene(const SweepConfig&, double, int, std::uint64_t);

}  // namespace xsect
