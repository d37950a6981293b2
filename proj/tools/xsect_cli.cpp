// Command-line driver: reconstruct, check, sweep, topology, render.
//
// Exit codes: 0 success, 1 topology mismatch or failed check, 2 bad usage,
// unreadable or invalid input, or a general-position violation.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "xsect/io.hpp"
#include "xsect/mesh.hpp"
#include "xsect/scenario.hpp"
#include "xsect/scene.hpp"
#include "xsect/sweep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace xsect;

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<double> grid;
  std::optional<double> tol;
  std::string out_dir = ".";
  std::string format;
  bool timings = false;
};

json read_json(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(path, std::string("malformed JSON: ") + e.what());
  }
}

AnyScene load_with_overrides(const std::string& path, const Globals& g) {
  json doc = read_json(path);
  if (!doc.is_object()) throw ValidationError(path, "a scene must be a JSON object");
  if (g.seed) doc["seed"] = *g.seed;
  if (g.tol) doc["tolerance"]["rel_geom"] = *g.tol;
  if (g.grid) doc["grid"]["voxel"] = *g.grid;
  AnyScene scene = parse_scene(doc);
  std::visit(
      [&](auto& s) {
        if (s.name.empty()) s.name = fs::path(path).stem().string();
      },
      scene);
  return scene;
}

RunOptions run_options(const Globals& g) {
  RunOptions opt;
  opt.timings = g.timings;
  return opt;
}

std::string out_path(const Globals& g, const std::string& name, const std::string& ext) {
  fs::create_directories(g.out_dir);
  return (fs::path(g.out_dir) / (name + "." + ext)).string();
}

std::string default_format(int dim) { return dim == 2 ? "svg" : "off"; }

template <int D>
void write_artifact(const ScenarioReport<D>& rep, const Globals& g, const std::string& format) {
  if (format == "json") {
    write_text_file(out_path(g, rep.name, "report.json"), report_to_json(rep).dump(2) + "\n");
    return;
  }
  if constexpr (D == 2) {
    if (format != "svg") throw ValidationError("--format", "2D scenes export svg or json");
    write_text_file(out_path(g, rep.name, "svg"), render_svg(*rep.arrangement, *rep.section_set, *rep.recon2d));
  } else {
    if (format != "off" && format != "obj") throw ValidationError("--format", "3D scenes export off, obj or json");
    const Mesh3D mesh = extract_mesh_3d(*rep.arrangement, *rep.section_set, *rep.grid, *rep.labels);
    std::ostringstream s;
    if (format == "off") write_off(mesh, s);
    else write_obj(mesh, s);
    write_text_file(out_path(g, rep.name, format), s.str());
  }
}

int cmd_reconstruct(const std::string& path, const Globals& g) {
  return std::visit(
      [&](const auto& scene) {
        constexpr int D = std::decay_t<decltype(scene)>::dim;
        const auto rep = run_scenario(scene, run_options(g));
        write_artifact(rep, g, "json");
        const std::string fmt = g.format.empty() ? default_format(D) : g.format;
        if (fmt != "json") write_artifact(rep, g, fmt);
        std::cout << rep.name << ": " << to_string(rep.verdict) << " (beta0 " << rep.topo_r.beta0 << ", beta1 "
                  << rep.topo_r.beta1;
        if constexpr (D == 3) std::cout << ", beta2 " << rep.topo_r.beta2;
        std::cout << ")\n";
        return rep.verdict == Verdict::Mismatch ? 1 : 0;
      },
      load_with_overrides(path, g));
}

int cmd_check(const std::string& path, const Globals& g, const std::string& require) {
  return std::visit(
      [&](const auto& scene) {
        RunOptions opt = run_options(g);
        opt.check_stability = false;
        const auto rep = run_scenario(scene, opt);
        const json j = report_to_json(rep);
        std::cout << j["conditions"].dump(2) << "\n";
        const auto& c = rep.conditions;
        bool pass = c.evaluable && c.separation.pass && c.boundary_cut_pass;
        pass = pass && (require == "c2" ? c.all_c2() : c.all_c1());
        std::cerr << rep.name << ": " << require << " " << (pass ? "pass" : "fail") << "\n";
        return pass ? 0 : 1;
      },
      load_with_overrides(path, g));
}

int cmd_topology(const std::string& path, const Globals& g) {
  return std::visit(
      [&](const auto& scene) {
        RunOptions opt = run_options(g);
        const auto rep = run_scenario(scene, opt);
        std::cout << report_to_json(rep)["topology"].dump(2) << "\n";
        return 0;
      },
      load_with_overrides(path, g));
}

int cmd_render(const std::string& path, const Globals& g) {
  return std::visit(
      [&](const auto& scene) {
        constexpr int D = std::decay_t<decltype(scene)>::dim;
        RunOptions opt = run_options(g);
        opt.check_stability = false;
        const auto rep = run_scenario(scene, opt);
        write_artifact(rep, g, g.format.empty() ? default_format(D) : g.format);
        return 0;
      },
      load_with_overrides(path, g));
}

int cmd_sweep(const std::string& path, const Globals& g, bool serial, const std::string& csv) {
  SweepConfig cfg = parse_sweep_config(read_json(path));
  if (g.seed) cfg.seed = *g.seed;
  if (g.grid) cfg.voxel = *g.grid;
  cfg.timings = g.timings;
  if (!g.format.empty() && g.format != "csv") throw ValidationError("--format", "sweep writes csv");
  const auto rows = serial ? run_sweep_serial(cfg) : run_sweep_parallel(cfg);
  std::ostringstream s;
  write_csv(sweep_table(rows), s);
  if (csv.empty()) {
    std::cout << s.str();
  } else {
    fs::path p(csv);
    if (p.is_relative()) p = fs::path(g.out_dir) / p;
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    write_text_file(p.string(), s.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconstruct shapes from planar cross-sections"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for random plane generators and sweeps");
  app.add_option("--grid", g.grid, "Voxel size of the classification grid")->check(CLI::PositiveNumber);
  app.add_option("--tol", g.tol, "Relative geometric tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out-dir", g.out_dir, "Directory for written artifacts");
  app.add_option("--format", g.format, "Export format")->check(CLI::IsMember({"svg", "off", "obj", "json", "csv"}));
  app.add_flag("--timings", g.timings, "Record wall-clock timings in reports");

  std::string scene_path, require = "c1", csv;
  bool serial = false;
  auto* rec = app.add_subcommand("reconstruct", "Run the full pipeline and write a report plus a drawing or mesh");
  rec->add_option("scene", scene_path, "Scene JSON")->required();
  auto* chk = app.add_subcommand("check", "Evaluate the sampling conditions; exit 1 when they fail");
  chk->add_option("scene", scene_path, "Scene JSON")->required();
  chk->add_option("--require", require, "Condition that must hold in every cell")->check(CLI::IsMember({"c1", "c2"}));
  auto* top = app.add_subcommand("topology", "Print Betti numbers of the reconstruction and the ground truth");
  top->add_option("scene", scene_path, "Scene JSON")->required();
  auto* ren = app.add_subcommand("render", "Write only the drawing (2D) or mesh (3D)");
  ren->add_option("scene", scene_path, "Scene JSON")->required();
  auto* swp = app.add_subcommand("sweep", "Monte-Carlo sweep over plane spacing");
  swp->add_option("config", scene_path, "Sweep config JSON")->required();
  swp->add_option("--csv", csv, "CSV output path (default: stdout)");
  swp->add_flag("--serial", serial, "Use the serial reference loop");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*rec) return cmd_reconstruct(scene_path, g);
    if (*chk) return cmd_check(scene_path, g, require);
    if (*top) return cmd_topology(scene_path, g);
    if (*ren) return cmd_render(scene_path, g);
    if (*swp) return cmd_sweep(scene_path, g, serial, csv);
  } catch (const GeneralPositionViolation& e) {
    std::cerr << "general position violated: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
