#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "xsect/arrangement.hpp"
#include "xsect/sections.hpp"
#include "xsect/shapes.hpp"

namespace xsect {

enum class ReconstructionMode { Standard, ConvexBodies };

/// A fully expanded scene: plane generators have been turned into planes and
/// explicit sections (if any) into a SectionSet.
template <int D>
struct SceneData {
  static constexpr int dim = D;
  std::string name;
  Box<D> bbox;
  std::vector<Hyperplane<D>> planes;
  std::optional<Shape<D>> shape;
  std::optional<SectionSet<D>> explicit_sections;
  Tolerance tol;
  double voxel = 0.05;
  double chordal_tol = 0.0;  ///< 0 selects reach/100
  ReconstructionMode mode = ReconstructionMode::Standard;
  std::optional<double> reach_lower_bound;
  std::uint64_t seed = 0;
};

using AnyScene = std::variant<SceneData<2>, SceneData<3>>;

/// Parse a scene document. Throws ValidationError naming the offending field.
AnyScene parse_scene(const nlohmann::json& doc);
/// Read and parse a scene file; JSON syntax errors carry line/column.
AnyScene load_scene(const std::string& path);

/// Serialize a scene (planes written explicitly; the shape or the explicit
/// sections with their stored frames).
template <int D>
nlohmann::json scene_to_json(const SceneData<D>& scene);

/// Deterministic plane generators, also used by the scene format.
template <int D>
std::vector<Hyperplane<D>> parallel_planes(const Vec<D>& normal, double spacing, int count, double start);
/// `count` planes with uniformly random unit normals whose offsets fall in
/// the box's extent along that normal.
template <int D>
std::vector<Hyperplane<D>> random_planes(int count, std::uint64_t seed, const Box<D>& box);

}  // namespace xsect
