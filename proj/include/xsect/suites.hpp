#pragma once

#include <cstdint>

#include "xsect/conditions.hpp"
#include "xsect/scene.hpp"

namespace xsect {

/// Seeded random scene families used by the acceptance suites and the
/// benchmarks. Every generator retries with derived seeds until the scene
/// passes its condition filter and throws GeometryError after `kMaxAttempts`.
inline constexpr int kMaxAttempts = 200;

/// 1 to 3 disjoint disks or annuli cut by two jittered, rotated line
/// families; accepted when every cell passes the density check.
SceneData<2> make_suite_2d_scene(int index, std::uint64_t seed);

/// 1 or 2 disjoint balls, solid tori or capsules cut by three jittered,
/// rotated plane families; accepted when every cell passes the density check.
SceneData<3> make_suite_density_scene(int index, std::uint64_t seed);

/// A ball, a capsule or two balls with plane lattices laid out so that every
/// cell passes the transversality check; accepted on that check.
SceneData<3> make_suite_transversal_scene(int index, std::uint64_t seed);

/// 2 to 4 disjoint balls for the convex-bodies mode, density-filtered.
SceneData<3> make_suite_convex_scene(int index, std::uint64_t seed);

/// Slices the scene and evaluates the per-cell conditions. False on a
/// general-position violation or when some cell does not pass the density
/// check (or the transversality check when `need_transversality`).
template <int D>
bool scene_passes_filter(const SceneData<D>& scene, bool need_transversality, const ConditionOptions& opt = {});

}  // namespace xsect
