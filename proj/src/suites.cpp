#include "xsect/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace xsect {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(eng_() >> 11) * 0x1.0p-53); }
  int integer(int lo, int hi) { return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::mt19937_64 eng_;
};

std::uint64_t mix(std::uint64_t seed, int index, int attempt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) * 1000003ULL +
                                                    static_cast<std::uint64_t>(attempt) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform random rotation (unit quaternion); the rows are an orthonormal frame.
std::array<Vec3, 3> random_frame(Rng& rng) {
  const double u1 = rng.uniform(0, 1), u2 = rng.uniform(0, 2 * M_PI), u3 = rng.uniform(0, 2 * M_PI);
  const double a = std::sqrt(1 - u1) * std::sin(u2), b = std::sqrt(1 - u1) * std::cos(u2);
  const double c = std::sqrt(u1) * std::sin(u3), w = std::sqrt(u1) * std::cos(u3);
  return {Vec3{1 - 2 * (b * b + c * c), 2 * (a * b - c * w), 2 * (a * c + b * w)},
          Vec3{2 * (a * b + c * w), 1 - 2 * (a * a + c * c), 2 * (b * c - a * w)},
          Vec3{2 * (a * c - b * w), 2 * (b * c + a * w), 1 - 2 * (a * a + b * b)}};
}

template <int D>
Vec<D> random_unit(Rng& rng) {
  Vec<D> v;
  do {
    for (int k = 0; k < D; ++k) v[k] = rng.uniform(-1, 1);
  } while (norm(v) < 0.1 || norm(v) > 1.0);
  return normalized(v);
}

// Support of the box along n, relative to n . center.
template <int D>
double half_extent(const Box<D>& b, const Vec<D>& n) {
  double e = 0;
  for (int k = 0; k < D; ++k) e += 0.5 * std::abs(n[k]) * (b.hi[k] - b.lo[k]);
  return e;
}

template <int D>
Vec<D> box_center(const Box<D>& b) {
  Vec<D> c;
  for (int k = 0; k < D; ++k) c[k] = 0.5 * (b.lo[k] + b.hi[k]);
  return c;
}

// Parallel planes with normal n, spacing s and a random phase, each offset
// jittered by up to jitter * s, covering the span [lo, hi] along n with one
// extra plane on each side; planes missing the bounding box are dropped.
template <int D>
void add_family(std::vector<Hyperplane<D>>& planes, const Vec<D>& n, double lo, double hi, double s, double jitter,
                const Box<D>& box, Rng& rng) {
  const double c = dot(n, box_center(box)), e = half_extent(box, n);
  const double phase = rng.uniform(0, s);
  const int k0 = static_cast<int>(std::floor((lo - s - phase) / s));
  const int k1 = static_cast<int>(std::ceil((hi + s - phase) / s));
  for (int k = k0; k <= k1; ++k) {
    const double o = phase + k * s + rng.uniform(-jitter, jitter) * s;
    if (std::abs(o - c) < e - 1e-3 * s) planes.push_back(Hyperplane<D>(n, o));
  }
}

template <int D>
Box<D> padded(const Box<D>& b, double pad) {
  Box<D> out = b;
  for (int k = 0; k < D; ++k) {
    out.lo[k] -= pad;
    out.hi[k] += pad;
  }
  return out;
}

// Extent of the shape along n, using the bounds of each component.
template <int D>
std::pair<double, double> span_along(const Shape<D>& shape, const Vec<D>& n) {
  const Box<D> b = shape.bounds();
  const double c = dot(n, box_center(b)), e = half_extent(b, n);
  return {c - e, c + e};
}

template <int D>
SceneData<D> finish(std::string name, Shape<D> shape, const Box<D>& box, std::vector<Hyperplane<D>> planes,
                    double voxel, std::uint64_t seed) {
  SceneData<D> sc;
  sc.name = std::move(name);
  sc.bbox = box;
  sc.planes = std::move(planes);
  sc.shape.emplace(std::move(shape));
  sc.tol = Tolerance::scaled(box.diameter());
  sc.voxel = voxel;
  sc.seed = seed;
  return sc;
}

// Non-overlapping placement by rejection; returns false when it gives up.
template <int D, class Make>
bool place(std::vector<Primitive<D>>& out, int count, double clearance, const Box<D>& region, Rng& rng,
           Make&& make) {
  for (int i = 0; i < count; ++i) {
    bool placed = false;
    for (int tries = 0; tries < 100 && !placed; ++tries) {
      Primitive<D> p = make(rng);
      const Box<D> pb = p.bounds();
      bool inside = true;
      for (int k = 0; k < D; ++k) inside = inside && pb.lo[k] >= region.lo[k] && pb.hi[k] <= region.hi[k];
      if (!inside) continue;
      bool clear = true;
      for (const auto& q : out) {
        Shape<D> pair;
        try {
          pair = Shape<D>(std::vector<Primitive<D>>{p, q});
        } catch (const ValidationError&) {
          clear = false;
          break;
        }
        if (pair.min_clearance() < clearance) {
          clear = false;
          break;
        }
      }
      if (clear) {
        out.push_back(p);
        placed = true;
      }
    }
    if (!placed) return false;
  }
  return true;
}

SceneData<2> candidate_2d(int index, std::uint64_t seed) {
  Rng rng(seed);
  const int count = 1 + index % 3;
  const double scale = count == 3 ? 0.75 : 1.0;
  const Box<2> region{{-1.5, -1.5}, {1.5, 1.5}};
  std::vector<Primitive<2>> comps;
  auto make = [&](Rng& r) {
    if (r.uniform(0, 1) < 0.5) {
      const double rad = scale * r.uniform(0.3, 0.55);
      return make_disk({r.uniform(-1.2, 1.2), r.uniform(-1.2, 1.2)}, rad);
    }
    const double r_out = scale * r.uniform(0.55, 0.75);
    const double t = scale * r.uniform(0.28, 0.4);
    return make_annulus({r.uniform(-1.1, 1.1), r.uniform(-1.1, 1.1)}, r_out - t, r_out);
  };
  if (!place<2>(comps, count, 0.35 * scale, region, rng, make)) throw GeometryError("placement failed");
  Shape<2> shape(comps);
  const double reach = shape.reach();
  const Box<2> box = padded(shape.bounds(), 0.3);
  std::vector<Hyperplane<2>> lines;
  const double theta = rng.uniform(0, M_PI);
  const double theta2 = theta + 0.5 * M_PI + rng.uniform(-0.25, 0.25);
  for (double th : {theta, theta2}) {
    const Vec2 n{std::cos(th), std::sin(th)};
    const auto [lo, hi] = span_along(shape, n);
    add_family<2>(lines, n, lo, hi, rng.uniform(0.9, 1.6) * reach, 0.12, box, rng);
  }
  return finish<2>("suite2d_" + std::to_string(index), std::move(shape), box, std::move(lines), 0.04, seed);
}

SceneData<3> candidate_density(int index, std::uint64_t seed) {
  Rng rng(seed);
  const int count = 1 + index % 2;
  const Box<3> region{{-1.6, -1.6, -1.6}, {1.6, 1.6, 1.6}};
  std::vector<Primitive<3>> comps;
  const int first_kind = index % 3;
  int made = 0;
  auto make = [&](Rng& r) {
    const int kind = (first_kind + made++) % 3;
    const double sc = count == 2 ? 0.8 : 1.0;
    const Vec3 c{r.uniform(-0.8, 0.8), r.uniform(-0.8, 0.8), r.uniform(-0.8, 0.8)};
    if (kind == 0) return make_ball(c, sc * r.uniform(0.5, 0.8));
    if (kind == 1) return make_torus(c, random_unit<3>(r), sc * r.uniform(0.55, 0.75), sc * r.uniform(0.26, 0.34));
    const Vec3 d = random_unit<3>(r) * (0.5 * sc * r.uniform(0.5, 1.1));
    return make_capsule(c - d, c + d, sc * r.uniform(0.3, 0.42));
  };
  if (!place<3>(comps, count, 0.4, region, rng, make)) throw GeometryError("placement failed");
  Shape<3> shape(comps);
  const double reach = shape.reach();
  const auto frame = random_frame(rng);
  const double s = rng.uniform(0.9, 1.35) * reach;
  const Box<3> box = padded(shape.bounds(), std::max(0.25, 0.6 * s));
  std::vector<Hyperplane<3>> planes;
  for (const auto& axis : frame) {
    const Vec3 n = normalized(axis + random_unit<3>(rng) * 0.08);
    const auto [lo, hi] = span_along(shape, n);
    add_family<3>(planes, n, lo, hi, s * rng.uniform(0.95, 1.05), 0.1, box, rng);
  }
  return finish<3>("suite_density_" + std::to_string(index), std::move(shape), box, std::move(planes),
                   std::min(0.05, reach / 6), seed);
}

// Lattice around one ball of radius r centered at offset c along n: planes at
// c + k s for |k| <= 3, then one plane just outside on each side.
void ball_lattice(std::vector<double>& offs, double c, double r, double s, Rng& rng) {
  for (int k = -3; k <= 3; ++k) offs.push_back(c + k * s);
  const double out = r + rng.uniform(0.08, 0.3) * r;
  offs.push_back(c - out);
  offs.push_back(c + out);
}

SceneData<3> candidate_transversal(int index, std::uint64_t seed) {
  Rng rng(seed);
  const auto frame = random_frame(rng);
  const double r = rng.uniform(0.7, 1.1);
  const Vec3 c0{rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2)};
  // Spacing keeps the outermost lattice planes inside sin(alpha) <= 3s/r
  // while the empty corner cells stay outside the ball (3 sqrt(3) s > r).
  const double s = r * rng.uniform(0.198, 0.235);
  const int kind = index % 5;  // 0,1: ball; 2,3: capsule; 4: two balls
  std::vector<Primitive<3>> comps;
  std::array<std::vector<double>, 3> offs;
  auto along = [&](const Vec3& p, int axis) { return dot(frame[static_cast<std::size_t>(axis)], p); };
  if (kind <= 1) {
    comps.push_back(make_ball(c0, r));
    for (int a = 0; a < 3; ++a) ball_lattice(offs[static_cast<std::size_t>(a)], along(c0, a), r, s, rng);
  } else if (kind <= 3) {
    const int steps = rng.integer(2, 5);
    const Vec3 half = frame[2] * (0.5 * steps * s);
    comps.push_back(make_capsule(c0 - half, c0 + half, r));
    for (int a = 0; a < 2; ++a) ball_lattice(offs[static_cast<std::size_t>(a)], along(c0, a), r, s, rng);
    const double mid = along(c0, 2), hl = 0.5 * steps * s;
    // Cap lattices centered at the segment ends; they meet on the shared middle planes.
    for (int k = -3; k <= 3; ++k) {
      offs[2].push_back(mid - hl + k * s);
      offs[2].push_back(mid + hl + k * s);
    }
    const double out = r + rng.uniform(0.08, 0.3) * r;
    offs[2].push_back(mid - hl - out);
    offs[2].push_back(mid + hl + out);
  } else {
    const double gap = r * rng.uniform(2.2, 2.6);
    const Vec3 d = frame[0] * (r + 0.5 * gap);
    comps.push_back(make_ball(c0 - d, r));
    comps.push_back(make_ball(c0 + d, r));
    for (const auto& p : comps)
      for (int a = 0; a < 3; ++a) ball_lattice(offs[static_cast<std::size_t>(a)], along(p.center, a), r, s, rng);
    // The bisector between the balls is external medial axis, so the gap
    // cells are not vacuous; subdivide the gap.
    std::vector<double> x = offs[0];
    std::sort(x.begin(), x.end());
    const double a0 = along(c0, 0);
    double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    for (double v : x) {
      if (v < a0) lo = std::max(lo, v);
      else hi = std::min(hi, v);
    }
    const int parts = static_cast<int>(std::ceil((hi - lo) / (0.4 * r)));
    for (int k = 1; k < parts; ++k) offs[0].push_back(lo + (hi - lo) * k / parts);
  }
  Shape<3> shape(comps);
  const Box<3> box = padded(shape.bounds(), 0.5 * r);
  std::vector<Hyperplane<3>> planes;
  for (int a = 0; a < 3; ++a) {
    auto& o = offs[static_cast<std::size_t>(a)];
    std::sort(o.begin(), o.end());
    o.erase(std::unique(o.begin(), o.end(), [](double x, double y) { return std::abs(x - y) < 1e-9; }), o.end());
    for (double v : o) planes.push_back(Hyperplane<3>(frame[static_cast<std::size_t>(a)], v));
  }
  return finish<3>("suite_transversal_" + std::to_string(index), std::move(shape), box, std::move(planes),
                   shape.reach() / 8, seed);
}

SceneData<3> candidate_convex(int index, std::uint64_t seed) {
  Rng rng(seed);
  const int count = 2 + index % 3;
  const Box<3> region{{-1.5, -1.5, -1.5}, {1.5, 1.5, 1.5}};
  std::vector<Primitive<3>> comps;
  auto make = [&](Rng& r) {
    return make_ball({r.uniform(-1.1, 1.1), r.uniform(-1.1, 1.1), r.uniform(-1.1, 1.1)}, r.uniform(0.35, 0.55));
  };
  if (!place<3>(comps, count, 0.5, region, rng, make)) throw GeometryError("placement failed");
  Shape<3> shape(comps);
  const double reach = shape.reach();
  const auto frame = random_frame(rng);
  const double s = rng.uniform(0.9, 1.3) * reach;
  const Box<3> box = padded(shape.bounds(), std::max(0.25, 0.6 * s));
  std::vector<Hyperplane<3>> planes;
  for (const auto& axis : frame) {
    const auto [lo, hi] = span_along(shape, axis);
    add_family<3>(planes, axis, lo, hi, s, 0.1, box, rng);
  }
  SceneData<3> sc = finish<3>("suite_convex_" + std::to_string(index), std::move(shape), box, std::move(planes),
                              std::min(0.05, reach / 6), seed);
  sc.mode = ReconstructionMode::ConvexBodies;
  return sc;
}

template <int D, class Candidate>
SceneData<D> first_passing(int index, std::uint64_t seed, bool need_c2, Candidate&& candidate) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    SceneData<D> sc;
    try {
      sc = candidate(index, mix(seed, index, attempt));
    } catch (const Error&) {
      continue;
    }
    if (scene_passes_filter(sc, need_c2)) return sc;
  }
  throw GeometryError("no scene passed the filter for index " + std::to_string(index));
}

}  // namespace

template <int D>
bool scene_passes_filter(const SceneData<D>& scene, bool need_transversality, const ConditionOptions& opt) {
  try {
    const Arrangement<D> arr(scene.planes, scene.bbox, scene.tol);
    const double chordal = scene.chordal_tol > 0 ? scene.chordal_tol : scene.shape->reach() / 100.0;
    const SectionSet<D> sections = slice(*scene.shape, scene.planes, chordal, scene.tol);
    const ConditionReport<D> rep = evaluate_conditions(&*scene.shape, arr, sections, opt);
    return need_transversality ? rep.all_c2() : rep.all_c1();
  } catch (const GeneralPositionViolation&) {
    return false;
  }
}

SceneData<2> make_suite_2d_scene(int index, std::uint64_t seed) {
  return first_passing<2>(index, seed, false, candidate_2d);
}

SceneData<3> make_suite_density_scene(int index, std::uint64_t seed) {
  return first_passing<3>(index, seed, false, candidate_density);
}

SceneData<3> make_suite_transversal_scene(int index, std::uint64_t seed) {
  return first_passing<3>(index, seed, true, candidate_transversal);
}

SceneData<3> make_suite_convex_scene(int index, std::uint64_t seed) {
  return first_passing<3>(index, seed, false, candidate_convex);
}

template bool scene_passes_filter(const SceneData<2>&, bool, const ConditionOptions&);
template bool scene_passes_filter(const SceneData<3>&, bool, const ConditionOptions&);

}  // namespace xsect
