#include "xsect/scene.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace xsect {

using nlohmann::json;

namespace {

// Portable uniform double in [0, 1) from a 64-bit engine.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double gaussian(std::mt19937_64& rng) {
  const double u1 = 1.0 - unit(rng), u2 = unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where + "." + key, "missing required field");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ValidationError(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError(where, "must be finite");
  return x;
}

double positive(const json& v, const std::string& where) {
  const double x = number(v, where);
  if (!(x > 0)) throw ValidationError(where, "must be positive");
  return x;
}

int count_of(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw ValidationError(where, "expected a non-negative integer");
  return v.get<int>();
}

template <int D>
Vec<D> vec(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != static_cast<std::size_t>(D))
    throw ValidationError(where, "expected an array of " + std::to_string(D) + " numbers");
  Vec<D> out;
  for (int i = 0; i < D; ++i) out[i] = number(v[static_cast<std::size_t>(i)], where + "[" + std::to_string(i) + "]");
  return out;
}

template <int D>
json vec_json(const Vec<D>& v) {
  json a = json::array();
  for (int i = 0; i < D; ++i) a.push_back(v[i]);
  return a;
}

template <int D>
Hyperplane<D> plane_from(const json& v, const std::string& where) {
  const Vec<D> n = vec<D>(field(v, "normal", where), where + ".normal");
  if (norm(n) < 1e-12) throw ValidationError(where + ".normal", "normal must be non-zero");
  return Hyperplane<D>(n, number(field(v, "offset", where), where + ".offset"));
}

Loop loop_from(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() < 3) throw ValidationError(where, "a loop needs at least 3 points");
  Loop l;
  for (std::size_t i = 0; i < v.size(); ++i) l.push_back(vec<2>(v[i], where + "[" + std::to_string(i) + "]"));
  if (std::abs(signed_area(l)) < 1e-300) throw ValidationError(where, "loop has zero area");
  return l;
}

json loop_json(const Loop& l) {
  json a = json::array();
  for (const auto& p : l) a.push_back(vec_json<2>(p));
  return a;
}

Primitive<3> primitive3(const json& c, const std::string& where) {
  const std::string type = field(c, "type", where).get<std::string>();
  if (type == "ball")
    return make_ball(vec<3>(field(c, "center", where), where + ".center"), positive(field(c, "radius", where), where + ".radius"));
  if (type == "torus")
    return make_torus(vec<3>(field(c, "center", where), where + ".center"), vec<3>(field(c, "axis", where), where + ".axis"),
                      positive(field(c, "major", where), where + ".major"),
                      positive(field(c, "minor", where), where + ".minor"));
  if (type == "capsule")
    return make_capsule(vec<3>(field(c, "p", where), where + ".p"), vec<3>(field(c, "q", where), where + ".q"),
                        positive(field(c, "radius", where), where + ".radius"));
  if (type == "tube") {
    const json& core = field(c, "core", where);
    if (!core.is_array() || core.size() < 2) throw ValidationError(where + ".core", "a tube core needs at least 2 points");
    std::vector<Vec3> pts;
    for (std::size_t i = 0; i < core.size(); ++i) pts.push_back(vec<3>(core[i], where + ".core[" + std::to_string(i) + "]"));
    return make_tube(pts, positive(field(c, "radius", where), where + ".radius"),
                     positive(field(c, "fillet", where), where + ".fillet"));
  }
  throw ValidationError(where + ".type", "unknown 3D primitive '" + type + "'");
}

Primitive<2> primitive2(const json& c, const std::string& where) {
  const std::string type = field(c, "type", where).get<std::string>();
  if (type == "disk")
    return make_disk(vec<2>(field(c, "center", where), where + ".center"), positive(field(c, "radius", where), where + ".radius"));
  if (type == "annulus")
    return make_annulus(vec<2>(field(c, "center", where), where + ".center"),
                        positive(field(c, "r_in", where), where + ".r_in"),
                        positive(field(c, "r_out", where), where + ".r_out"));
  throw ValidationError(where + ".type", "unknown 2D primitive '" + type + "'");
}

json primitive_json(const Primitive<3>& p) {
  switch (p.kind) {
    case PrimitiveKind::Ball: return {{"type", "ball"}, {"center", vec_json<3>(p.center)}, {"radius", p.radius}};
    case PrimitiveKind::SolidTorus:
      return {{"type", "torus"}, {"center", vec_json<3>(p.center)}, {"axis", vec_json<3>(p.axis)},
              {"major", p.major}, {"minor", p.radius}};
    case PrimitiveKind::Capsule:
      return {{"type", "capsule"}, {"p", vec_json<3>(p.polyline.at(0))}, {"q", vec_json<3>(p.polyline.at(1))},
              {"radius", p.radius}};
    case PrimitiveKind::Tube: {
      json core = json::array();
      for (const auto& v : p.polyline) core.push_back(vec_json<3>(v));
      return {{"type", "tube"}, {"core", core}, {"radius", p.radius}, {"fillet", p.fillet}};
    }
    default: break;
  }
  throw GeometryError("primitive_json: not a 3D primitive");
}

json primitive_json(const Primitive<2>& p) {
  if (p.kind == PrimitiveKind::Disk2D) return {{"type", "disk"}, {"center", vec_json<2>(p.center)}, {"radius", p.radius}};
  if (p.kind == PrimitiveKind::Annulus2D)
    return {{"type", "annulus"}, {"center", vec_json<2>(p.center)}, {"r_in", p.major - p.radius},
            {"r_out", p.major + p.radius}};
  throw GeometryError("primitive_json: not a 2D primitive");
}

PlaneFrame<3> frame_from(const json& v, const Hyperplane<3>&, const std::string& where) {
  PlaneFrame<3> f;
  f.origin = vec<3>(field(v, "origin", where), where + ".origin");
  f.u = vec<3>(field(v, "u", where), where + ".u");
  f.v = vec<3>(field(v, "v", where), where + ".v");
  return f;
}

PlaneFrame<2> frame_from(const json& v, const Hyperplane<2>&, const std::string& where) {
  PlaneFrame<2> f;
  f.origin = vec<2>(field(v, "origin", where), where + ".origin");
  f.dir = vec<2>(field(v, "dir", where), where + ".dir");
  return f;
}

json frame_json(const PlaneFrame<3>& f) {
  return {{"origin", vec_json<3>(f.origin)}, {"u", vec_json<3>(f.u)}, {"v", vec_json<3>(f.v)}};
}
json frame_json(const PlaneFrame<2>& f) { return {{"origin", vec_json<2>(f.origin)}, {"dir", vec_json<2>(f.dir)}}; }

Interval region_from(const json& v, const std::string& where, std::integral_constant<int, 2>) {
  Interval iv{number(field(v, "lo", where), where + ".lo"), number(field(v, "hi", where), where + ".hi")};
  if (!(iv.lo < iv.hi)) throw ValidationError(where, "interval needs lo < hi");
  return iv;
}

PolygonWithHoles region_from(const json& v, const std::string& where, std::integral_constant<int, 3>) {
  PolygonWithHoles p;
  p.outer = loop_from(field(v, "outer", where), where + ".outer");
  if (auto it = v.find("holes"); it != v.end()) {
    if (!it->is_array()) throw ValidationError(where + ".holes", "expected an array of loops");
    for (std::size_t i = 0; i < it->size(); ++i)
      p.holes.push_back(loop_from((*it)[i], where + ".holes[" + std::to_string(i) + "]"));
  }
  return p;
}

json region_json(const Interval& iv) { return {{"lo", iv.lo}, {"hi", iv.hi}}; }
json region_json(const PolygonWithHoles& p) {
  json holes = json::array();
  for (const auto& h : p.holes) holes.push_back(loop_json(h));
  return {{"outer", loop_json(p.outer)}, {"holes", holes}};
}

template <int D>
std::vector<Hyperplane<D>> planes_from(const json& doc, const Box<D>& box, std::uint64_t scene_seed) {
  std::vector<Hyperplane<D>> planes;
  if (auto it = doc.find("planes"); it != doc.end()) {
    if (!it->is_array()) throw ValidationError("planes", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) planes.push_back(plane_from<D>((*it)[i], "planes[" + std::to_string(i) + "]"));
  }
  if (auto it = doc.find("plane_generators"); it != doc.end()) {
    if (!it->is_array()) throw ValidationError("plane_generators", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& g = (*it)[i];
      const std::string where = "plane_generators[" + std::to_string(i) + "]";
      const std::string type = field(g, "type", where).get<std::string>();
      std::vector<Hyperplane<D>> more;
      if (type == "parallel") {
        more = parallel_planes<D>(vec<D>(field(g, "normal", where), where + ".normal"),
                                  positive(field(g, "spacing", where), where + ".spacing"),
                                  count_of(field(g, "count", where), where + ".count"),
                                  number(field(g, "start", where), where + ".start"));
      } else if (type == "random") {
        std::uint64_t seed = scene_seed;
        if (auto sd = g.find("seed"); sd != g.end()) {
          if (!sd->is_number_integer()) throw ValidationError(where + ".seed", "expected an integer");
          seed = sd->get<std::uint64_t>();
        }
        more = random_planes<D>(count_of(field(g, "count", where), where + ".count"), seed, box);
      } else if (type == "serial") {
        const Vec<D> n = vec<D>(field(g, "normal", where), where + ".normal");
        const json& offs = field(g, "offsets", where);
        if (!offs.is_array()) throw ValidationError(where + ".offsets", "expected an array");
        for (std::size_t k = 0; k < offs.size(); ++k)
          more.push_back(Hyperplane<D>(n, number(offs[k], where + ".offsets[" + std::to_string(k) + "]") * norm(n)));
      } else {
        throw ValidationError(where + ".type", "unknown generator '" + type + "' (parallel, random, serial)");
      }
      planes.insert(planes.end(), more.begin(), more.end());
    }
  }
  return planes;
}

template <int D>
SceneData<D> parse_dim(const json& doc) {
  SceneData<D> s;
  s.name = doc.value("name", std::string("scene"));
  const json& bbox = field(doc, "bbox", "scene");
  s.bbox.lo = vec<D>(field(bbox, "lo", "bbox"), "bbox.lo");
  s.bbox.hi = vec<D>(field(bbox, "hi", "bbox"), "bbox.hi");
  for (int k = 0; k < D; ++k)
    if (!(s.bbox.hi[k] > s.bbox.lo[k])) throw ValidationError("bbox", "hi must exceed lo on every axis");
  double rel = 1e-9, angle = 1e-9;
  if (auto it = doc.find("tolerance"); it != doc.end()) {
    if (auto r = it->find("rel_geom"); r != it->end()) rel = positive(*r, "tolerance.rel_geom");
    if (auto a = it->find("eps_angle"); a != it->end()) angle = positive(*a, "tolerance.eps_angle");
  }
  s.tol = Tolerance::scaled(s.bbox.diameter(), rel, angle);
  if (auto it = doc.find("grid"); it != doc.end()) s.voxel = positive(field(*it, "voxel", "grid"), "grid.voxel");
  if (auto it = doc.find("chordal_tol"); it != doc.end()) s.chordal_tol = positive(*it, "chordal_tol");
  if (auto it = doc.find("reach_lower_bound"); it != doc.end()) s.reach_lower_bound = positive(*it, "reach_lower_bound");
  if (auto it = doc.find("seed"); it != doc.end()) {
    if (!it->is_number_integer()) throw ValidationError("seed", "expected an integer");
    s.seed = it->get<std::uint64_t>();
  }
  const std::string mode = doc.value("mode", std::string("standard"));
  if (mode == "standard") s.mode = ReconstructionMode::Standard;
  else if (mode == "convex") s.mode = ReconstructionMode::ConvexBodies;
  else throw ValidationError("mode", "expected 'standard' or 'convex'");

  s.planes = planes_from<D>(doc, s.bbox, s.seed);

  const bool has_shape = doc.contains("shape"), has_sections = doc.contains("sections");
  if (has_shape == has_sections) throw ValidationError("scene", "exactly one of 'shape' and 'sections' is required");
  if (has_shape) {
    const json& comps = field(doc["shape"], "components", "shape");
    if (!comps.is_array()) throw ValidationError("shape.components", "expected an array");
    std::vector<Primitive<D>> prims;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const std::string where = "shape.components[" + std::to_string(i) + "]";
      if constexpr (D == 3) prims.push_back(primitive3(comps[i], where));
      else prims.push_back(primitive2(comps[i], where));
    }
    try {
      s.shape.emplace(std::move(prims));
    } catch (const GeometryError& e) {
      throw ValidationError("shape", e.what());
    }
  } else {
    const json& secs = doc["sections"];
    if (!secs.is_array()) throw ValidationError("sections", "expected an array");
    std::vector<PlaneFrame<D>> frames;
    for (const auto& h : s.planes) frames.push_back(PlaneFrame<D>::canonical(h));
    std::vector<bool> framed(s.planes.size(), false);
    for (std::size_t i = 0; i < secs.size(); ++i) {
      const std::string where = "sections[" + std::to_string(i) + "]";
      const int p = count_of(field(secs[i], "plane", where), where + ".plane");
      if (p >= static_cast<int>(s.planes.size())) throw ValidationError(where + ".plane", "plane index out of range");
      frames[static_cast<std::size_t>(p)] = frame_from(field(secs[i], "frame", where), s.planes[static_cast<std::size_t>(p)], where + ".frame");
      framed[static_cast<std::size_t>(p)] = true;
    }
    try {
      s.explicit_sections.emplace(s.planes, frames);
    } catch (const Error& e) {
      throw ValidationError("sections", e.what());
    }
    for (std::size_t i = 0; i < secs.size(); ++i) {
      const std::string where = "sections[" + std::to_string(i) + "]";
      const int p = secs[i]["plane"].get<int>();
      const json& regions = field(secs[i], "regions", where);
      if (!regions.is_array()) throw ValidationError(where + ".regions", "expected an array");
      for (std::size_t r = 0; r < regions.size(); ++r)
        s.explicit_sections->add(p, region_from(regions[r], where + ".regions[" + std::to_string(r) + "]",
                                                std::integral_constant<int, D>{}));
    }
  }
  return s;
}

}  // namespace

template <int D>
std::vector<Hyperplane<D>> parallel_planes(const Vec<D>& normal, double spacing, int count, double start) {
  if (!(spacing > 0)) throw ValidationError("parallel", "spacing must be positive");
  const double len = norm(normal);
  if (len < 1e-12) throw ValidationError("parallel", "normal must be non-zero");
  std::vector<Hyperplane<D>> out;
  for (int k = 0; k < count; ++k) out.push_back(Hyperplane<D>(normal, (start + k * spacing) * len));
  return out;
}

template <int D>
std::vector<Hyperplane<D>> random_planes(int count, std::uint64_t seed, const Box<D>& box) {
  std::mt19937_64 rng(seed);
  std::vector<Hyperplane<D>> out;
  while (static_cast<int>(out.size()) < count) {
    Vec<D> n;
    for (int k = 0; k < D; ++k) n[k] = gaussian(rng);
    if (norm(n) < 1e-6) continue;
    n = normalized(n);
    double lo = 0, hi = 0;
    for (int k = 0; k < D; ++k) {
      const double a = n[k] * box.lo[k], b = n[k] * box.hi[k];
      lo += std::min(a, b);
      hi += std::max(a, b);
    }
    out.push_back(Hyperplane<D>(n, lo + (hi - lo) * unit(rng)));
  }
  return out;
}

AnyScene parse_scene(const json& doc) {
  if (!doc.is_object()) throw ValidationError("scene", "top level must be an object");
  const json& schema = field(doc, "schema", "scene");
  if (!schema.is_number_integer() || schema.get<int>() != 1) throw ValidationError("schema", "unsupported schema (expected 1)");
  const json& dim = field(doc, "dim", "scene");
  if (!dim.is_number_integer()) throw ValidationError("dim", "expected 2 or 3");
  try {
    if (dim.get<int>() == 2) return parse_dim<2>(doc);
    if (dim.get<int>() == 3) return parse_dim<3>(doc);
  } catch (const json::exception& e) {
    throw ValidationError("scene", std::string("type error: ") + e.what());
  }
  throw ValidationError("dim", "expected 2 or 3");
}

AnyScene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path, "cannot open scene file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path, std::string("malformed JSON: ") + e.what());
  }
  return parse_scene(doc);
}

template <int D>
json scene_to_json(const SceneData<D>& s) {
  json doc;
  doc["schema"] = 1;
  doc["dim"] = D;
  doc["name"] = s.name;
  doc["bbox"] = {{"lo", vec_json<D>(s.bbox.lo)}, {"hi", vec_json<D>(s.bbox.hi)}};
  doc["tolerance"] = {{"rel_geom", s.tol.eps_geom / s.bbox.diameter()}, {"eps_angle", s.tol.eps_angle}};
  doc["grid"] = {{"voxel", s.voxel}};
  if (s.chordal_tol > 0) doc["chordal_tol"] = s.chordal_tol;
  if (s.reach_lower_bound) doc["reach_lower_bound"] = *s.reach_lower_bound;
  doc["seed"] = s.seed;
  doc["mode"] = s.mode == ReconstructionMode::Standard ? "standard" : "convex";
  json planes = json::array();
  for (const auto& h : s.planes) planes.push_back({{"normal", vec_json<D>(h.normal)}, {"offset", h.offset}});
  doc["planes"] = planes;
  if (s.shape) {
    json comps = json::array();
    for (const auto& p : s.shape->components()) comps.push_back(primitive_json(p));
    doc["shape"] = {{"components", comps}};
  } else if (s.explicit_sections) {
    json secs = json::array();
    for (int p = 0; p < s.explicit_sections->plane_count(); ++p) {
      const auto& ps = s.explicit_sections->on_plane(p);
      if (ps.regions.empty()) continue;
      json regions = json::array();
      for (const auto& r : ps.regions) regions.push_back(region_json(r));
      secs.push_back({{"plane", p}, {"frame", frame_json(ps.frame)}, {"regions", regions}});
    }
    doc["sections"] = secs;
  }
  return doc;
}

template json scene_to_json(const SceneData<2>&);
template json scene_to_json(const SceneData<3>&);
template std::vector<Hyperplane<2>> parallel_planes(const Vec2&, double, int, double);
template std::vector<Hyperplane<3>> parallel_planes(const Vec3&, double, int, double);
template std::vector<Hyperplane<2>> random_planes(int, std::uint64_t, const Box<2>&);
template std::vector<Hyperplane<3>> random_planes(int, std::uint64_t, const Box<3>&);

}  // namespace xsect
