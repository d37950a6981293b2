#include "xsect/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>

#include "xsect/lifting.hpp"

namespace xsect {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string loop_path(const Loop& l) {
  std::string d;
  for (std::size_t i = 0; i < l.size(); ++i) d += (i == 0 ? "M " : " L ") + num(l[i][0]) + " " + num(l[i][1]);
  return d + " Z";
}

Loop approx_loop(const exact::LoopQ& l) {
  Loop out;
  for (const auto& p : l) out.push_back(p.approx());
  return out;
}

}  // namespace

std::string render_svg(const Arrangement<2>& arr, const SectionSet<2>& sections, const Reconstruction2D& recon) {
  const Box<2>& b = arr.bbox();
  const double w = b.hi[0] - b.lo[0], h = b.hi[1] - b.lo[1];
  const double stroke = 0.004 * std::max(w, h);
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(b.lo[0]) << " " << num(-b.hi[1]) << " " << num(w)
    << " " << num(h) << "\">\n";
  s << "<g transform=\"scale(1,-1)\">\n";
  for (const auto& poly : recon.global) {
    std::string d = loop_path(approx_loop(poly.outer));
    for (const auto& hole : poly.holes) d += " " + loop_path(approx_loop(hole));
    s << "<path data-role=\"region\" fill=\"#4caf50\" fill-opacity=\"0.6\" fill-rule=\"evenodd\" stroke=\"none\" d=\"" << d
      << "\"/>\n";
  }
  for (const auto& cell : arr.cells())
    for (std::size_t fi = 0; fi < cell.faces.size(); ++fi) {
      const auto& f = cell.faces[fi];
      s << "<path data-role=\"cell\" fill=\"none\" stroke=\"#888888\" stroke-width=\"" << num(stroke / 2) << "\" d=\"M "
        << num(f.vertices[0][0]) << " " << num(f.vertices[0][1]) << " L " << num(f.vertices[1][0]) << " "
        << num(f.vertices[1][1]) << "\"/>\n";
      try {
        const LiftedPolyline lp = lift_polyline(f.vertices[0], f.vertices[1], static_cast<int>(fi), cell, arr.tolerance());
        std::string d;
        for (std::size_t i = 0; i < lp.vertices.size(); ++i)
          d += (i == 0 ? "M " : " L ") + num(lp.vertices[i][0]) + " " + num(lp.vertices[i][1]);
        if (!d.empty())
          s << "<path data-role=\"skeleton\" fill=\"none\" stroke=\"#e53935\" stroke-width=\"" << num(stroke / 2)
            << "\" d=\"" << d << "\"/>\n";
      } catch (const Error&) {
        // Unbounded skeleton branch: nothing finite to draw.
      }
    }
  for (int p = 0; p < sections.plane_count(); ++p) {
    const auto& ps = sections.on_plane(p);
    for (const auto& iv : ps.regions) {
      const Vec2 a = ps.frame.to_world(iv.lo), c = ps.frame.to_world(iv.hi);
      s << "<path data-role=\"section\" fill=\"none\" stroke=\"#1e63d6\" stroke-width=\"" << num(stroke * 1.5)
        << "\" d=\"M " << num(a[0]) << " " << num(a[1]) << " L " << num(c[0]) << " " << num(c[1]) << "\"/>\n";
    }
  }
  s << "</g>\n</svg>\n";
  return s.str();
}

std::vector<std::vector<Loop>> read_svg_regions(const std::string& svg) {
  std::vector<std::vector<Loop>> out;
  const std::regex path_re("<path data-role=\"region\"[^>]*\\sd=\"([^\"]*)\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), path_re); it != std::sregex_iterator(); ++it) {
    std::istringstream d((*it)[1].str());
    std::vector<Loop> loops;
    std::string tok;
    while (d >> tok) {
      if (tok == "M") {
        loops.emplace_back();
      } else if (tok == "L") {
        continue;
      } else if (tok == "Z") {
        continue;
      } else {
        if (loops.empty()) throw ValidationError("svg", "path data must start with M");
        double x = std::stod(tok), y = 0;
        if (!(d >> tok)) throw ValidationError("svg", "odd number of coordinates");
        y = std::stod(tok);
        loops.back().push_back({x, y});
      }
    }
    out.push_back(std::move(loops));
  }
  return out;
}

void write_off(const Mesh3D& m, std::ostream& out) {
  out << "OFF\n" << m.vertices.size() << " " << m.triangles.size() << " 0\n";
  for (const auto& v : m.vertices) out << num(v[0]) << " " << num(v[1]) << " " << num(v[2]) << "\n";
  for (const auto& t : m.triangles) out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
}

Mesh3D read_off(std::istream& in) {
  std::string magic;
  in >> magic;
  if (magic != "OFF") throw ValidationError("off", "missing OFF header");
  std::size_t nv = 0, nf = 0, ne = 0;
  if (!(in >> nv >> nf >> ne)) throw ValidationError("off", "bad counts line");
  Mesh3D m;
  for (std::size_t i = 0; i < nv; ++i) {
    Vec3 v;
    if (!(in >> v[0] >> v[1] >> v[2])) throw ValidationError("off", "truncated vertex list");
    m.vertices.push_back(v);
  }
  for (std::size_t i = 0; i < nf; ++i) {
    int k = 0;
    std::array<int, 3> t{};
    if (!(in >> k) || k != 3 || !(in >> t[0] >> t[1] >> t[2])) throw ValidationError("off", "only triangles are supported");
    for (int idx : t)
      if (idx < 0 || static_cast<std::size_t>(idx) >= nv) throw ValidationError("off", "vertex index out of range");
    m.triangles.push_back(t);
    m.cell_tags.push_back(-1);
  }
  return m;
}

void write_obj(const Mesh3D& m, std::ostream& out) {
  for (const auto& v : m.vertices) out << "v " << num(v[0]) << " " << num(v[1]) << " " << num(v[2]) << "\n";
  int tag = -2;
  for (std::size_t i = 0; i < m.triangles.size(); ++i) {
    const int c = i < m.cell_tags.size() ? m.cell_tags[i] : -1;
    if (c != tag) {
      out << "g cell_" << c << "\n";
      tag = c;
    }
    const auto& t = m.triangles[i];
    out << "f " << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << "\n";
  }
}

Mesh3D read_obj(std::istream& in) {
  Mesh3D m;
  std::string line;
  int tag = -1;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "v") {
      Vec3 v;
      if (!(ls >> v[0] >> v[1] >> v[2])) throw ValidationError("obj", "bad vertex line");
      m.vertices.push_back(v);
    } else if (kind == "f") {
      std::array<int, 3> t{};
      for (int k = 0; k < 3; ++k) {
        std::string ref;
        if (!(ls >> ref)) throw ValidationError("obj", "faces must be triangles");
        t[static_cast<std::size_t>(k)] = std::stoi(ref.substr(0, ref.find('/'))) - 1;
      }
      m.triangles.push_back(t);
      m.cell_tags.push_back(tag);
    } else if (kind == "g") {
      std::string name;
      ls >> name;
      tag = name.rfind("cell_", 0) == 0 ? std::stoi(name.substr(5)) : -1;
    }
  }
  for (const auto& t : m.triangles)
    for (int idx : t)
      if (idx < 0 || static_cast<std::size_t>(idx) >= m.vertices.size()) throw ValidationError("obj", "vertex index out of range");
  return m;
}

void write_csv(const CsvTable& t, std::ostream& out) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << "\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(l);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!l.empty() && l.back() == ',') cells.emplace_back();
    return cells;
  };
  if (!std::getline(in, line)) throw ValidationError("csv", "empty input");
  t.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != t.header.size()) throw ValidationError("csv", "row width differs from header");
    t.rows.push_back(std::move(cells));
  }
  return t;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(path, "cannot open for writing");
  out << contents;
  if (!out) throw ValidationError(path, "write failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path, "cannot open for reading");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace xsect
