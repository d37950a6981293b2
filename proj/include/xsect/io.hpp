#pragma once

#include <string>
#include <vector>

#include "xsect/exact.hpp"
#include "xsect/mesh.hpp"
#include "xsect/reconstruction.hpp"
#include "xsect/sections.hpp"

namespace xsect {

/// 2D drawing: green reconstruction polygons, blue sections, red skeleton,
/// grey cell outlines. Each polygon is one <path> with a data-role attribute.
std::string render_svg(const Arrangement<2>& arr, const SectionSet<2>& sections, const Reconstruction2D& recon);

/// Polygons read back from an SVG written by render_svg (role "region"):
/// outer loop first, then holes, one vector of loops per path.
std::vector<std::vector<Loop>> read_svg_regions(const std::string& svg);

void write_off(const Mesh3D& mesh, std::ostream& out);
Mesh3D read_off(std::istream& in);
void write_obj(const Mesh3D& mesh, std::ostream& out);
Mesh3D read_obj(std::istream& in);

/// Simple CSV (no quoting needed for our numeric tables).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
void write_csv(const CsvTable& t, std::ostream& out);
CsvTable read_csv(std::istream& in);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace xsect
