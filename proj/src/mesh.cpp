#include "xsect/mesh.hpp"

#include <map>
#include <unordered_map>

#include "xsect/reconstruction.hpp"

namespace xsect {

ManifoldReport check_manifold(const Mesh3D& mesh) {
  std::map<std::pair<int, int>, int> directed;
  for (const auto& t : mesh.triangles)
    for (int k = 0; k < 3; ++k) ++directed[{t[static_cast<std::size_t>(k)], t[static_cast<std::size_t>((k + 1) % 3)]}];
  ManifoldReport r;
  long long edges = 0;
  for (const auto& [e, count] : directed) {
    const auto rev = directed.find({e.second, e.first});
    const int back = rev == directed.end() ? 0 : rev->second;
    if (e.first < e.second || back == 0) {
      ++edges;
      const int uses = count + back;
      if (uses == 1) ++r.boundary_edges;
      else if (uses > 2) ++r.nonmanifold_edges;
      else if (count != 1 || back != 1) ++r.misoriented_edges;
    }
  }
  r.euler = static_cast<long long>(mesh.vertices.size()) - edges + static_cast<long long>(mesh.triangles.size());
  return r;
}

Mesh3D extract_mesh_3d(const Arrangement<3>& arr, const SectionSet<3>& sections, const Grid<3>& grid,
                       const GridLabels<3>& labels, int refine_iterations) {
  // Lattice of voxel centers with one padding layer on every side.
  const std::array<int, 3> m{grid.n[0] + 2, grid.n[1] + 2, grid.n[2] + 2};
  auto node_index = [&](int i, int j, int k) {
    return (static_cast<std::size_t>(k) * static_cast<std::size_t>(m[1]) + static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(m[0]) +
           static_cast<std::size_t>(i);
  };
  auto node_inside = [&](int i, int j, int k) {
    if (i == 0 || j == 0 || k == 0 || i == m[0] - 1 || j == m[1] - 1 || k == m[2] - 1) return false;
    return labels.in_r[grid.index({i - 1, j - 1, k - 1})] != 0;
  };
  auto node_pos = [&](int i, int j, int k) {
    Vec3 x;
    const int ijk[3] = {i, j, k};
    for (int a = 0; a < 3; ++a) x[a] = grid.box.lo[a] + (ijk[a] - 0.5) * grid.step[a];
    return x;
  };
  auto member = [&](const Vec3& x) { return arr.bbox().contains(x) && in_reconstruction(x, arr, sections); };

  Mesh3D mesh;
  std::unordered_map<std::size_t, int> edge_vertex;  // key: lo node * N + hi node
  const std::size_t total_nodes = static_cast<std::size_t>(m[0]) * static_cast<std::size_t>(m[1]) *
                                  static_cast<std::size_t>(m[2]);
  auto crossing = [&](std::size_t in_node, const Vec3& pin, std::size_t out_node, const Vec3& pout) {
    const std::size_t key = std::min(in_node, out_node) * total_nodes + std::max(in_node, out_node);
    auto it = edge_vertex.find(key);
    if (it != edge_vertex.end()) return it->second;
    Vec3 a = pin, b = pout;
    for (int it2 = 0; it2 < refine_iterations; ++it2) {
      const Vec3 mid = (a + b) * 0.5;
      (member(mid) ? a : b) = mid;
    }
    const int id = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back((a + b) * 0.5);
    edge_vertex.emplace(key, id);
    return id;
  };

  // Freudenthal split of the unit cube into six tetrahedra along 0 -> 7.
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int k = 0; k + 1 < m[2]; ++k)
    for (int j = 0; j + 1 < m[1]; ++j)
      for (int i = 0; i + 1 < m[0]; ++i) {
        for (const auto& p : perms) {
          std::array<int, 3> c{i, j, k};
          std::array<std::array<int, 3>, 4> tet;
          tet[0] = c;
          for (int s = 0; s < 3; ++s) {
            ++c[static_cast<std::size_t>(p[s])];
            tet[static_cast<std::size_t>(s + 1)] = c;
          }
          std::array<bool, 4> in{};
          std::array<std::size_t, 4> id{};
          std::array<Vec3, 4> pos;
          int n_in = 0;
          for (int v = 0; v < 4; ++v) {
            const auto& t = tet[static_cast<std::size_t>(v)];
            in[static_cast<std::size_t>(v)] = node_inside(t[0], t[1], t[2]);
            id[static_cast<std::size_t>(v)] = node_index(t[0], t[1], t[2]);
            pos[static_cast<std::size_t>(v)] = node_pos(t[0], t[1], t[2]);
            n_in += in[static_cast<std::size_t>(v)];
          }
          if (n_in == 0 || n_in == 4) continue;
          std::vector<int> I, O;
          for (int v = 0; v < 4; ++v) (in[static_cast<std::size_t>(v)] ? I : O).push_back(v);
          Vec3 cin{}, cout{};
          for (int v : I) cin = cin + pos[static_cast<std::size_t>(v)] * (1.0 / static_cast<double>(I.size()));
          for (int v : O) cout = cout + pos[static_cast<std::size_t>(v)] * (1.0 / static_cast<double>(O.size()));
          const Vec3 outward = cout - cin;
          auto edge = [&](int a, int b) {
            return crossing(id[static_cast<std::size_t>(a)], pos[static_cast<std::size_t>(a)],
                            id[static_cast<std::size_t>(b)], pos[static_cast<std::size_t>(b)]);
          };
          auto emit = [&](int a, int b, int c2) {
            const Vec3& A = mesh.vertices[static_cast<std::size_t>(a)];
            const Vec3& B = mesh.vertices[static_cast<std::size_t>(b)];
            const Vec3& C = mesh.vertices[static_cast<std::size_t>(c2)];
            if (dot(cross(B - A, C - A), outward) < 0) std::swap(b, c2);
            mesh.triangles.push_back({a, b, c2});
            const Vec3 centroid = (A + B + C) * (1.0 / 3.0);
            mesh.cell_tags.push_back(arr.bbox().contains(centroid) ? arr.locate(centroid) : -1);
          };
          if (I.size() == 1) {
            emit(edge(I[0], O[0]), edge(I[0], O[1]), edge(I[0], O[2]));
          } else if (I.size() == 3) {
            emit(edge(I[0], O[0]), edge(I[1], O[0]), edge(I[2], O[0]));
          } else {
            const int q0 = edge(I[0], O[0]), q1 = edge(I[0], O[1]), q2 = edge(I[1], O[1]), q3 = edge(I[1], O[0]);
            emit(q0, q1, q2);
            emit(q0, q2, q3);
          }
        }
      }
  const ManifoldReport rep = check_manifold(mesh);
  if (!rep.ok())
    throw GeometryError("extract_mesh_3d: surface is not a closed oriented manifold (boundary edges " +
                        std::to_string(rep.boundary_edges) + ", non-manifold " +
                        std::to_string(rep.nonmanifold_edges) + ", misoriented " +
                        std::to_string(rep.misoriented_edges) + ")");
  return mesh;
}

}  // namespace xsect
