#include "poromr/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace poromr {

Mesh build_unit_square_mesh(int n) {
  if (n < 1) throw std::invalid_argument("build_unit_square_mesh: n must be >= 1");

  Mesh mesh;
  mesh.n = n;
  const int nv = n + 1;
  mesh.vertices.reserve(static_cast<size_t>(nv) * nv);
  for (int j = 0; j < nv; ++j)
    for (int i = 0; i < nv; ++i)
      mesh.vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});

  auto vid = [nv](int i, int j) { return j * nv + i; };

  mesh.triangles.reserve(2 * static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j);
      const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      mesh.triangles.push_back({v00, v10, v11});  // below the diagonal
      mesh.triangles.push_back({v00, v11, v01});  // above the diagonal
    }
  }

  // boundary edges, counterclockwise around the square
  mesh.boundary_edges.reserve(4 * static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    mesh.boundary_edges.push_back({vid(i, 0), vid(i + 1, 0), SegmentTag::bottom});
  for (int j = 0; j < n; ++j)
    mesh.boundary_edges.push_back({vid(n, j), vid(n, j + 1), SegmentTag::right});
  for (int i = n; i > 0; --i)
    mesh.boundary_edges.push_back({vid(i, n), vid(i - 1, n), SegmentTag::top});
  for (int j = n; j > 0; --j)
    mesh.boundary_edges.push_back({vid(0, j), vid(0, j - 1), SegmentTag::left});

  mesh.h = mesh_size(mesh);
  return mesh;
}

double mesh_size(const Mesh& mesh) {
  double h = 0.0;
  for (const auto& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      const auto& a = mesh.vertices[t[e]];
      const auto& b = mesh.vertices[t[(e + 1) % 3]];
      h = std::max(h, std::hypot(b[0] - a[0], b[1] - a[1]));
    }
  }
  return h;
}

}  // namespace poromr
