#pragma once

#include <array>
#include <vector>

namespace poromr {

// Boundary segments of the unit square, numbered the way the benchmark
// problems state their boundary conditions:
//   1: y = 0 (bottom), 2: x = 1 (right), 3: y = 1 (top), 4: x = 0 (left).
enum class SegmentTag : int { bottom = 1, right = 2, top = 3, left = 4 };

struct BoundaryEdge {
  int v0 = -1;
  int v1 = -1;  // oriented counterclockwise along the boundary
  SegmentTag tag = SegmentTag::bottom;
};

struct Mesh {
  std::vector<std::array<double, 2>> vertices;
  std::vector<std::array<int, 3>> triangles;  // counterclockwise
  std::vector<BoundaryEdge> boundary_edges;
  int n = 0;       // subdivisions per side
  double h = 0.0;  // max edge length
};

// Structured triangulation of [0,1]^2 with n subdivisions per side; every
// cell is split along the lower-left -> upper-right diagonal.
Mesh build_unit_square_mesh(int n);

double mesh_size(const Mesh& mesh);

}  // namespace poromr
