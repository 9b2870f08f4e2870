#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "poromr/mesh.hpp"

namespace poromr {

// Taylor-Hood pair on a triangulation: continuous P2 vector displacements,
// continuous P1 scalars. P2 nodes are the vertices followed by the edge
// midpoints; vector dofs are component-interleaved, dof(node, c) = 2*node + c.
struct SpacePair {
  Mesh mesh;
  std::vector<std::array<int, 2>> edges;       // unique, v0 < v1, lexicographic
  std::vector<std::array<int, 6>> tri_nodes;   // [v0,v1,v2, m01, m12, m20]
  std::vector<std::array<double, 2>> nodes;    // P2 node coordinates
  std::vector<int> boundary_edge_midnode;      // aligned with mesh.boundary_edges
  int n_scalar = 0;  // P1 dofs (= vertex count)
  int n_nodes = 0;   // P2 nodes
  int n_vector = 0;  // 2 * n_nodes

  // P2 node ids lying on segment tag (index tag-1); includes corner nodes of
  // adjacent segments.
  std::array<std::vector<int>, 4> segment_nodes;
};

SpacePair build_spaces(const Mesh& mesh);

// Shape functions on the reference triangle {(0,0),(1,0),(0,1)}; gradients
// are reference gradients.
struct P1Basis {
  std::array<double, 3> val;
  std::array<std::array<double, 2>, 3> grad;
};
struct P2Basis {
  std::array<double, 6> val;
  std::array<std::array<double, 2>, 6> grad;
};

P1Basis eval_p1(double x, double y);
P2Basis eval_p2(double x, double y);

// Affine geometry of triangle t.
struct TriGeom {
  std::array<double, 2> x0;
  double jac[2][2];      // columns: p1-p0, p2-p0
  double inv_jt[2][2];   // inverse transpose, maps reference gradients
  double det = 0;        // = 2 * area, positive for ccw triangles
};
TriGeom tri_geometry(const Mesh& mesh, int t);

// Rigid motions (1,0), (0,1), (-y,x) as P2 coefficient vectors (interpolation
// is exact, the fields are affine).
std::array<Eigen::VectorXd, 3> rigid_motion_basis(const SpacePair& sp);

}  // namespace poromr
