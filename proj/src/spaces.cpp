#include "poromr/spaces.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace poromr {

SpacePair build_spaces(const Mesh& mesh) {
  if (mesh.triangles.empty()) throw std::invalid_argument("build_spaces: empty mesh");

  SpacePair sp;
  sp.mesh = mesh;

  // unique edge list, lexicographically ordered for reproducibility
  std::vector<std::array<int, 2>> all;
  all.reserve(mesh.triangles.size() * 3);
  for (const auto& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      int a = t[e], b = t[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      all.push_back({a, b});
    }
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  sp.edges = std::move(all);

  std::map<std::array<int, 2>, int> edge_id;
  for (int e = 0; e < static_cast<int>(sp.edges.size()); ++e) edge_id[sp.edges[e]] = e;

  const int nv = static_cast<int>(mesh.vertices.size());
  sp.n_scalar = nv;
  sp.n_nodes = nv + static_cast<int>(sp.edges.size());
  sp.n_vector = 2 * sp.n_nodes;

  sp.nodes.reserve(sp.n_nodes);
  for (const auto& v : mesh.vertices) sp.nodes.push_back(v);
  for (const auto& e : sp.edges) {
    const auto& a = mesh.vertices[e[0]];
    const auto& b = mesh.vertices[e[1]];
    sp.nodes.push_back({0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])});
  }

  auto midnode = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    return nv + edge_id.at({a, b});
  };

  sp.tri_nodes.reserve(mesh.triangles.size());
  for (const auto& t : mesh.triangles)
    sp.tri_nodes.push_back({t[0], t[1], t[2], midnode(t[0], t[1]), midnode(t[1], t[2]),
                            midnode(t[2], t[0])});

  sp.boundary_edge_midnode.reserve(mesh.boundary_edges.size());
  for (const auto& be : mesh.boundary_edges)
    sp.boundary_edge_midnode.push_back(midnode(be.v0, be.v1));

  for (const auto& be : mesh.boundary_edges) {
    auto& list = sp.segment_nodes[static_cast<int>(be.tag) - 1];
    list.push_back(be.v0);
    list.push_back(be.v1);
    list.push_back(midnode(be.v0, be.v1));
  }
  for (auto& list : sp.segment_nodes) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  return sp;
}

P1Basis eval_p1(double x, double y) {
  P1Basis b;
  b.val = {1.0 - x - y, x, y};
  b.grad = {{{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}}};
  return b;
}

P2Basis eval_p2(double x, double y) {
  const double l1 = 1.0 - x - y, l2 = x, l3 = y;
  const double g1[2] = {-1.0, -1.0}, g2[2] = {1.0, 0.0}, g3[2] = {0.0, 1.0};

  P2Basis b;
  b.val = {l1 * (2 * l1 - 1), l2 * (2 * l2 - 1), l3 * (2 * l3 - 1),
           4 * l1 * l2,       4 * l2 * l3,       4 * l3 * l1};
  for (int d = 0; d < 2; ++d) {
    b.grad[0][d] = (4 * l1 - 1) * g1[d];
    b.grad[1][d] = (4 * l2 - 1) * g2[d];
    b.grad[2][d] = (4 * l3 - 1) * g3[d];
    b.grad[3][d] = 4 * (l1 * g2[d] + l2 * g1[d]);
    b.grad[4][d] = 4 * (l2 * g3[d] + l3 * g2[d]);
    b.grad[5][d] = 4 * (l3 * g1[d] + l1 * g3[d]);
  }
  return b;
}

TriGeom tri_geometry(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangles[t];
  const auto& p0 = mesh.vertices[tri[0]];
  const auto& p1 = mesh.vertices[tri[1]];
  const auto& p2 = mesh.vertices[tri[2]];

  TriGeom g;
  g.x0 = p0;
  g.jac[0][0] = p1[0] - p0[0];
  g.jac[1][0] = p1[1] - p0[1];
  g.jac[0][1] = p2[0] - p0[0];
  g.jac[1][1] = p2[1] - p0[1];
  g.det = g.jac[0][0] * g.jac[1][1] - g.jac[0][1] * g.jac[1][0];
  if (g.det <= 0.0) throw std::invalid_argument("tri_geometry: non-ccw triangle");
  const double inv = 1.0 / g.det;
  // inverse transpose of jac
  g.inv_jt[0][0] = g.jac[1][1] * inv;
  g.inv_jt[0][1] = -g.jac[1][0] * inv;
  g.inv_jt[1][0] = -g.jac[0][1] * inv;
  g.inv_jt[1][1] = g.jac[0][0] * inv;
  return g;
}

std::array<Eigen::VectorXd, 3> rigid_motion_basis(const SpacePair& sp) {
  std::array<Eigen::VectorXd, 3> r;
  for (auto& v : r) v = Eigen::VectorXd::Zero(sp.n_vector);
  for (int k = 0; k < sp.n_nodes; ++k) {
    const double x = sp.nodes[k][0], y = sp.nodes[k][1];
    r[0][2 * k] = 1.0;
    r[1][2 * k + 1] = 1.0;
    r[2][2 * k] = -y;
    r[2][2 * k + 1] = x;
  }
  return r;
}

}  // namespace poromr
