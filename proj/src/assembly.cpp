#include "poromr/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace poromr {

namespace {

using Triplet = Eigen::Triplet<double>;

// physical gradient of one reference gradient
inline void phys_grad(const TriGeom& g, const std::array<double, 2>& ref, double out[2]) {
  out[0] = g.inv_jt[0][0] * ref[0] + g.inv_jt[0][1] * ref[1];
  out[1] = g.inv_jt[1][0] * ref[0] + g.inv_jt[1][1] * ref[1];
}

inline void phys_point(const TriGeom& g, double xr, double yr, double out[2]) {
  out[0] = g.x0[0] + g.jac[0][0] * xr + g.jac[0][1] * yr;
  out[1] = g.x0[1] + g.jac[1][0] * xr + g.jac[1][1] * yr;
}

struct EdgeTraceP2 {
  // P2 trace along an edge: endpoint shapes plus midpoint shape at parameter s
  static void eval(double s, double out[3]) {
    out[0] = (1.0 - s) * (1.0 - 2.0 * s);
    out[1] = s * (2.0 * s - 1.0);
    out[2] = 4.0 * s * (1.0 - s);
  }
};

}  // namespace

bool BoundaryPlan::any_u_dirichlet() const {
  for (int s = 0; s < 4; ++s)
    if (ux[s] == BcKind::dirichlet || uy[s] == BcKind::dirichlet) return true;
  return false;
}

bool BoundaryPlan::any_p_dirichlet() const {
  for (int s = 0; s < 4; ++s)
    if (p[s] == BcKind::dirichlet) return true;
  return false;
}

SparseMat assemble_a(const SpacePair& sp, double mu) {
  if (mu <= 0.0) throw std::invalid_argument("assemble_a: mu must be positive");
  const QuadRule rule = quadrature_rule(4);
  std::vector<Triplet> trips;
  trips.reserve(sp.tri_nodes.size() * 144);

  for (size_t t = 0; t < sp.tri_nodes.size(); ++t) {
    const TriGeom g = tri_geometry(sp.mesh, static_cast<int>(t));
    const auto& nodes = sp.tri_nodes[t];
    double ke[12][12] = {};
    for (const auto& q : rule.points) {
      const P2Basis b = eval_p2(q.x, q.y);
      double gp[6][2];
      for (int a = 0; a < 6; ++a) phys_grad(g, b.grad[a], gp[a]);
      const double wq = q.w * g.det * mu;
      for (int a = 0; a < 6; ++a) {
        for (int c = 0; c < 2; ++c) {
          for (int bn = 0; bn < 6; ++bn) {
            for (int d = 0; d < 2; ++d) {
              // eps(phi_a e_c) : eps(phi_b e_d)
              double v = 0.5 * gp[a][d] * gp[bn][c];
              if (c == d) v += 0.5 * (gp[a][0] * gp[bn][0] + gp[a][1] * gp[bn][1]);
              ke[2 * a + c][2 * bn + d] += wq * v;
            }
          }
        }
      }
    }
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 12; ++j)
        trips.emplace_back(2 * nodes[i / 2] + i % 2, 2 * nodes[j / 2] + j % 2, ke[i][j]);
  }

  SparseMat A(sp.n_vector, sp.n_vector);
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();
  return A;
}

SparseMat assemble_b(const SpacePair& sp) {
  const QuadRule rule = quadrature_rule(4);
  std::vector<Triplet> trips;
  trips.reserve(sp.tri_nodes.size() * 36);

  for (size_t t = 0; t < sp.tri_nodes.size(); ++t) {
    const TriGeom g = tri_geometry(sp.mesh, static_cast<int>(t));
    const auto& nodes = sp.tri_nodes[t];
    const auto& tri = sp.mesh.triangles[t];
    double be[3][12] = {};
    for (const auto& q : rule.points) {
      const P1Basis p1 = eval_p1(q.x, q.y);
      const P2Basis p2 = eval_p2(q.x, q.y);
      double gp[6][2];
      for (int a = 0; a < 6; ++a) phys_grad(g, p2.grad[a], gp[a]);
      const double wq = q.w * g.det;
      for (int i = 0; i < 3; ++i)
        for (int a = 0; a < 6; ++a)
          for (int c = 0; c < 2; ++c) be[i][2 * a + c] -= wq * p1.val[i] * gp[a][c];
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 12; ++j)
        trips.emplace_back(tri[i], 2 * nodes[j / 2] + j % 2, be[i][j]);
  }

  SparseMat B(sp.n_scalar, sp.n_vector);
  B.setFromTriplets(trips.begin(), trips.end());
  B.makeCompressed();
  return B;
}

SparseMat assemble_scalar_mass(const SpacePair& sp, double coeff) {
  const QuadRule rule = quadrature_rule(4);
  std::vector<Triplet> trips;
  trips.reserve(sp.tri_nodes.size() * 9);

  for (size_t t = 0; t < sp.tri_nodes.size(); ++t) {
    const TriGeom g = tri_geometry(sp.mesh, static_cast<int>(t));
    const auto& tri = sp.mesh.triangles[t];
    double me[3][3] = {};
    for (const auto& q : rule.points) {
      const P1Basis b = eval_p1(q.x, q.y);
      const double wq = q.w * g.det * coeff;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) me[i][j] += wq * b.val[i] * b.val[j];
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) trips.emplace_back(tri[i], tri[j], me[i][j]);
  }

  SparseMat M(sp.n_scalar, sp.n_scalar);
  M.setFromTriplets(trips.begin(), trips.end());
  M.makeCompressed();
  return M;
}

SparseMat assemble_vector_mass(const SpacePair& sp) {
  const QuadRule rule = quadrature_rule(4);
  std::vector<Triplet> trips;
  trips.reserve(sp.tri_nodes.size() * 72);

  for (size_t t = 0; t < sp.tri_nodes.size(); ++t) {
    const TriGeom g = tri_geometry(sp.mesh, static_cast<int>(t));
    const auto& nodes = sp.tri_nodes[t];
    double me[6][6] = {};
    for (const auto& q : rule.points) {
      const P2Basis b = eval_p2(q.x, q.y);
      const double wq = q.w * g.det;
      for (int a = 0; a < 6; ++a)
        for (int bn = 0; bn < 6; ++bn) me[a][bn] += wq * b.val[a] * b.val[bn];
    }
    for (int a = 0; a < 6; ++a)
      for (int bn = 0; bn < 6; ++bn)
        for (int c = 0; c < 2; ++c)
          trips.emplace_back(2 * nodes[a] + c, 2 * nodes[bn] + c, me[a][bn]);
  }

  SparseMat M(sp.n_vector, sp.n_vector);
  M.setFromTriplets(trips.begin(), trips.end());
  M.makeCompressed();
  return M;
}

SparseMat assemble_diffusion(const SpacePair& sp, const Eigen::Matrix2d& K, double mu_f) {
  if (mu_f <= 0.0) throw std::invalid_argument("assemble_diffusion: mu_f must be positive");
  if (std::abs(K(0, 1) - K(1, 0)) > 1e-12 * std::max(1.0, K.cwiseAbs().maxCoeff()) ||
      K(0, 0) <= 0.0 || K.determinant() <= 0.0)
    throw std::invalid_argument("assemble_diffusion: K must be SPD");

  const QuadRule rule = quadrature_rule(4);
  std::vector<Triplet> trips;
  trips.reserve(sp.tri_nodes.size() * 9);

  for (size_t t = 0; t < sp.tri_nodes.size(); ++t) {
    const TriGeom g = tri_geometry(sp.mesh, static_cast<int>(t));
    const auto& tri = sp.mesh.triangles[t];
    double ke[3][3] = {};
    for (const auto& q : rule.points) {
      const P1Basis b = eval_p1(q.x, q.y);
      double gp[3][2];
      for (int i = 0; i < 3; ++i) phys_grad(g, b.grad[i], gp[i]);
      const double wq = q.w * g.det / mu_f;
      for (int i = 0; i < 3; ++i) {
        const double kg[2] = {K(0, 0) * gp[i][0] + K(0, 1) * gp[i][1],
                              K(1, 0) * gp[i][0] + K(1, 1) * gp[i][1]};
        for (int j = 0; j < 3; ++j)
          ke[j][i] += wq * (kg[0] * gp[j][0] + kg[1] * gp[j][1]);
      }
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) trips.emplace_back(tri[i], tri[j], ke[i][j]);
  }

  SparseMat D(sp.n_scalar, sp.n_scalar);
  D.setFromTriplets(trips.begin(), trips.end());
  D.makeCompressed();
  return D;
}

Eigen::VectorXd assemble_vector_load(const SpacePair& sp, const VectorFn& f,
                                     const VectorFn& traction, const BoundaryPlan& plan,
                                     double t, const QuadRule& rule) {
  Eigen::VectorXd F = Eigen::VectorXd::Zero(sp.n_vector);

  if (f) {
    for (size_t tr = 0; tr < sp.tri_nodes.size(); ++tr) {
      const TriGeom g = tri_geometry(sp.mesh, static_cast<int>(tr));
      const auto& nodes = sp.tri_nodes[tr];
      for (const auto& q : rule.points) {
        double xq[2];
        phys_point(g, q.x, q.y, xq);
        const auto fv = f(xq[0], xq[1], t);
        const P2Basis b = eval_p2(q.x, q.y);
        const double wq = q.w * g.det;
        for (int a = 0; a < 6; ++a)
          for (int c = 0; c < 2; ++c) F[2 * nodes[a] + c] += wq * fv[c] * b.val[a];
      }
    }
  }

  if (traction) {
    const auto& erule = edge_quadrature_rule();
    for (size_t e = 0; e < sp.mesh.boundary_edges.size(); ++e) {
      const auto& be = sp.mesh.boundary_edges[e];
      const int seg = static_cast<int>(be.tag) - 1;
      const bool use[2] = {plan.ux[seg] == BcKind::neumann, plan.uy[seg] == BcKind::neumann};
      if (!use[0] && !use[1]) continue;
      const auto& a = sp.mesh.vertices[be.v0];
      const auto& b = sp.mesh.vertices[be.v1];
      const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
      const int gn[3] = {be.v0, be.v1, sp.boundary_edge_midnode[e]};
      for (const auto& q : erule) {
        const double x = a[0] + q.s * (b[0] - a[0]);
        const double y = a[1] + q.s * (b[1] - a[1]);
        const auto tv = traction(x, y, t);
        double shape[3];
        EdgeTraceP2::eval(q.s, shape);
        for (int kn = 0; kn < 3; ++kn)
          for (int c = 0; c < 2; ++c)
            if (use[c]) F[2 * gn[kn] + c] += q.w * len * tv[c] * shape[kn];
      }
    }
  }

  return F;
}

Eigen::VectorXd assemble_scalar_load(const SpacePair& sp, const ScalarFn& source,
                                     const ScalarFn& flux, const BoundaryPlan& plan,
                                     const PhysicalParams& pp, double t, const QuadRule& rule) {
  Eigen::VectorXd F = Eigen::VectorXd::Zero(sp.n_scalar);

  const bool with_gravity = pp.rho_f != 0.0 && pp.g.norm() > 0.0;
  const Eigen::Vector2d vg = with_gravity
                                 ? Eigen::Vector2d((pp.rho_f / pp.mu_f) * (pp.K * pp.g))
                                 : Eigen::Vector2d::Zero();

  if (source || with_gravity) {
    for (size_t tr = 0; tr < sp.tri_nodes.size(); ++tr) {
      const TriGeom g = tri_geometry(sp.mesh, static_cast<int>(tr));
      const auto& tri = sp.mesh.triangles[tr];
      for (const auto& q : rule.points) {
        const P1Basis b = eval_p1(q.x, q.y);
        const double wq = q.w * g.det;
        if (source) {
          double xq[2];
          phys_point(g, q.x, q.y, xq);
          const double sv = source(xq[0], xq[1], t);
          for (int i = 0; i < 3; ++i) F[tri[i]] += wq * sv * b.val[i];
        }
        if (with_gravity) {
          for (int i = 0; i < 3; ++i) {
            double gp[2];
            phys_grad(g, b.grad[i], gp);
            F[tri[i]] += wq * (vg[0] * gp[0] + vg[1] * gp[1]);
          }
        }
      }
    }
  }

  if (flux) {
    const auto& erule = edge_quadrature_rule();
    for (size_t e = 0; e < sp.mesh.boundary_edges.size(); ++e) {
      const auto& be = sp.mesh.boundary_edges[e];
      const int seg = static_cast<int>(be.tag) - 1;
      if (plan.p[seg] != BcKind::neumann) continue;
      const auto& a = sp.mesh.vertices[be.v0];
      const auto& b = sp.mesh.vertices[be.v1];
      const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
      for (const auto& q : erule) {
        const double x = a[0] + q.s * (b[0] - a[0]);
        const double y = a[1] + q.s * (b[1] - a[1]);
        const double fv = flux(x, y, t);
        F[be.v0] += q.w * len * fv * (1.0 - q.s);
        F[be.v1] += q.w * len * fv * q.s;
      }
    }
  }

  return F;
}

namespace {

std::vector<int> collect_nodes(const SpacePair& sp, const std::array<BcKind, 4>& kinds) {
  std::vector<int> out;
  for (int s = 0; s < 4; ++s)
    if (kinds[s] == BcKind::dirichlet)
      out.insert(out.end(), sp.segment_nodes[s].begin(), sp.segment_nodes[s].end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<int> dirichlet_vector_dofs(const SpacePair& sp, const BoundaryPlan& plan) {
  std::vector<int> dofs;
  for (int node : collect_nodes(sp, plan.ux)) dofs.push_back(2 * node);
  for (int node : collect_nodes(sp, plan.uy)) dofs.push_back(2 * node + 1);
  std::sort(dofs.begin(), dofs.end());
  return dofs;
}

std::vector<int> dirichlet_scalar_dofs(const SpacePair& sp, const BoundaryPlan& plan) {
  std::vector<int> dofs;
  for (int node : collect_nodes(sp, plan.p))
    if (node < sp.n_scalar) dofs.push_back(node);  // P1: vertex nodes only
  std::sort(dofs.begin(), dofs.end());
  return dofs;
}

Eigen::VectorXd dirichlet_vector_values(const SpacePair& sp, const std::vector<int>& dofs,
                                        const VectorFn& g, double t) {
  Eigen::VectorXd vals = Eigen::VectorXd::Zero(static_cast<int>(dofs.size()));
  if (!g) return vals;
  for (size_t i = 0; i < dofs.size(); ++i) {
    const int node = dofs[i] / 2, c = dofs[i] % 2;
    const auto gv = g(sp.nodes[node][0], sp.nodes[node][1], t);
    vals[static_cast<int>(i)] = gv[c];
  }
  return vals;
}

Eigen::VectorXd dirichlet_scalar_values(const SpacePair& sp, const std::vector<int>& dofs,
                                        const ScalarFn& g, double t) {
  Eigen::VectorXd vals = Eigen::VectorXd::Zero(static_cast<int>(dofs.size()));
  if (!g) return vals;
  for (size_t i = 0; i < dofs.size(); ++i)
    vals[static_cast<int>(i)] = g(sp.nodes[dofs[i]][0], sp.nodes[dofs[i]][1], t);
  return vals;
}

ConstrainedOperator constrain(const SparseMat& A, const std::vector<int>& dofs) {
  ConstrainedOperator op;
  op.dofs = dofs;

  std::vector<char> mask(A.rows(), 0);
  std::vector<int> pos(A.rows(), -1);
  for (size_t i = 0; i < dofs.size(); ++i) {
    mask[dofs[i]] = 1;
    pos[dofs[i]] = static_cast<int>(i);
  }

  std::vector<Triplet> keep, coup;
  keep.reserve(A.nonZeros());
  for (int k = 0; k < A.outerSize(); ++k) {
    for (SparseMat::InnerIterator it(A, k); it; ++it) {
      const int i = static_cast<int>(it.row()), j = static_cast<int>(it.col());
      if (mask[j]) coup.emplace_back(i, pos[j], it.value());
      if (!mask[i] && !mask[j]) keep.emplace_back(i, j, it.value());
    }
  }
  for (int d : dofs) keep.emplace_back(d, d, 1.0);

  op.constrained.resize(A.rows(), A.cols());
  op.constrained.setFromTriplets(keep.begin(), keep.end());
  op.constrained.makeCompressed();
  op.coupling.resize(A.rows(), static_cast<int>(dofs.size()));
  op.coupling.setFromTriplets(coup.begin(), coup.end());
  op.coupling.makeCompressed();
  return op;
}

Eigen::VectorXd ConstrainedOperator::adjust_rhs(const Eigen::VectorXd& b,
                                                const Eigen::VectorXd& values) const {
  Eigen::VectorXd out = b;
  if (!dofs.empty()) out -= coupling * values;
  for (size_t i = 0; i < dofs.size(); ++i) out[dofs[i]] = values[static_cast<int>(i)];
  return out;
}

void apply_dirichlet(SparseMat& A, Eigen::VectorXd& b, const std::vector<int>& dofs,
                     const Eigen::VectorXd& values) {
  if (dofs.empty()) return;
  if (static_cast<int>(dofs.size()) != values.size())
    throw std::invalid_argument("apply_dirichlet: dof/value size mismatch");
  ConstrainedOperator op = constrain(A, dofs);
  b = op.adjust_rhs(b, values);
  A = std::move(op.constrained);
}

SparseMat rm_constraint_rows(const SpacePair& sp, const SparseMat& vector_mass) {
  const auto rm = rigid_motion_basis(sp);
  std::vector<Triplet> trips;
  for (int r = 0; r < 3; ++r) {
    const Eigen::VectorXd row = vector_mass * rm[r];
    for (int j = 0; j < row.size(); ++j)
      if (row[j] != 0.0) trips.emplace_back(r, j, row[j]);
  }
  SparseMat R(3, sp.n_vector);
  R.setFromTriplets(trips.begin(), trips.end());
  R.makeCompressed();
  return R;
}

}  // namespace poromr
