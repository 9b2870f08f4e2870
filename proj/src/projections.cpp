#include "poromr/projections.hpp"

#include <stdexcept>

#include "poromr/assembly.hpp"
#include "poromr/linsolve.hpp"
#include "poromr/quadrature.hpp"

namespace poromr {

namespace {

inline void phys_point(const TriGeom& g, double xr, double yr, double out[2]) {
  out[0] = g.x0[0] + g.jac[0][0] * xr + g.jac[0][1] * yr;
  out[1] = g.x0[1] + g.jac[1][0] * xr + g.jac[1][1] * yr;
}

inline void phys_grad(const TriGeom& g, const std::array<double, 2>& ref, double out[2]) {
  out[0] = g.inv_jt[0][0] * ref[0] + g.inv_jt[0][1] * ref[1];
  out[1] = g.inv_jt[1][0] * ref[0] + g.inv_jt[1][1] * ref[1];
}

}  // namespace

ProjectedField project_rh(const SpacePair& sp, const SpatialVectorFn& v,
                          const SpatialMatrixFn& grad_v, bool orthogonalize_rm) {
  if (!v || !grad_v) throw std::invalid_argument("project_rh: field and gradient required");

  const QuadRule rule = quadrature_rule(6);

  // rigid motions and their gradients, for optional orthogonalization
  const std::array<std::array<double, 2>, 2> rot_grad = {{{0.0, -1.0}, {1.0, 0.0}}};
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  if (orthogonalize_rm) {
    Eigen::Matrix3d gram = Eigen::Matrix3d::Zero();
    Eigen::Vector3d mom = Eigen::Vector3d::Zero();
    for (size_t t = 0; t < sp.tri_nodes.size(); ++t) {
      const TriGeom g = tri_geometry(sp.mesh, static_cast<int>(t));
      for (const auto& q : rule.points) {
        double xq[2];
        phys_point(g, q.x, q.y, xq);
        const double w = q.w * g.det;
        const double r[3][2] = {{1, 0}, {0, 1}, {-xq[1], xq[0]}};
        const auto vv = v(xq[0], xq[1]);
        for (int i = 0; i < 3; ++i) {
          mom[i] += w * (vv[0] * r[i][0] + vv[1] * r[i][1]);
          for (int j = 0; j < 3; ++j)
            gram(i, j) += w * (r[i][0] * r[j][0] + r[i][1] * r[j][1]);
        }
      }
    }
    c = gram.ldlt().solve(mom);
  }

  auto gradient = [&](double x, double y) {
    auto gv = grad_v(x, y);
    if (orthogonalize_rm)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) gv[i][j] -= c[2] * rot_grad[i][j];
    return gv;
  };

  // (eps(v), eps(phi)) right-hand side
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(sp.n_vector + 3);
  for (size_t t = 0; t < sp.tri_nodes.size(); ++t) {
    const TriGeom g = tri_geometry(sp.mesh, static_cast<int>(t));
    const auto& nodes = sp.tri_nodes[t];
    for (const auto& q : rule.points) {
      double xq[2];
      phys_point(g, q.x, q.y, xq);
      const auto gv = gradient(xq[0], xq[1]);
      const double eps[2][2] = {{gv[0][0], 0.5 * (gv[0][1] + gv[1][0])},
                                {0.5 * (gv[0][1] + gv[1][0]), gv[1][1]}};
      const P2Basis b = eval_p2(q.x, q.y);
      const double w = q.w * g.det;
      for (int a = 0; a < 6; ++a) {
        double gp[2];
        phys_grad(g, b.grad[a], gp);
        for (int comp = 0; comp < 2; ++comp)
          rhs[2 * nodes[a] + comp] += w * (eps[comp][0] * gp[0] + eps[comp][1] * gp[1]);
      }
    }
  }

  const SparseMat A1 = assemble_a(sp, 1.0);
  const SparseMat M2 = assemble_vector_mass(sp);
  const SparseMat R = rm_constraint_rows(sp, M2);

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(A1.nonZeros() + 2 * R.nonZeros());
  for (int k = 0; k < A1.outerSize(); ++k)
    for (SparseMat::InnerIterator it(A1, k); it; ++it)
      trips.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  for (int k = 0; k < R.outerSize(); ++k)
    for (SparseMat::InnerIterator it(R, k); it; ++it) {
      trips.emplace_back(sp.n_vector + static_cast<int>(it.row()), static_cast<int>(it.col()),
                         it.value());
      trips.emplace_back(static_cast<int>(it.col()), sp.n_vector + static_cast<int>(it.row()),
                         it.value());
    }
  SparseMat S(sp.n_vector + 3, sp.n_vector + 3);
  S.setFromTriplets(trips.begin(), trips.end());
  S.makeCompressed();

  const Eigen::VectorXd sol = solve_saddle(S, rhs, {0, sp.n_vector, sp.n_vector + 3});
  return {sol.head(sp.n_vector), ProjectionOp::rh};
}

ProjectedField project_sh(const SpacePair& sp, const SpatialScalarFn& f,
                          const SpatialVectorFn& grad_f) {
  if (!f || !grad_f) throw std::invalid_argument("project_sh: field and gradient required");

  const QuadRule rule = quadrature_rule(6);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(sp.n_scalar + 1);
  for (size_t t = 0; t < sp.tri_nodes.size(); ++t) {
    const TriGeom g = tri_geometry(sp.mesh, static_cast<int>(t));
    const auto& tri = sp.mesh.triangles[t];
    for (const auto& q : rule.points) {
      double xq[2];
      phys_point(g, q.x, q.y, xq);
      const auto gf = grad_f(xq[0], xq[1]);
      const P1Basis b = eval_p1(q.x, q.y);
      const double w = q.w * g.det;
      for (int i = 0; i < 3; ++i) {
        double gp[2];
        phys_grad(g, b.grad[i], gp);
        rhs[tri[i]] += w * (gf[0] * gp[0] + gf[1] * gp[1]);
      }
      rhs[sp.n_scalar] += w * f(xq[0], xq[1]);
    }
  }

  const SparseMat K1 = assemble_diffusion(sp, Eigen::Matrix2d::Identity(), 1.0);
  const SparseMat M1 = assemble_scalar_mass(sp, 1.0);
  const Eigen::VectorXd mean_row = M1 * Eigen::VectorXd::Ones(sp.n_scalar);

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(K1.nonZeros() + 2 * sp.n_scalar);
  for (int k = 0; k < K1.outerSize(); ++k)
    for (SparseMat::InnerIterator it(K1, k); it; ++it)
      trips.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  for (int i = 0; i < sp.n_scalar; ++i) {
    trips.emplace_back(sp.n_scalar, i, mean_row[i]);
    trips.emplace_back(i, sp.n_scalar, mean_row[i]);
  }
  SparseMat S(sp.n_scalar + 1, sp.n_scalar + 1);
  S.setFromTriplets(trips.begin(), trips.end());
  S.makeCompressed();

  const Eigen::VectorXd sol = solve_saddle(S, rhs, {0, sp.n_scalar, sp.n_scalar + 1});
  return {sol.head(sp.n_scalar), ProjectionOp::sh};
}

ProjectedField project_qh(const SpacePair& sp, const SpatialScalarFn& f) {
  if (!f) throw std::invalid_argument("project_qh: field required");

  const QuadRule rule = quadrature_rule(6);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(sp.n_scalar);
  for (size_t t = 0; t < sp.tri_nodes.size(); ++t) {
    const TriGeom g = tri_geometry(sp.mesh, static_cast<int>(t));
    const auto& tri = sp.mesh.triangles[t];
    for (const auto& q : rule.points) {
      double xq[2];
      phys_point(g, q.x, q.y, xq);
      const double fv = f(xq[0], xq[1]);
      const P1Basis b = eval_p1(q.x, q.y);
      const double w = q.w * g.det;
      for (int i = 0; i < 3; ++i) rhs[tri[i]] += w * fv * b.val[i];
    }
  }

  const SparseMat M1 = assemble_scalar_mass(sp, 1.0);
  return {solve_spd(M1, rhs), ProjectionOp::qh};
}

}  // namespace poromr
