#pragma once

#include <Eigen/Sparse>
#include <array>
#include <vector>

#include "poromr/fields.hpp"
#include "poromr/params.hpp"
#include "poromr/quadrature.hpp"
#include "poromr/spaces.hpp"

namespace poromr {

using SparseMat = Eigen::SparseMatrix<double>;

enum class BcKind { dirichlet, neumann };

// Boundary condition kind per segment (index tag-1) and per field. Vector
// Neumann data is the total traction, used componentwise on segments where
// that displacement component is free; scalar Neumann data is the fluid flux.
struct BoundaryPlan {
  std::array<BcKind, 4> ux{BcKind::neumann, BcKind::neumann, BcKind::neumann, BcKind::neumann};
  std::array<BcKind, 4> uy{BcKind::neumann, BcKind::neumann, BcKind::neumann, BcKind::neumann};
  std::array<BcKind, 4> p{BcKind::neumann, BcKind::neumann, BcKind::neumann, BcKind::neumann};

  bool any_u_dirichlet() const;
  bool any_p_dirichlet() const;
};

// mu * (eps(u), eps(v)) on the P2 vector space.
SparseMat assemble_a(const SpacePair& sp, double mu);

// B(i,j) = -(div phi_j, psi_i); rows scalar, columns vector.
SparseMat assemble_b(const SpacePair& sp);

// coeff * (p, q) on the P1 scalar space (c-form for coeff = kappa3).
SparseMat assemble_scalar_mass(const SpacePair& sp, double coeff);

// P2 vector mass matrix.
SparseMat assemble_vector_mass(const SpacePair& sp);

// (1/mu_f) * (K grad p, grad q) on the P1 scalar space; K must be SPD.
SparseMat assemble_diffusion(const SpacePair& sp, const Eigen::Matrix2d& K, double mu_f);

// Volume load (f, v) plus boundary traction <f1, v> over segments whose
// component is Neumann in the plan. Element integrals use the given rule.
Eigen::VectorXd assemble_vector_load(const SpacePair& sp, const VectorFn& f,
                                     const VectorFn& traction, const BoundaryPlan& plan,
                                     double t, const QuadRule& rule);

// Volume source (phi, w) plus boundary flux <phi1, w> over Neumann-p segments
// plus the gravity term (K rho_f g / mu_f, grad w).
Eigen::VectorXd assemble_scalar_load(const SpacePair& sp, const ScalarFn& source,
                                     const ScalarFn& flux, const BoundaryPlan& plan,
                                     const PhysicalParams& pp, double t, const QuadRule& rule);

// Constrained dof lists (sorted, unique). A node on any Dirichlet segment for
// the field is constrained (corners may belong to two segments).
std::vector<int> dirichlet_vector_dofs(const SpacePair& sp, const BoundaryPlan& plan);
std::vector<int> dirichlet_scalar_dofs(const SpacePair& sp, const BoundaryPlan& plan);

// Dirichlet values by nodal interpolation of g at the constrained dofs.
Eigen::VectorXd dirichlet_vector_values(const SpacePair& sp, const std::vector<int>& dofs,
                                        const VectorFn& g, double t);
Eigen::VectorXd dirichlet_scalar_values(const SpacePair& sp, const std::vector<int>& dofs,
                                        const ScalarFn& g, double t);

// Symmetric elimination in place: zero rows/columns, unit diagonal, rhs
// adjusted so constrained dofs solve to their values exactly.
void apply_dirichlet(SparseMat& A, Eigen::VectorXd& b, const std::vector<int>& dofs,
                     const Eigen::VectorXd& values);

// Precomputed elimination for systems whose matrix is reused across steps:
// `constrained` has unit diagonals on the constrained dofs, `coupling` keeps
// the original columns so the rhs can be adjusted per step.
struct ConstrainedOperator {
  SparseMat constrained;
  SparseMat coupling;  // full_size x dofs.size()
  std::vector<int> dofs;

  Eigen::VectorXd adjust_rhs(const Eigen::VectorXd& b, const Eigen::VectorXd& values) const;
};
ConstrainedOperator constrain(const SparseMat& A, const std::vector<int>& dofs);

// Rigid-motion constraint rows (3 x n_vector), weighted by the P2 vector mass
// matrix: row r, column j = (phi_j, r)_L2.
SparseMat rm_constraint_rows(const SpacePair& sp, const SparseMat& vector_mass);

}  // namespace poromr
