#pragma once

#include <Eigen/Dense>

#include "poromr/fields.hpp"
#include "poromr/spaces.hpp"

namespace poromr {

enum class ProjectionOp { rh, sh, qh };

struct ProjectedField {
  Eigen::VectorXd coeffs;
  ProjectionOp op = ProjectionOp::qh;
};

// Strain-elliptic projection onto the rigid-motion-orthogonal P2 subspace:
// (eps(Rv - v), eps(w)) = 0 plus (Rv, r) = 0 for the three rigid motions,
// enforced with Lagrange multipliers. With orthogonalize_rm the input is
// first L2-orthogonalized against the rigid motions.
ProjectedField project_rh(const SpacePair& sp, const SpatialVectorFn& v,
                          const SpatialMatrixFn& grad_v, bool orthogonalize_rm = true);

// Gradient-elliptic projection onto P1 with matching mean:
// (grad(Sf - f), grad w) = 0, (Sf, 1) = (f, 1).
ProjectedField project_sh(const SpacePair& sp, const SpatialScalarFn& f,
                          const SpatialVectorFn& grad_f);

// L2 projection onto continuous P1.
ProjectedField project_qh(const SpacePair& sp, const SpatialScalarFn& f);

}  // namespace poromr
