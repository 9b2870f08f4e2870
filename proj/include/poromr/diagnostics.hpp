#pragma once

#include <string>
#include <vector>

#include "poromr/scheme.hpp"

namespace poromr {

// -------------------------------------------------------------------------
// Energy balance. J is the discrete energy functional, S the accumulated
// dissipation; the scheme satisfies J^l + S^{l-1} = J^0 exactly (up to solver
// residuals) on pure-Neumann cases with time-independent loads and zero
// initial data. For theta = 0 the functional pairs the window-end (u, xi)
// with the window-start eta, and the dissipation of window n integrates the
// hybrid pressure built from the previous window's fine eta history; the
// first window therefore contributes no fine terms.
// -------------------------------------------------------------------------

struct EnergyReport {
  bool applicable = false;
  std::string note;                   // why not applicable, when it is not
  std::vector<double> J;              // J^l, l = 0..L
  std::vector<double> S_cumulative;   // sum of window increments through window l-1, l = 1..L
  std::vector<double> residual;       // |J^l + S^{l-1} - J^0| / scale, l = 1..L
  double scale = 1;
  double max_residual = 0;
};

// Energy functional at coarse snapshot l of the trajectory.
double energy_J(const MultirateSolver& solver, const Trajectory& traj, int l);

// Dissipation contributed by window n (the transition from snapshot n to n+1).
double energy_S_increment(const MultirateSolver& solver, const Trajectory& traj, int n);

EnergyReport energy_report(const MultirateSolver& solver, const Trajectory& traj);

// -------------------------------------------------------------------------
// Discrete balance laws at coarse indices. The eta identity
//   (eta_h^{nm}, 1) = (eta_h^0, 1) + t_nm * [(phi, 1) + <phi1, 1>]
// telescopes the fine steps exactly on pure-Neumann cases (absolute
// residuals, gating). The xi and u identities are reported as informational
// deviations from their initial values: their derivation tests the momentum
// equation with affine fields outside the rigid-motion-orthogonal test
// space, so no tolerance is claimed.
// -------------------------------------------------------------------------

struct ConservationReport {
  bool applicable = false;
  std::string note;
  std::vector<double> eta_residual;  // per coarse snapshot, absolute
  double max_eta_residual = 0;
  std::vector<double> xi_drift;      // informational: |(xi^l,1) - (xi^0,1)|
  std::vector<double> u_flux_drift;  // informational: |<u^l . n, 1> - <u^0 . n, 1>|
};

ConservationReport conservation_report(const MultirateSolver& solver, const Trajectory& traj);

// Boundary flux <v . n, 1> of a P2 vector field over the whole boundary.
double boundary_normal_flux(const SpacePair& sp, const Eigen::VectorXd& coeffs);

// -------------------------------------------------------------------------
// Error norms. Displacement errors are L-infinity in time over the coarse
// snapshots, in L2 and in the full H1 norm; pressure errors are L2 in time
// over the fine steps (rectangle rule), in L2 and in the H1 norm whose
// gradient part carries the K/mu_f weight of the flow operator. xi and eta
// L-infinity-L2 errors are included for completeness.
// -------------------------------------------------------------------------

enum class ErrorNorm { u_linf_l2, u_linf_h1, p_l2_l2, p_l2_h1 };

struct ErrorTable {
  double u_linf_l2 = 0, u_linf_h1 = 0;
  double p_l2_l2 = 0, p_l2_h1 = 0;
  double xi_linf_l2 = 0, eta_linf_l2 = 0;
};

double select_norm(const ErrorTable& table, ErrorNorm which);

// Errors against the case's exact solution; throws if the case has none.
ErrorTable errors_vs_exact(const MultirateSolver& solver, const Trajectory& traj);

// Self-convergence errors against a reference run on a finer nested mesh.
// Requires the same dt and T and a single-rate reference (m = 1); integrals
// are evaluated on the reference mesh, where both fields are polynomial
// per cell, so the quadrature is exact.
ErrorTable errors_vs_reference(const MultirateSolver& solver, const Trajectory& traj,
                               const MultirateSolver& ref_solver, const Trajectory& ref_traj);

// Pairwise rates log(e_i/e_{i+1}) / log(h_i/h_{i+1}); entries are NaN when a
// rate is undefined (nonpositive error or nonincreasing h). Throws on length
// mismatch or fewer than two entries.
std::vector<double> convergence_rates(const std::vector<double>& errors,
                                      const std::vector<double>& hs);

// -------------------------------------------------------------------------
// Norms of discrete fields (quadrature evaluation, no assembled matrices);
// H1 norms include the L2 part.
// -------------------------------------------------------------------------

double p2_field_l2(const SpacePair& sp, const Eigen::VectorXd& coeffs);
double p2_field_h1(const SpacePair& sp, const Eigen::VectorXd& coeffs);
double p1_field_l2(const SpacePair& sp, const Eigen::VectorXd& coeffs);
double p1_field_h1_weighted(const SpacePair& sp, const Eigen::VectorXd& coeffs,
                            const Eigen::Matrix2d& K, double mu_f);

}  // namespace poromr
