#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "poromr/cases.hpp"
#include "poromr/linsolve.hpp"
#include "poromr/timegrid.hpp"

namespace poromr {

// Advisory (never fatal) check of the decoupled scheme's time-step
// restriction: theta = 0 wants dt = O(h^2). Triggered when dt exceeds either
// the dimensionless bound h^2 or the parameter-weighted surrogate bound
// mu_f * beta^2 h^2 / (mu kappa1^2 K_max m^2), beta = 0.1.
struct StabilityAdvisory {
  bool triggered = false;
  double dt = 0, mesh_h = 0;
  double bound_h2 = 0, bound_physical = 0;
  std::string message;
};
StabilityAdvisory stability_advisory(const TimeGrid& grid, double h, const PhysicalParams& pp);

struct SolverOptions {
  // record coarse (p, q) with the window-start eta, mirroring the scheme's
  // displayed theta = 0 update; affects recorded snapshots only
  bool lagged_pressure_update = false;
  double fixed_point_tol = 1e-10;  // relative, theta = 1 window coupling
  int fixed_point_max_iter = 50;
};

struct CoarseSnapshot {
  double time = 0;
  Eigen::VectorXd u, xi, eta, p, q;
};

struct Trajectory {
  TimeGrid grid;
  std::vector<CoarseSnapshot> coarse;                  // n_windows + 1 entries
  std::vector<std::vector<Eigen::VectorXd>> fine_eta;  // [window][k], k = 0..m
  std::vector<std::vector<Eigen::VectorXd>> fine_p;    // [window][k-1], k = 1..m
  double setup_seconds = 0, loop_seconds = 0;
  long stokes_solves = 0, diffusion_solves = 0, fixed_point_iters = 0;
  StabilityAdvisory advisory;
};

struct State {
  int window = 0;
  double time = 0;
  Eigen::VectorXd u, xi, eta, p, q;
};

// Multirate solver for the reformulated problem: per coarse window one
// generalized Stokes solve for (u, xi) and m backward-Euler diffusion steps
// for eta; theta = 1 couples the two by a fixed-point iteration. All
// time-independent operators are assembled and factorized once.
class MultirateSolver {
 public:
  MultirateSolver(CaseDefinition c, int n, TimeGrid grid, SolverOptions opts = {});

  State init_state() const;

  // generalized Stokes solve at time t; returns (u, xi)
  std::pair<Eigen::VectorXd, Eigen::VectorXd> coarse_step_stokes(const Eigen::VectorXd& eta_in,
                                                                 double t) const;

  // one fine diffusion step at time t with xi frozen; pressure Dirichlet data
  // enters through the state relation eta = c0*p + alpha*q with q held at its
  // window-start value q_start, which keeps the boundary update well
  // conditioned when the storage coefficient is small
  Eigen::VectorXd fine_step_diffusion(const Eigen::VectorXd& eta_prev,
                                      const Eigen::VectorXd& xi,
                                      const Eigen::VectorXd& q_start, double t) const;

  // Step-3 recovery: fine pressures kappa1*xi + kappa2*eta_k for k = 1..m
  std::vector<Eigen::VectorXd> update_pq(const Eigen::VectorXd& xi,
                                         const std::vector<Eigen::VectorXd>& fine_eta) const;

  // one coarse window in place; records snapshots and counters when out != null
  void advance_coarse(State& s, Trajectory* out) const;

  Trajectory run() const;

  const SpacePair& spaces() const { return sp_; }
  const CaseDefinition& problem() const { return case_; }
  const TimeGrid& grid() const { return grid_; }
  const SolverOptions& options() const { return opts_; }
  Kappas kappas() const { return kap_; }
  const StabilityAdvisory& advisory() const { return advisory_; }
  bool rm_constraints_active() const { return rm_; }
  // no Dirichlet data on any field and no gravity: the setting in which the
  // energy identity and the mass-balance identity are exact
  bool pure_neumann() const;

  const SparseMat& op_a() const { return A_; }
  const SparseMat& op_b() const { return B_; }
  const SparseMat& mass_scalar() const { return M1_; }
  const SparseMat& mass_vector() const { return M2_; }
  const SparseMat& diffusion_op() const { return D_; }

  Eigen::VectorXd vector_load(double t) const;
  Eigen::VectorXd scalar_load(double t) const;

 private:
  CaseDefinition case_;
  SpacePair sp_;
  TimeGrid grid_;
  SolverOptions opts_;
  Kappas kap_;
  bool rm_ = false;

  SparseMat A_, B_, M1_, M2_, D_;
  int n_u_ = 0, n_s_ = 0, n_sys_ = 0;

  ConstrainedOperator stokes_con_;
  std::unique_ptr<SaddleSolver> stokes_;
  std::vector<int> u_dir_dofs_;

  ConstrainedOperator fine_con_;
  std::unique_ptr<SpdSolver> fine_;
  std::vector<int> p_dir_dofs_;

  StabilityAdvisory advisory_;
  double setup_seconds_ = 0;
};

}  // namespace poromr
