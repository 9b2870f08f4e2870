#include "poromr/scheme.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "poromr/errors.hpp"
#include "poromr/projections.hpp"

namespace poromr {

namespace {
using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}
}  // namespace

int TimeGrid::n_windows() const {
  return static_cast<int>(std::llround(T / (m * dt)));
}

void validate(const TimeGrid& grid) {
  if (!(grid.dt > 0)) throw std::invalid_argument("time grid: dt must be positive");
  if (grid.m < 1) throw std::invalid_argument("time grid: m must be >= 1");
  if (!(grid.T > 0)) throw std::invalid_argument("time grid: T must be positive");
  if (grid.theta != 0 && grid.theta != 1)
    throw std::invalid_argument("time grid: theta must be 0 or 1");
  const double ratio = grid.T / (grid.m * grid.dt);
  const double rounded = std::llround(ratio);
  if (rounded < 1 || std::abs(ratio - rounded) > 1e-10 * std::max(1.0, ratio))
    throw std::invalid_argument("time grid: T must be an integer number of coarse windows");
}

StabilityAdvisory stability_advisory(const TimeGrid& grid, double h, const PhysicalParams& pp) {
  StabilityAdvisory adv;
  adv.dt = grid.dt;
  adv.mesh_h = h;
  adv.bound_h2 = h * h;

  const Kappas kap = pp.kappas();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(pp.K);
  const double k_max = es.eigenvalues().maxCoeff();
  const double beta = 0.1;  // surrogate inf-sup constant
  adv.bound_physical =
      pp.mu_f * beta * beta * h * h / (pp.mu * kap.k1 * kap.k1 * k_max * grid.m * grid.m);

  if (grid.theta == 0 && (grid.dt > adv.bound_h2 || grid.dt > adv.bound_physical)) {
    adv.triggered = true;
    std::ostringstream os;
    os << "stability advisory: theta=0 with dt=" << grid.dt << " exceeds h^2=" << adv.bound_h2
       << " or the parameter bound " << adv.bound_physical
       << "; the decoupled scheme wants dt = O(h^2)";
    adv.message = os.str();
  }
  return adv;
}

MultirateSolver::MultirateSolver(CaseDefinition c, int n, TimeGrid grid, SolverOptions opts)
    : case_(std::move(c)), grid_(grid), opts_(opts) {
  const auto t0 = Clock::now();

  poromr::validate(grid_);
  poromr::validate(case_.params);
  if (opts_.fixed_point_tol <= 0 || opts_.fixed_point_max_iter < 1)
    throw std::invalid_argument("scheme: bad fixed-point options");

  sp_ = build_spaces(build_unit_square_mesh(n));
  kap_ = case_.params.kappas();
  rm_ = needs_rm_constraints(case_);

  A_ = assemble_a(sp_, case_.params.mu);
  B_ = assemble_b(sp_);
  M1_ = assemble_scalar_mass(sp_, 1.0);
  M2_ = assemble_vector_mass(sp_);
  D_ = assemble_diffusion(sp_, case_.params.K, case_.params.mu_f);

  n_u_ = sp_.n_vector;
  n_s_ = sp_.n_scalar;
  n_sys_ = n_u_ + n_s_ + (rm_ ? 3 : 0);

  // saddle matrix [[A, B^T, R^T], [B, -k3 M1, 0], [R, 0, 0]]
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(A_.nonZeros() + 2 * B_.nonZeros() + M1_.nonZeros() + 6 * n_u_);
  for (int k = 0; k < A_.outerSize(); ++k)
    for (SparseMat::InnerIterator it(A_, k); it; ++it)
      trips.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  for (int k = 0; k < B_.outerSize(); ++k)
    for (SparseMat::InnerIterator it(B_, k); it; ++it) {
      const int i = static_cast<int>(it.row()), j = static_cast<int>(it.col());
      trips.emplace_back(n_u_ + i, j, it.value());
      trips.emplace_back(j, n_u_ + i, it.value());
    }
  for (int k = 0; k < M1_.outerSize(); ++k)
    for (SparseMat::InnerIterator it(M1_, k); it; ++it)
      trips.emplace_back(n_u_ + static_cast<int>(it.row()), n_u_ + static_cast<int>(it.col()),
                         -kap_.k3 * it.value());
  if (rm_) {
    const SparseMat R = rm_constraint_rows(sp_, M2_);
    for (int k = 0; k < R.outerSize(); ++k)
      for (SparseMat::InnerIterator it(R, k); it; ++it) {
        const int r = n_u_ + n_s_ + static_cast<int>(it.row());
        const int j = static_cast<int>(it.col());
        trips.emplace_back(r, j, it.value());
        trips.emplace_back(j, r, it.value());
      }
  }
  SparseMat S(n_sys_, n_sys_);
  S.setFromTriplets(trips.begin(), trips.end());
  S.makeCompressed();

  u_dir_dofs_ = dirichlet_vector_dofs(sp_, case_.plan);
  stokes_con_ = constrain(S, u_dir_dofs_);
  std::vector<int> offsets = {0, n_u_, n_u_ + n_s_};
  if (rm_) offsets.push_back(n_sys_);
  stokes_ = std::make_unique<SaddleSolver>(stokes_con_.constrained, offsets);

  // fine system M1/dt + k2 * D
  SparseMat F = M1_ * (1.0 / grid_.dt) + kap_.k2 * D_;
  F.makeCompressed();
  p_dir_dofs_ = dirichlet_scalar_dofs(sp_, case_.plan);
  fine_con_ = constrain(F, p_dir_dofs_);
  fine_ = std::make_unique<SpdSolver>(fine_con_.constrained);

  advisory_ = stability_advisory(grid_, sp_.mesh.h, case_.params);
  setup_seconds_ = seconds_since(t0);
}

bool MultirateSolver::pure_neumann() const {
  const bool no_gravity = case_.params.rho_f == 0.0 || case_.params.g.norm() == 0.0;
  return !case_.plan.any_u_dirichlet() && !case_.plan.any_p_dirichlet() && no_gravity;
}

Eigen::VectorXd MultirateSolver::vector_load(double t) const {
  return assemble_vector_load(sp_, case_.body_force, case_.traction, case_.plan, t,
                              quadrature_rule(4));
}

Eigen::VectorXd MultirateSolver::scalar_load(double t) const {
  return assemble_scalar_load(sp_, case_.source, case_.flux, case_.plan, case_.params, t,
                              quadrature_rule(4));
}

State MultirateSolver::init_state() const {
  State s;
  s.window = 0;
  s.time = 0.0;

  s.u = project_rh(sp_, case_.u0, case_.grad_u0, true).coeffs;
  const Eigen::VectorXd p0 = project_qh(sp_, case_.p0).coeffs;
  const Eigen::VectorXd q0 = project_qh(sp_, case_.q0).coeffs;
  auto [xi, eta] = to_reformulated(p0, q0, case_.params);
  s.xi = std::move(xi);
  s.eta = std::move(eta);
  s.p = p0;
  s.q = q0;
  return s;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> MultirateSolver::coarse_step_stokes(
    const Eigen::VectorXd& eta_in, double t) const {
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_sys_);
  rhs.head(n_u_) = vector_load(t);
  rhs.segment(n_u_, n_s_) = -kap_.k1 * (M1_ * eta_in);

  const Eigen::VectorXd vals = dirichlet_vector_values(sp_, u_dir_dofs_, case_.u_bc, t);
  rhs = stokes_con_.adjust_rhs(rhs, vals);
  const Eigen::VectorXd sol = stokes_->solve(rhs);
  return {sol.head(n_u_), sol.segment(n_u_, n_s_)};
}

Eigen::VectorXd MultirateSolver::fine_step_diffusion(const Eigen::VectorXd& eta_prev,
                                                     const Eigen::VectorXd& xi,
                                                     const Eigen::VectorXd& q_start,
                                                     double t) const {
  Eigen::VectorXd rhs = (1.0 / grid_.dt) * (M1_ * eta_prev) + scalar_load(t);
  rhs.noalias() -= kap_.k1 * (D_ * xi);

  // Boundary values via eta = c0*p + alpha*q. Dividing the pressure data by
  // kappa2 instead would multiply any xi boundary error by kappa1/kappa2,
  // which destabilizes the window update for small storage coefficients.
  Eigen::VectorXd vals(static_cast<int>(p_dir_dofs_.size()));
  for (size_t i = 0; i < p_dir_dofs_.size(); ++i) {
    const int d = p_dir_dofs_[i];
    const double pd = case_.p_bc ? case_.p_bc(sp_.nodes[d][0], sp_.nodes[d][1], t) : 0.0;
    vals[static_cast<int>(i)] = case_.params.c0 * pd + case_.params.alpha * q_start[d];
  }
  rhs = fine_con_.adjust_rhs(rhs, vals);
  return fine_->solve(rhs);
}

std::vector<Eigen::VectorXd> MultirateSolver::update_pq(
    const Eigen::VectorXd& xi, const std::vector<Eigen::VectorXd>& fine_eta) const {
  std::vector<Eigen::VectorXd> ps;
  ps.reserve(fine_eta.size() > 0 ? fine_eta.size() - 1 : 0);
  for (size_t k = 1; k < fine_eta.size(); ++k)
    ps.emplace_back(kap_.k1 * xi + kap_.k2 * fine_eta[k]);
  return ps;
}

void MultirateSolver::advance_coarse(State& s, Trajectory* out) const {
  const double t_end = s.time + grid_.m * grid_.dt;
  Eigen::VectorXd u, xi;
  std::vector<Eigen::VectorXd> etas;
  long stokes_count = 0, fine_count = 0, fp_iters = 0;

  auto run_fine_sweep = [&](const Eigen::VectorXd& xi_in) {
    std::vector<Eigen::VectorXd> list;
    list.reserve(grid_.m + 1);
    list.push_back(s.eta);
    for (int k = 1; k <= grid_.m; ++k) {
      list.push_back(fine_step_diffusion(list.back(), xi_in, s.q, s.time + k * grid_.dt));
      ++fine_count;
    }
    return list;
  };

  if (grid_.theta == 0) {
    std::tie(u, xi) = coarse_step_stokes(s.eta, t_end);
    ++stokes_count;
    etas = run_fine_sweep(xi);
  } else {
    Eigen::VectorXd guess = s.eta;
    bool converged = false;
    for (int it = 0; it < opts_.fixed_point_max_iter; ++it) {
      std::tie(u, xi) = coarse_step_stokes(guess, t_end);
      ++stokes_count;
      etas = run_fine_sweep(xi);
      ++fp_iters;
      const Eigen::VectorXd d = etas.back() - guess;
      const double dn = std::sqrt(d.dot(M1_ * d));
      const double sn = std::sqrt(etas.back().dot(M1_ * etas.back()));
      guess = etas.back();
      if (dn <= opts_.fixed_point_tol * std::max(1.0, sn)) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw IterationError("scheme: theta=1 fixed point did not converge within " +
                           std::to_string(opts_.fixed_point_max_iter) + " iterations");
  }

  const std::vector<Eigen::VectorXd> ps = update_pq(xi, etas);

  if (out) {
    out->fine_eta.push_back(etas);
    out->fine_p.push_back(ps);
    out->stokes_solves += stokes_count;
    out->diffusion_solves += fine_count;
    out->fixed_point_iters += fp_iters;
  }

  const Eigen::VectorXd eta_start = s.eta;
  s.u = std::move(u);
  s.xi = std::move(xi);
  s.eta = etas.back();
  s.p = ps.back();
  s.q = kap_.k1 * s.eta - kap_.k3 * s.xi;
  s.time = t_end;
  ++s.window;

  if (out) {
    CoarseSnapshot snap{s.time, s.u, s.xi, s.eta, s.p, s.q};
    if (opts_.lagged_pressure_update && grid_.theta == 0) {
      // recovery variant that pairs the window-end xi with the window-start
      // eta it was computed from
      snap.p = kap_.k1 * s.xi + kap_.k2 * eta_start;
      snap.q = kap_.k1 * eta_start - kap_.k3 * s.xi;
    }
    out->coarse.push_back(std::move(snap));
  }
}

Trajectory MultirateSolver::run() const {
  Trajectory out;
  out.grid = grid_;
  out.advisory = advisory_;

  const auto t_init = Clock::now();
  State s = init_state();
  out.setup_seconds = setup_seconds_ + seconds_since(t_init);

  out.coarse.push_back({0.0, s.u, s.xi, s.eta, s.p, s.q});

  const int windows = grid_.n_windows();
  const auto t_loop = Clock::now();
  for (int w = 0; w < windows; ++w) advance_coarse(s, &out);
  out.loop_seconds = seconds_since(t_loop);
  return out;
}

}  // namespace poromr
