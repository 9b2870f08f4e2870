#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "poromr/errors.hpp"
#include "poromr/projections.hpp"
#include "poromr/scheme.hpp"

using namespace poromr;

namespace {

CaseDefinition zero_source_neumann() {
  CaseDefinition c = verification_neumann();
  c.source = [](double, double, double) { return 0.0; };
  return c;
}

double m1_norm(const MultirateSolver& s, const Eigen::VectorXd& v) {
  return std::sqrt(v.dot(s.mass_scalar() * v));
}

double m2_norm(const MultirateSolver& s, const Eigen::VectorXd& v) {
  return std::sqrt(v.dot(s.mass_vector() * v));
}

}  // namespace

TEST_CASE("time grid validation") {
  CHECK_NOTHROW(validate(TimeGrid{1e-3, 5, 0.1, 0}));
  CHECK(TimeGrid{1e-3, 5, 0.1, 0}.n_windows() == 20);
  CHECK(TimeGrid{1e-3, 5, 0.1, 0}.n_fine() == 100);
  CHECK(TimeGrid{2.5e-4, 1, 1e-3, 1}.n_windows() == 4);

  CHECK_THROWS_AS(validate(TimeGrid{0.0, 1, 1.0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(TimeGrid{1e-3, 0, 1.0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(TimeGrid{1e-3, 1, 0.0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(TimeGrid{1e-3, 1, 1.0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(validate(TimeGrid{1e-3, 3, 0.01, 0}), std::invalid_argument);  // 10/3 windows
}

TEST_CASE("stability advisory fires only for the decoupled scheme on large steps") {
  const PhysicalParams pp = params_from_young_poisson(1e-4, 0.4, 1e-5, 0.83, 1e-5);
  const double h = std::sqrt(2.0) / 8.0;

  const StabilityAdvisory warn = stability_advisory(TimeGrid{0.05, 1, 0.1, 0}, h, pp);
  CHECK(warn.triggered);
  CHECK_FALSE(warn.message.empty());
  CHECK(warn.bound_h2 == doctest::Approx(h * h).epsilon(1e-12));

  CHECK_FALSE(stability_advisory(TimeGrid{0.05, 1, 0.1, 1}, h, pp).triggered);
  CHECK_FALSE(stability_advisory(TimeGrid{1e-4, 1, 0.01, 0}, h, pp).triggered);

  const MultirateSolver solver(test1_manufactured(), 8, TimeGrid{0.05, 1, 0.1, 0});
  CHECK(solver.advisory().triggered);
}

TEST_CASE("initialization projects the initial data") {
  const CaseDefinition c = test1_manufactured();
  const MultirateSolver solver(c, 4, TimeGrid{1e-3, 1, 1e-3, 0});
  const State s = solver.init_state();

  CHECK(s.u.cwiseAbs().maxCoeff() <= 1e-13);  // u0 = 0
  const Eigen::VectorXd qp0 = project_qh(solver.spaces(), c.p0).coeffs;
  CHECK((s.eta - c.params.c0 * qp0).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK((s.xi - c.params.alpha * qp0).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK((c.params.c0 * s.p + c.params.alpha * s.q - s.eta).cwiseAbs().maxCoeff() <= 1e-13);

  // the projection preserves the data's mean value
  const double mean_h = (solver.mass_scalar() * qp0).sum();
  const double mean_exact = 2.0 * std::sin(1.0) - std::sin(2.0);
  CHECK(mean_h == doctest::Approx(mean_exact).epsilon(1e-9));
}

TEST_CASE("zero data stays exactly zero for both couplings") {
  const CaseDefinition c = zero_source_neumann();
  for (int theta : {0, 1}) {
    const MultirateSolver solver(c, 3, TimeGrid{1e-3, 3, 9e-3, theta});
    const Trajectory traj = solver.run();
    REQUIRE(traj.coarse.size() == 4);
    for (const auto& snap : traj.coarse) {
      CHECK(snap.u.cwiseAbs().maxCoeff() <= 1e-13);
      CHECK(snap.eta.cwiseAbs().maxCoeff() <= 1e-13);
      CHECK(snap.xi.cwiseAbs().maxCoeff() <= 1e-13);
      CHECK(snap.p.cwiseAbs().maxCoeff() <= 1e-13);
    }
  }
}

TEST_CASE("trajectory shape and counters") {
  const MultirateSolver solver(verification_neumann(), 3, TimeGrid{1e-3, 4, 12e-3, 0});
  const Trajectory traj = solver.run();

  CHECK(traj.coarse.size() == 4);  // 3 windows + initial state
  CHECK(traj.fine_eta.size() == 3);
  CHECK(traj.fine_p.size() == 3);
  for (const auto& w : traj.fine_eta) CHECK(w.size() == 5);  // k = 0..m
  for (const auto& w : traj.fine_p) CHECK(w.size() == 4);    // k = 1..m
  for (size_t l = 1; l < traj.coarse.size(); ++l)
    CHECK(traj.coarse[l].time > traj.coarse[l - 1].time);
  CHECK(traj.coarse.back().time == doctest::Approx(12e-3).epsilon(1e-12));

  CHECK(traj.stokes_solves == 3);
  CHECK(traj.diffusion_solves == 12);
  CHECK(traj.fixed_point_iters == 0);

  // single-window horizon
  const MultirateSolver one(verification_neumann(), 3, TimeGrid{1e-3, 4, 4e-3, 0});
  CHECK(one.run().coarse.size() == 2);
}

TEST_CASE("fine step: constant state is a steady state of the sealed problem") {
  const CaseDefinition c = zero_source_neumann();
  const MultirateSolver solver(c, 3, TimeGrid{1e-3, 1, 1e-3, 0});
  const int ns = solver.spaces().n_scalar;
  const Eigen::VectorXd eta_prev = Eigen::VectorXd::Constant(ns, 3.0);
  const Eigen::VectorXd xi = Eigen::VectorXd::Constant(ns, 2.0);
  const Eigen::VectorXd q0 = Eigen::VectorXd::Zero(ns);
  const Eigen::VectorXd eta = solver.fine_step_diffusion(eta_prev, xi, q0, 1e-3);
  CHECK((eta - eta_prev).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("fine steps conserve mass against the injected volume") {
  const MultirateSolver solver(verification_neumann(), 4, TimeGrid{1e-3, 3, 9e-3, 0});
  const Trajectory traj = solver.run();
  const SparseMat& M1 = solver.mass_scalar();
  const double inflow = solver.scalar_load(0.0).sum();
  CHECK(inflow == doctest::Approx(1.0).epsilon(1e-13));

  for (const auto& window : traj.fine_eta)
    for (size_t k = 1; k < window.size(); ++k) {
      const double gain = (M1 * (window[k] - window[k - 1])).sum();
      CHECK(gain == doctest::Approx(1e-3 * inflow).epsilon(1e-9));
    }
}

TEST_CASE("displacement stays orthogonal to the rigid motions on sealed problems") {
  const MultirateSolver solver(verification_neumann(), 4, TimeGrid{1e-3, 2, 8e-3, 0});
  CHECK(solver.rm_constraints_active());
  CHECK(solver.pure_neumann());
  const Trajectory traj = solver.run();
  const auto rm = rigid_motion_basis(solver.spaces());
  for (const auto& snap : traj.coarse) {
    const double scale = std::max(1.0, m2_norm(solver, snap.u));
    for (const auto& r : rm) CHECK(std::abs(r.dot(solver.mass_vector() * snap.u)) <= 1e-10 * scale);
  }
}

TEST_CASE("recovered pressure and volumetric strain satisfy the variable change") {
  const MultirateSolver solver(test1_manufactured(), 4, TimeGrid{1e-3, 2, 6e-3, 0});
  const Trajectory traj = solver.run();
  const auto& pp = solver.problem().params;
  for (const auto& snap : traj.coarse) {
    const Eigen::VectorXd eta_back = pp.c0 * snap.p + pp.alpha * snap.q;
    const Eigen::VectorXd xi_back = pp.alpha * snap.p - pp.lambda * snap.q;
    const double scale =
        std::max({1.0, snap.eta.cwiseAbs().maxCoeff(), snap.xi.cwiseAbs().maxCoeff()});
    CHECK((eta_back - snap.eta).cwiseAbs().maxCoeff() <= 1e-12 * scale);
    CHECK((xi_back - snap.xi).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  }

  // coarse-level recovery matches the last fine-level pressure
  for (size_t n = 0; n + 1 < traj.coarse.size(); ++n)
    CHECK((traj.coarse[n + 1].p - traj.fine_p[n].back()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("coarse eta differences telescope across the run") {
  const MultirateSolver solver(verification_neumann(), 3, TimeGrid{1e-3, 2, 8e-3, 0});
  const Trajectory traj = solver.run();
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(solver.spaces().n_scalar);
  for (size_t l = 1; l < traj.coarse.size(); ++l)
    acc += traj.coarse[l].eta - traj.coarse[l - 1].eta;
  const Eigen::VectorXd total = traj.coarse.back().eta - traj.coarse.front().eta;
  CHECK((acc - total).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("decoupled and coupled versions agree to first order in dt") {
  const CaseDefinition c = test1_manufactured();
  const double dt = 1e-4;
  const MultirateSolver s0(c, 8, TimeGrid{dt, 1, 10 * dt, 0});
  const MultirateSolver s1(c, 8, TimeGrid{dt, 1, 10 * dt, 1});
  const Trajectory t0 = s0.run();
  const Trajectory t1 = s1.run();

  const Eigen::VectorXd du = t0.coarse.back().u - t1.coarse.back().u;
  const double rel = m2_norm(s0, du) / m2_norm(s1, t1.coarse.back().u);
  CHECK(rel <= 10 * dt);

  CHECK(t1.fixed_point_iters >= 10);
  CHECK(t1.stokes_solves >= 10);
}

TEST_CASE("coupled window iteration respects its budget") {
  SolverOptions tight;
  tight.fixed_point_max_iter = 1;
  const MultirateSolver solver(test1_manufactured(), 4, TimeGrid{1e-3, 1, 1e-3, 1}, tight);
  CHECK_THROWS_AS(solver.run(), IterationError);

  // generous budget converges
  const MultirateSolver ok(test1_manufactured(), 4, TimeGrid{1e-3, 5, 1e-2, 1});
  CHECK_NOTHROW(ok.run());
}

TEST_CASE("window-lagged recovery variant only changes the recorded snapshots") {
  const CaseDefinition c = test1_manufactured();
  const TimeGrid grid{1e-3, 2, 6e-3, 0};
  SolverOptions lagged;
  lagged.lagged_pressure_update = true;

  const MultirateSolver base(c, 3, grid);
  const MultirateSolver alt(c, 3, grid, lagged);
  const Trajectory tb = base.run();
  const Trajectory ta = alt.run();
  const Kappas kap = base.kappas();

  for (size_t n = 0; n + 1 < ta.coarse.size(); ++n) {
    // marching quantities are identical
    CHECK((ta.coarse[n + 1].eta - tb.coarse[n + 1].eta).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((ta.coarse[n + 1].u - tb.coarse[n + 1].u).cwiseAbs().maxCoeff() <= 1e-14);

    // recorded pressure pairs the window-end xi with the window-start eta
    const Eigen::VectorXd expected =
        kap.k1 * ta.coarse[n + 1].xi + kap.k2 * ta.coarse[n].eta;
    CHECK((ta.coarse[n + 1].p - expected).cwiseAbs().maxCoeff() <= 1e-13);
  }
}
