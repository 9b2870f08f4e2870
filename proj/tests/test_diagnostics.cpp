#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "poromr/diagnostics.hpp"
#include "poromr/projections.hpp"
#include "support/testutil.hpp"

using namespace poromr;

namespace {

CaseDefinition decaying_neumann() {
  // sealed domain, no sources, nonzero zero-mean initial pressure: the
  // discrete energy must dissipate monotonically
  CaseDefinition c = verification_neumann();
  c.source = [](double, double, double) { return 0.0; };
  c.p0 = [](double x, double y) {
    return std::cos(std::numbers::pi * x) * std::cos(std::numbers::pi * y);
  };
  return c;
}

}  // namespace

TEST_CASE("energy identity holds on the sealed injection problem") {
  for (int theta : {0, 1})
    for (int m : {1, 3}) {
      const TimeGrid grid{1e-3, m, m * 10e-3, theta};
      const MultirateSolver solver(verification_neumann(), 4, grid);
      const Trajectory traj = solver.run();
      const EnergyReport rep = energy_report(solver, traj);

      REQUIRE(rep.applicable);
      const size_t L = traj.coarse.size() - 1;
      CHECK(rep.J.size() == L + 1);
      CHECK(rep.S_cumulative.size() == L);
      CHECK(rep.residual.size() == L);
      CHECK(rep.J[0] == 0.0);  // zero initial data
      CHECK(rep.max_residual <= 1e-8);
    }
}

TEST_CASE("energy dissipates monotonically without sources") {
  const MultirateSolver solver(decaying_neumann(), 4, TimeGrid{1e-3, 2, 10e-3, 1});
  const Trajectory traj = solver.run();
  const EnergyReport rep = energy_report(solver, traj);

  REQUIRE(rep.applicable);
  CHECK(rep.max_residual <= 1e-8);
  CHECK(rep.J[0] > 0.0);
  for (size_t i = 1; i < rep.S_cumulative.size(); ++i)
    CHECK(rep.S_cumulative[i] >= rep.S_cumulative[i - 1] - 1e-12 * rep.scale);
  for (size_t l = 1; l < rep.J.size(); ++l)
    CHECK(rep.J[l] <= rep.J[l - 1] + 1e-10 * rep.scale);

  // window increments add up to the total drop
  double s = 0.0;
  const int L = static_cast<int>(traj.coarse.size()) - 1;
  for (int n = 0; n < L; ++n) s += energy_S_increment(solver, traj, n);
  CHECK(std::abs(rep.J[0] - rep.J[L] - s) <= 1e-8 * rep.scale);
}

TEST_CASE("energy functional evaluates the quadratic form") {
  const MultirateSolver solver(verification_neumann(), 3, TimeGrid{1e-3, 2, 6e-3, 1});
  const Trajectory traj = solver.run();
  const Kappas kap = solver.kappas();
  const int l = 2;
  const auto& s = traj.coarse[l];

  const double direct = 0.5 * (s.u.dot(solver.op_a() * s.u) +
                               kap.k2 * s.eta.dot(solver.mass_scalar() * s.eta) +
                               kap.k3 * s.xi.dot(solver.mass_scalar() * s.xi)) -
                        solver.vector_load(0.0).dot(s.u);
  CHECK(energy_J(solver, traj, l) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("energy and balance reports deactivate off the sealed setting") {
  const MultirateSolver dirichlet(test1_manufactured(), 3, TimeGrid{1e-3, 1, 2e-3, 0});
  const Trajectory traj = dirichlet.run();
  CHECK_FALSE(energy_report(dirichlet, traj).applicable);
  CHECK_FALSE(energy_report(dirichlet, traj).note.empty());
  CHECK_FALSE(conservation_report(dirichlet, traj).applicable);

  // time-dependent source: balance still gated off for the energy identity
  CaseDefinition wobble = verification_neumann();
  wobble.source = [](double, double, double t) { return 1.0 + std::sin(t); };
  const MultirateSolver ws(wobble, 3, TimeGrid{1e-3, 1, 2e-3, 0});
  const Trajectory wt = ws.run();
  const EnergyReport wrep = energy_report(ws, wt);
  CHECK_FALSE(wrep.applicable);
  CHECK_FALSE(wrep.note.empty());

  // gravity breaks the sealed assumption as well
  CaseDefinition grav = verification_neumann();
  grav.params.rho_f = 1.0;
  grav.params.g = Eigen::Vector2d(0.0, -9.81);
  const MultirateSolver gs(grav, 3, TimeGrid{1e-3, 1, 2e-3, 0});
  CHECK_FALSE(energy_report(gs, gs.run()).applicable);
}

TEST_CASE("mass balance tracks the injected volume for every m") {
  for (int m : {1, 2, 5}) {
    const MultirateSolver solver(verification_neumann(), 4, TimeGrid{1e-3, m, 0.02, 0});
    const Trajectory traj = solver.run();
    const ConservationReport rep = conservation_report(solver, traj);
    REQUIRE(rep.applicable);
    CHECK(rep.eta_residual.size() == traj.coarse.size());
    CHECK(rep.max_eta_residual <= 1e-10);
    for (double v : rep.xi_drift) CHECK(std::isfinite(v));
    for (double v : rep.u_flux_drift) CHECK(std::isfinite(v));
  }
}

TEST_CASE("boundary flux of vertex-interpolated fields") {
  const SpacePair sp = build_spaces(build_unit_square_mesh(4));
  const Eigen::VectorXd vx = testutil::interp_p2_vector(
      sp, [](double x, double) { return std::array<double, 2>{x, 0}; });
  CHECK(boundary_normal_flux(sp, vx) == doctest::Approx(1.0).epsilon(1e-13));

  const Eigen::VectorXd vq = testutil::interp_p2_vector(
      sp, [](double x, double y) { return std::array<double, 2>{x * x, x * y}; });
  CHECK(boundary_normal_flux(sp, vq) == doctest::Approx(1.5).epsilon(1e-13));
}

TEST_CASE("discrete field norms: reference values and norm axioms") {
  const SpacePair sp = build_spaces(build_unit_square_mesh(3));

  const Eigen::VectorXd vx = testutil::interp_p2_vector(
      sp, [](double x, double) { return std::array<double, 2>{x, 0}; });
  CHECK(p2_field_l2(sp, vx) == doctest::Approx(std::sqrt(1.0 / 3)).epsilon(1e-13));
  CHECK(p2_field_h1(sp, vx) == doctest::Approx(std::sqrt(4.0 / 3)).epsilon(1e-13));

  const Eigen::VectorXd px = testutil::interp_p1(sp, [](double x, double) { return x; });
  CHECK(p1_field_l2(sp, px) == doctest::Approx(std::sqrt(1.0 / 3)).epsilon(1e-13));
  CHECK(p1_field_h1_weighted(sp, px, 2.0 * Eigen::Matrix2d::Identity(), 4.0) ==
        doctest::Approx(std::sqrt(1.0 / 3 + 0.5)).epsilon(1e-13));

  std::mt19937 rng(23);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd a(sp.n_vector), b(sp.n_vector);
    for (int i = 0; i < sp.n_vector; ++i) {
      a[i] = gauss(rng);
      b[i] = gauss(rng);
    }
    const double na = p2_field_l2(sp, a), nb = p2_field_l2(sp, b);
    CHECK(p2_field_l2(sp, a + b) <= na + nb + 1e-12);
    CHECK(p2_field_l2(sp, 2.0 * a) == doctest::Approx(2.0 * na).epsilon(1e-13));
    CHECK(na > 0.0);
  }
  CHECK(p2_field_l2(sp, Eigen::VectorXd::Zero(sp.n_vector)) == 0.0);
}

TEST_CASE("pairwise convergence rates") {
  CHECK(convergence_rates({1e-2, 2.5e-3}, {0.2, 0.1})[0] == doctest::Approx(2.0).epsilon(1e-12));

  const std::vector<double> errs = {1.06336e-3, 9.00707e-5, 7.79098e-6, 6.87406e-7};
  const std::vector<double> hs = {0.18, 0.09, 0.045, 0.0225};
  const std::vector<double> rates = convergence_rates(errs, hs);
  REQUIRE(rates.size() == 3);
  CHECK(rates[0] == doctest::Approx(3.5614).epsilon(1e-4));
  CHECK(rates[1] == doctest::Approx(3.5312).epsilon(1e-4));
  CHECK(rates[2] == doctest::Approx(3.5026).epsilon(1e-4));

  // undefined entries become NaN markers
  const std::vector<double> with_zero = convergence_rates({1e-2, 0.0}, {0.2, 0.1});
  CHECK(std::isnan(with_zero[0]));
  const std::vector<double> same_h = convergence_rates({1e-2, 1e-3}, {0.1, 0.1});
  CHECK(std::isnan(same_h[0]));

  CHECK_THROWS_AS(convergence_rates({1.0}, {0.1}), std::invalid_argument);
  CHECK_THROWS_AS(convergence_rates({1.0, 2.0}, {0.1}), std::invalid_argument);
}

TEST_CASE("errors against the exact solution need an exact solution") {
  const MultirateSolver solver(test3_footing(), 2, TimeGrid{1e-3, 1, 1e-3, 0});
  const Trajectory traj = solver.run();
  CHECK_THROWS_AS(errors_vs_exact(solver, traj), std::invalid_argument);
}

TEST_CASE("manufactured-solution errors shrink under refinement") {
  const CaseDefinition c = test1_manufactured();
  ErrorTable coarse, fine;
  for (int n : {4, 8}) {
    const MultirateSolver solver(c, n, TimeGrid{1e-4, 1, 1e-3, 0});
    const ErrorTable e = errors_vs_exact(solver, solver.run());
    if (n == 4)
      coarse = e;
    else
      fine = e;
  }
  CHECK(fine.u_linf_l2 < coarse.u_linf_l2);
  CHECK(fine.u_linf_h1 < coarse.u_linf_h1);
  CHECK(fine.p_l2_l2 < coarse.p_l2_l2);
  CHECK(fine.p_l2_h1 < coarse.p_l2_h1);
  CHECK(select_norm(fine, ErrorNorm::u_linf_l2) == fine.u_linf_l2);
  CHECK(select_norm(fine, ErrorNorm::p_l2_h1) == fine.p_l2_h1);
}

TEST_CASE("self-convergence errors vanish when both runs represent the same field") {
  // fill both trajectories with interpolants of one global polynomial; the
  // nested-mesh transfer must then see a difference of exactly zero
  const CaseDefinition c = test3_footing();
  const TimeGrid grid{1e-3, 1, 3e-3, 0};
  const MultirateSolver solver(c, 4, grid);
  const MultirateSolver ref(c, 8, grid);
  Trajectory traj = solver.run();
  Trajectory ref_traj = ref.run();

  const SpatialVectorFn u_poly = [](double x, double y) {
    return std::array<double, 2>{x * x + 0.5 * x * y, y * y - x};
  };
  const SpatialScalarFn p_poly = [](double x, double y) { return 1 + x - 2 * y; };

  auto fill = [&](const MultirateSolver& s, Trajectory& t) {
    const Eigen::VectorXd u = testutil::interp_p2_vector(s.spaces(), u_poly);
    const Eigen::VectorXd p = testutil::interp_p1(s.spaces(), p_poly);
    for (auto& snap : t.coarse) {
      snap.u = u;
      snap.p = p;
      snap.xi = p;
      snap.eta = p;
    }
    for (auto& window : t.fine_eta)
      for (auto& v : window) v = p;
    for (auto& window : t.fine_p)
      for (auto& v : window) v = p;
  };
  fill(solver, traj);
  fill(ref, ref_traj);

  const ErrorTable e = errors_vs_reference(solver, traj, ref, ref_traj);
  CHECK(e.u_linf_l2 <= 1e-12);
  CHECK(e.u_linf_h1 <= 1e-11);
  CHECK(e.p_l2_l2 <= 1e-12);
  CHECK(e.p_l2_h1 <= 1e-11);
  CHECK(e.xi_linf_l2 <= 1e-12);
  CHECK(e.eta_linf_l2 <= 1e-12);
}

TEST_CASE("self-convergence preconditions") {
  const CaseDefinition c = test3_footing();
  const MultirateSolver solver(c, 4, TimeGrid{1e-3, 1, 2e-3, 0});
  const Trajectory traj = solver.run();

  // reference must be single-rate
  const MultirateSolver bad_m(c, 8, TimeGrid{1e-3, 2, 2e-3, 0});
  const Trajectory bad_m_traj = bad_m.run();
  CHECK_THROWS_AS(errors_vs_reference(solver, traj, bad_m, bad_m_traj), std::invalid_argument);

  // reference mesh must be a proper refinement
  const MultirateSolver bad_n(c, 6, TimeGrid{1e-3, 1, 2e-3, 0});
  const Trajectory bad_n_traj = bad_n.run();
  CHECK_THROWS_AS(errors_vs_reference(solver, traj, bad_n, bad_n_traj), std::invalid_argument);

  // horizons must match
  const MultirateSolver bad_t(c, 8, TimeGrid{1e-3, 1, 3e-3, 0});
  const Trajectory bad_t_traj = bad_t.run();
  CHECK_THROWS_AS(errors_vs_reference(solver, traj, bad_t, bad_t_traj), std::invalid_argument);
}
