#include "poromr/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "poromr/quadrature.hpp"

namespace poromr {

namespace {

inline void phys_grad(const TriGeom& g, const std::array<double, 2>& ref, double out[2]) {
  out[0] = g.inv_jt[0][0] * ref[0] + g.inv_jt[0][1] * ref[1];
  out[1] = g.inv_jt[1][0] * ref[0] + g.inv_jt[1][1] * ref[1];
}

inline void phys_point(const TriGeom& g, double xr, double yr, double out[2]) {
  out[0] = g.x0[0] + g.jac[0][0] * xr + g.jac[0][1] * yr;
  out[1] = g.x0[1] + g.jac[1][0] * xr + g.jac[1][1] * yr;
}

double quad_form(const SparseMat& M, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.dot(M * b);
}

struct EnergyContext {
  const SparseMat &A, &M1, &D;
  Eigen::VectorXd F, Phi;
  Kappas kap;
  double dt;
  int m, theta;
};

double energy_J_ctx(const EnergyContext& cx, const Trajectory& traj, int l) {
  const auto& snap = traj.coarse[static_cast<size_t>(l)];
  const int eta_idx = cx.theta == 1 ? l : std::max(l - 1, 0);
  const Eigen::VectorXd& eta = traj.coarse[static_cast<size_t>(eta_idx)].eta;
  return 0.5 * (quad_form(cx.A, snap.u, snap.u) + cx.kap.k2 * quad_form(cx.M1, eta, eta) +
                cx.kap.k3 * quad_form(cx.M1, snap.xi, snap.xi)) -
         cx.F.dot(snap.u);
}

double energy_S_ctx(const EnergyContext& cx, const Trajectory& traj, int n) {
  const auto& s0 = traj.coarse[static_cast<size_t>(n)];
  const auto& s1 = traj.coarse[static_cast<size_t>(n) + 1];
  const Eigen::VectorXd du = s1.u - s0.u;
  const Eigen::VectorXd dxi = s1.xi - s0.xi;
  double S = 0.5 * (quad_form(cx.A, du, du) + cx.kap.k3 * quad_form(cx.M1, dxi, dxi));

  if (cx.theta == 1) {
    const auto& etas = traj.fine_eta[static_cast<size_t>(n)];
    const auto& ps = traj.fine_p[static_cast<size_t>(n)];
    for (int k = 1; k <= cx.m; ++k) {
      const Eigen::VectorXd& p = ps[static_cast<size_t>(k) - 1];
      const Eigen::VectorXd de = etas[static_cast<size_t>(k)] - etas[static_cast<size_t>(k) - 1];
      S += cx.dt * (quad_form(cx.D, p, p) - cx.Phi.dot(p)) +
           0.5 * cx.kap.k2 * quad_form(cx.M1, de, de);
    }
  } else if (n >= 1) {
    // fine history of the previous window paired with this window's end xi
    const auto& etas = traj.fine_eta[static_cast<size_t>(n) - 1];
    for (int k = 1; k <= cx.m; ++k) {
      const Eigen::VectorXd p =
          cx.kap.k1 * s1.xi + cx.kap.k2 * etas[static_cast<size_t>(k)];
      const Eigen::VectorXd de = etas[static_cast<size_t>(k)] - etas[static_cast<size_t>(k) - 1];
      S += cx.dt * (quad_form(cx.D, p, p) - cx.Phi.dot(p) - cx.kap.k1 * quad_form(cx.D, dxi, p)) +
           0.5 * cx.kap.k2 * quad_form(cx.M1, de, de);
    }
  }
  return S;
}

EnergyContext make_energy_context(const MultirateSolver& solver) {
  const TimeGrid& g = solver.grid();
  return {solver.op_a(),      solver.mass_scalar(), solver.diffusion_op(),
          solver.vector_load(0.0), solver.scalar_load(0.0),
          solver.kappas(),    g.dt,                 g.m,
          g.theta};
}

bool loads_time_independent(const MultirateSolver& solver) {
  const double t_probe = 0.37 * solver.grid().T;
  const Eigen::VectorXd f0 = solver.vector_load(0.0), f1 = solver.vector_load(t_probe);
  const Eigen::VectorXd s0 = solver.scalar_load(0.0), s1 = solver.scalar_load(t_probe);
  const double fs = std::max(1.0, f0.norm()), ss = std::max(1.0, s0.norm());
  return (f1 - f0).norm() <= 1e-12 * fs && (s1 - s0).norm() <= 1e-12 * ss;
}

}  // namespace

double energy_J(const MultirateSolver& solver, const Trajectory& traj, int l) {
  if (l < 0 || static_cast<size_t>(l) >= traj.coarse.size())
    throw std::invalid_argument("energy_J: snapshot index out of range");
  return energy_J_ctx(make_energy_context(solver), traj, l);
}

double energy_S_increment(const MultirateSolver& solver, const Trajectory& traj, int n) {
  if (n < 0 || static_cast<size_t>(n) + 1 >= traj.coarse.size())
    throw std::invalid_argument("energy_S_increment: window index out of range");
  return energy_S_ctx(make_energy_context(solver), traj, n);
}

EnergyReport energy_report(const MultirateSolver& solver, const Trajectory& traj) {
  EnergyReport rep;
  if (!solver.pure_neumann()) {
    rep.note = "energy identity requires a pure-Neumann case without gravity";
    return rep;
  }
  if (!loads_time_independent(solver)) {
    rep.note = "energy identity requires time-independent loads";
    return rep;
  }
  rep.applicable = true;

  const EnergyContext cx = make_energy_context(solver);
  const int L = static_cast<int>(traj.coarse.size()) - 1;
  rep.J.resize(static_cast<size_t>(L) + 1);
  for (int l = 0; l <= L; ++l) rep.J[static_cast<size_t>(l)] = energy_J_ctx(cx, traj, l);

  rep.S_cumulative.resize(static_cast<size_t>(L));
  double acc = 0;
  for (int n = 0; n < L; ++n) {
    acc += energy_S_ctx(cx, traj, n);
    rep.S_cumulative[static_cast<size_t>(n)] = acc;
  }

  rep.scale = 1e-300;
  for (double j : rep.J) rep.scale = std::max(rep.scale, std::abs(j));
  for (double s : rep.S_cumulative) rep.scale = std::max(rep.scale, std::abs(s));

  rep.residual.resize(static_cast<size_t>(L));
  for (int l = 1; l <= L; ++l) {
    const double r = std::abs(rep.J[static_cast<size_t>(l)] +
                              rep.S_cumulative[static_cast<size_t>(l) - 1] - rep.J[0]) /
                     rep.scale;
    rep.residual[static_cast<size_t>(l) - 1] = r;
    rep.max_residual = std::max(rep.max_residual, r);
  }
  return rep;
}

double boundary_normal_flux(const SpacePair& sp, const Eigen::VectorXd& coeffs) {
  const auto& edge_rule = edge_quadrature_rule();
  double flux = 0;
  for (size_t e = 0; e < sp.mesh.boundary_edges.size(); ++e) {
    const auto& be = sp.mesh.boundary_edges[e];
    const auto& a = sp.mesh.vertices[static_cast<size_t>(be.v0)];
    const auto& b = sp.mesh.vertices[static_cast<size_t>(be.v1)];
    const double ex = b[0] - a[0], ey = b[1] - a[1];
    const double len = std::hypot(ex, ey);
    const double nx = ey / len, ny = -ex / len;  // ccw boundary -> outward normal
    const int nd[3] = {be.v0, be.v1, sp.boundary_edge_midnode[e]};
    for (const auto& q : edge_rule) {
      double shp[3] = {(1 - q.s) * (1 - 2 * q.s), q.s * (2 * q.s - 1), 4 * q.s * (1 - q.s)};
      double ux = 0, uy = 0;
      for (int i = 0; i < 3; ++i) {
        ux += shp[i] * coeffs[2 * nd[i]];
        uy += shp[i] * coeffs[2 * nd[i] + 1];
      }
      flux += q.w * len * (ux * nx + uy * ny);
    }
  }
  return flux;
}

ConservationReport conservation_report(const MultirateSolver& solver, const Trajectory& traj) {
  ConservationReport rep;
  if (!solver.pure_neumann()) {
    rep.note = "balance identities hold for pure-Neumann cases only";
    return rep;
  }
  if (!loads_time_independent(solver)) {
    rep.note = "balance identities implemented for time-independent loads only";
    return rep;
  }
  rep.applicable = true;

  const SparseMat& M1 = solver.mass_scalar();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(M1.rows());
  const Eigen::VectorXd m1_ones = M1 * ones;
  const double inflow_rate = solver.scalar_load(0.0).sum();  // (phi,1) + <phi1,1>

  const double eta0 = m1_ones.dot(traj.coarse.front().eta);
  const double xi0 = m1_ones.dot(traj.coarse.front().xi);
  const double uflux0 = boundary_normal_flux(solver.spaces(), traj.coarse.front().u);

  for (const auto& snap : traj.coarse) {
    const double expected = eta0 + snap.time * inflow_rate;
    const double r = std::abs(m1_ones.dot(snap.eta) - expected);
    rep.eta_residual.push_back(r);
    rep.max_eta_residual = std::max(rep.max_eta_residual, r);
    rep.xi_drift.push_back(std::abs(m1_ones.dot(snap.xi) - xi0));
    rep.u_flux_drift.push_back(
        std::abs(boundary_normal_flux(solver.spaces(), snap.u) - uflux0));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// error norms
// ---------------------------------------------------------------------------

namespace {

struct Geometries {
  std::vector<TriGeom> geo;
  explicit Geometries(const Mesh& mesh) {
    geo.reserve(mesh.triangles.size());
    for (size_t t = 0; t < mesh.triangles.size(); ++t)
      geo.push_back(tri_geometry(mesh, static_cast<int>(t)));
  }
};

// structured point location on the uniform criss-cross mesh
struct Located {
  int tri;
  double xr, yr;
};

Located locate(int n, double x, double y) {
  const auto cell = [n](double c) {
    return std::clamp(static_cast<int>(std::floor(c * n)), 0, n - 1);
  };
  const int i = cell(x), j = cell(y);
  const double xl = x * n - i, yl = y * n - j;
  if (xl >= yl) return {2 * (j * n + i), xl - yl, yl};
  return {2 * (j * n + i) + 1, xl, yl - xl};
}

// evaluates discrete fields of one space pair at arbitrary points
class FieldEvaluator {
 public:
  explicit FieldEvaluator(const SpacePair& sp) : sp_(sp), geos_(sp.mesh) {}

  void p2_vector(const Eigen::VectorXd& coeffs, double x, double y, double val[2],
                 double grad[2][2]) const {
    const Located loc = locate(sp_.mesh.n, x, y);
    const P2Basis b = eval_p2(loc.xr, loc.yr);
    const TriGeom& g = geos_.geo[static_cast<size_t>(loc.tri)];
    val[0] = val[1] = 0;
    grad[0][0] = grad[0][1] = grad[1][0] = grad[1][1] = 0;
    for (int a = 0; a < 6; ++a) {
      const int node = sp_.tri_nodes[static_cast<size_t>(loc.tri)][static_cast<size_t>(a)];
      double gp[2];
      phys_grad(g, b.grad[static_cast<size_t>(a)], gp);
      for (int c = 0; c < 2; ++c) {
        const double u = coeffs[2 * node + c];
        val[c] += u * b.val[static_cast<size_t>(a)];
        grad[c][0] += u * gp[0];
        grad[c][1] += u * gp[1];
      }
    }
  }

  void p1_scalar(const Eigen::VectorXd& coeffs, double x, double y, double* val,
                 double grad[2]) const {
    const Located loc = locate(sp_.mesh.n, x, y);
    const P1Basis b = eval_p1(loc.xr, loc.yr);
    const TriGeom& g = geos_.geo[static_cast<size_t>(loc.tri)];
    *val = 0;
    grad[0] = grad[1] = 0;
    for (int a = 0; a < 3; ++a) {
      const int v = sp_.mesh.triangles[static_cast<size_t>(loc.tri)][static_cast<size_t>(a)];
      double gp[2];
      phys_grad(g, b.grad[static_cast<size_t>(a)], gp);
      *val += coeffs[v] * b.val[static_cast<size_t>(a)];
      grad[0] += coeffs[v] * gp[0];
      grad[1] += coeffs[v] * gp[1];
    }
  }

 private:
  const SpacePair& sp_;
  Geometries geos_;
};

// target fields an error integrand compares against: either analytic
// evaluators or a reference run's discrete fields
struct Target {
  std::function<void(double, double, double, double[2], double[2][2])> u;  // (x,y,t)
  std::function<void(double, double, double, double*, double[2])> p_grad;  // value + gradient
  std::function<double(double, double, double)> xi;
  std::function<double(double, double, double)> eta;
};

struct SpatialErrors {
  double l2_sq = 0, h1_sq = 0;  // h1 includes the l2 part
};

// integration mesh: the space the *errors are integrated over*; for exact
// targets this is the solution mesh, for reference targets the finer mesh.
struct ErrorIntegrator {
  const SpacePair& quad_sp;
  const Geometries geos;
  const QuadRule rule;

  explicit ErrorIntegrator(const SpacePair& sp)
      : quad_sp(sp), geos(sp.mesh), rule(quadrature_rule(6)) {}

  template <typename Eval>
  void for_each_point(Eval&& fn) const {
    for (size_t t = 0; t < quad_sp.tri_nodes.size(); ++t) {
      const TriGeom& g = geos.geo[t];
      for (const auto& q : rule.points) {
        double x[2];
        phys_point(g, q.x, q.y, x);
        fn(x[0], x[1], q.w * g.det);
      }
    }
  }
};

}  // namespace

double select_norm(const ErrorTable& table, ErrorNorm which) {
  switch (which) {
    case ErrorNorm::u_linf_l2: return table.u_linf_l2;
    case ErrorNorm::u_linf_h1: return table.u_linf_h1;
    case ErrorNorm::p_l2_l2: return table.p_l2_l2;
    case ErrorNorm::p_l2_h1: return table.p_l2_h1;
  }
  throw std::invalid_argument("select_norm: unknown norm");
}

namespace {

// shared error accumulation: evaluate the solution fields with `mine`, the
// comparison fields with `target`, integrate over `integ`
ErrorTable accumulate_errors(const ErrorIntegrator& integ, const FieldEvaluator& mine,
                             const Target& target, const Trajectory& traj,
                             const PhysicalParams& pp) {
  ErrorTable tab;
  const TimeGrid& grid = traj.grid;
  const Eigen::Matrix2d Kw = pp.K / pp.mu_f;

  for (size_t l = 0; l < traj.coarse.size(); ++l) {
    const auto& snap = traj.coarse[l];
    double l2 = 0, h1 = 0, xi2 = 0, eta2 = 0;
    integ.for_each_point([&](double x, double y, double w) {
      double uh[2], gh[2][2], ut[2], gt[2][2];
      mine.p2_vector(snap.u, x, y, uh, gh);
      target.u(x, y, snap.time, ut, gt);
      const double e0 = uh[0] - ut[0], e1 = uh[1] - ut[1];
      l2 += w * (e0 * e0 + e1 * e1);
      double gsq = 0;
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          const double ge = gh[c][d] - gt[c][d];
          gsq += ge * ge;
        }
      h1 += w * (e0 * e0 + e1 * e1 + gsq);

      double xih, etah, dummy[2];
      mine.p1_scalar(snap.xi, x, y, &xih, dummy);
      mine.p1_scalar(snap.eta, x, y, &etah, dummy);
      const double exi = xih - target.xi(x, y, snap.time);
      const double eeta = etah - target.eta(x, y, snap.time);
      xi2 += w * exi * exi;
      eta2 += w * eeta * eeta;
    });
    tab.u_linf_l2 = std::max(tab.u_linf_l2, std::sqrt(l2));
    tab.u_linf_h1 = std::max(tab.u_linf_h1, std::sqrt(h1));
    tab.xi_linf_l2 = std::max(tab.xi_linf_l2, std::sqrt(xi2));
    tab.eta_linf_l2 = std::max(tab.eta_linf_l2, std::sqrt(eta2));
  }

  double p_l2l2 = 0, p_l2h1 = 0;
  for (size_t w = 0; w < traj.fine_p.size(); ++w) {
    const double t0 = traj.coarse[w].time;
    for (int k = 1; k <= grid.m; ++k) {
      const double t = t0 + k * grid.dt;
      const Eigen::VectorXd& ph = traj.fine_p[w][static_cast<size_t>(k) - 1];
      double l2 = 0, h1 = 0;
      integ.for_each_point([&](double x, double y, double wq) {
        double v, g[2], vt, gt[2];
        mine.p1_scalar(ph, x, y, &v, g);
        target.p_grad(x, y, t, &vt, gt);
        const double e = v - vt;
        const double gx = g[0] - gt[0], gy = g[1] - gt[1];
        const double kcontrib = gx * (Kw(0, 0) * gx + Kw(0, 1) * gy) +
                                gy * (Kw(1, 0) * gx + Kw(1, 1) * gy);
        l2 += wq * e * e;
        h1 += wq * (e * e + kcontrib);
      });
      p_l2l2 += grid.dt * l2;
      p_l2h1 += grid.dt * h1;
    }
  }
  tab.p_l2_l2 = std::sqrt(p_l2l2);
  tab.p_l2_h1 = std::sqrt(p_l2h1);
  return tab;
}

}  // namespace

ErrorTable errors_vs_exact(const MultirateSolver& solver, const Trajectory& traj) {
  const CaseDefinition& c = solver.problem();
  if (!c.exact) throw std::invalid_argument("errors_vs_exact: case has no exact solution");
  const auto& ex = *c.exact;
  const PhysicalParams& pp = c.params;

  Target target;
  target.u = [&ex](double x, double y, double t, double val[2], double grad[2][2]) {
    const auto u = ex.u(x, y, t);
    const auto g = ex.grad_u(x, y, t);
    val[0] = u[0];
    val[1] = u[1];
    for (int c2 = 0; c2 < 2; ++c2)
      for (int d = 0; d < 2; ++d) grad[c2][d] = g[c2][d];
  };
  target.p_grad = [&ex](double x, double y, double t, double* val, double grad[2]) {
    *val = ex.p(x, y, t);
    const auto g = ex.grad_p(x, y, t);
    grad[0] = g[0];
    grad[1] = g[1];
  };
  const auto q_exact = [&ex](double x, double y, double t) {
    const auto g = ex.grad_u(x, y, t);
    return g[0][0] + g[1][1];
  };
  target.xi = [&ex, q_exact, &pp](double x, double y, double t) {
    return pp.alpha * ex.p(x, y, t) - pp.lambda * q_exact(x, y, t);
  };
  target.eta = [&ex, q_exact, &pp](double x, double y, double t) {
    return pp.c0 * ex.p(x, y, t) + pp.alpha * q_exact(x, y, t);
  };

  const ErrorIntegrator integ(solver.spaces());
  const FieldEvaluator mine(solver.spaces());
  return accumulate_errors(integ, mine, target, traj, pp);
}

ErrorTable errors_vs_reference(const MultirateSolver& solver, const Trajectory& traj,
                               const MultirateSolver& ref_solver, const Trajectory& ref_traj) {
  const TimeGrid& g = traj.grid;
  const TimeGrid& gr = ref_traj.grid;
  if (gr.m != 1)
    throw std::invalid_argument("errors_vs_reference: reference run must use m = 1");
  if (std::abs(g.dt - gr.dt) > 1e-12 * g.dt || std::abs(g.T - gr.T) > 1e-12 * g.T)
    throw std::invalid_argument("errors_vs_reference: time grids must match (same dt and T)");
  const int n = solver.spaces().mesh.n, nr = ref_solver.spaces().mesh.n;
  if (nr % n != 0 || nr <= n)
    throw std::invalid_argument("errors_vs_reference: reference mesh must be a finer refinement");

  const FieldEvaluator ref_eval(ref_solver.spaces());

  Target target;
  target.u = [&](double x, double y, double t, double val[2], double grad[2][2]) {
    const int l = static_cast<int>(std::llround(t / (gr.m * gr.dt)));
    ref_eval.p2_vector(ref_traj.coarse[static_cast<size_t>(l)].u, x, y, val, grad);
  };
  target.p_grad = [&](double x, double y, double t, double* val, double grad[2]) {
    const int j = static_cast<int>(std::llround(t / gr.dt));  // absolute fine index >= 1
    ref_eval.p1_scalar(ref_traj.fine_p[static_cast<size_t>(j) - 1][0], x, y, val, grad);
  };
  target.xi = [&](double x, double y, double t) {
    const int l = static_cast<int>(std::llround(t / (gr.m * gr.dt)));
    double v, gr2[2];
    ref_eval.p1_scalar(ref_traj.coarse[static_cast<size_t>(l)].xi, x, y, &v, gr2);
    return v;
  };
  target.eta = [&](double x, double y, double t) {
    const int l = static_cast<int>(std::llround(t / (gr.m * gr.dt)));
    double v, gr2[2];
    ref_eval.p1_scalar(ref_traj.coarse[static_cast<size_t>(l)].eta, x, y, &v, gr2);
    return v;
  };

  // integrate on the reference mesh: both fields are polynomial on each of
  // its cells (nested refinement, same diagonal), so the rule is exact
  const ErrorIntegrator integ(ref_solver.spaces());
  const FieldEvaluator mine(solver.spaces());
  return accumulate_errors(integ, mine, target, traj, solver.problem().params);
}

std::vector<double> convergence_rates(const std::vector<double>& errors,
                                      const std::vector<double>& hs) {
  if (errors.size() != hs.size())
    throw std::invalid_argument("convergence_rates: errors and hs must have equal length");
  if (errors.size() < 2)
    throw std::invalid_argument("convergence_rates: need at least two entries");
  std::vector<double> rates;
  rates.reserve(errors.size() - 1);
  for (size_t i = 0; i + 1 < errors.size(); ++i) {
    const bool ok = errors[i] > 0 && errors[i + 1] > 0 && hs[i] > hs[i + 1] && hs[i + 1] > 0;
    rates.push_back(ok ? std::log(errors[i] / errors[i + 1]) / std::log(hs[i] / hs[i + 1])
                       : std::numeric_limits<double>::quiet_NaN());
  }
  return rates;
}

// ---------------------------------------------------------------------------
// discrete field norms
// ---------------------------------------------------------------------------

namespace {

template <typename Fn>
double integrate(const SpacePair& sp, Fn&& per_point) {
  const QuadRule rule = quadrature_rule(4);
  double acc = 0;
  for (size_t t = 0; t < sp.tri_nodes.size(); ++t) {
    const TriGeom g = tri_geometry(sp.mesh, static_cast<int>(t));
    for (const auto& q : rule.points) acc += q.w * g.det * per_point(g, t, q.x, q.y);
  }
  return acc;
}

}  // namespace

double p2_field_l2(const SpacePair& sp, const Eigen::VectorXd& coeffs) {
  const double s = integrate(sp, [&](const TriGeom&, size_t t, double xr, double yr) {
    const P2Basis b = eval_p2(xr, yr);
    double v0 = 0, v1 = 0;
    for (int a = 0; a < 6; ++a) {
      const int node = sp.tri_nodes[t][static_cast<size_t>(a)];
      v0 += coeffs[2 * node] * b.val[static_cast<size_t>(a)];
      v1 += coeffs[2 * node + 1] * b.val[static_cast<size_t>(a)];
    }
    return v0 * v0 + v1 * v1;
  });
  return std::sqrt(s);
}

double p2_field_h1(const SpacePair& sp, const Eigen::VectorXd& coeffs) {
  const double s = integrate(sp, [&](const TriGeom& g, size_t t, double xr, double yr) {
    const P2Basis b = eval_p2(xr, yr);
    double v[2] = {0, 0}, gr[2][2] = {{0, 0}, {0, 0}};
    for (int a = 0; a < 6; ++a) {
      const int node = sp.tri_nodes[t][static_cast<size_t>(a)];
      double gp[2];
      phys_grad(g, b.grad[static_cast<size_t>(a)], gp);
      for (int c = 0; c < 2; ++c) {
        v[c] += coeffs[2 * node + c] * b.val[static_cast<size_t>(a)];
        gr[c][0] += coeffs[2 * node + c] * gp[0];
        gr[c][1] += coeffs[2 * node + c] * gp[1];
      }
    }
    return v[0] * v[0] + v[1] * v[1] + gr[0][0] * gr[0][0] + gr[0][1] * gr[0][1] +
           gr[1][0] * gr[1][0] + gr[1][1] * gr[1][1];
  });
  return std::sqrt(s);
}

double p1_field_l2(const SpacePair& sp, const Eigen::VectorXd& coeffs) {
  const double s = integrate(sp, [&](const TriGeom&, size_t t, double xr, double yr) {
    const P1Basis b = eval_p1(xr, yr);
    double v = 0;
    for (int a = 0; a < 3; ++a) v += coeffs[sp.mesh.triangles[t][static_cast<size_t>(a)]] *
                                     b.val[static_cast<size_t>(a)];
    return v * v;
  });
  return std::sqrt(s);
}

double p1_field_h1_weighted(const SpacePair& sp, const Eigen::VectorXd& coeffs,
                            const Eigen::Matrix2d& K, double mu_f) {
  const Eigen::Matrix2d Kw = K / mu_f;
  const double s = integrate(sp, [&](const TriGeom& g, size_t t, double xr, double yr) {
    const P1Basis b = eval_p1(xr, yr);
    double v = 0, gx = 0, gy = 0;
    for (int a = 0; a < 3; ++a) {
      const double c = coeffs[sp.mesh.triangles[t][static_cast<size_t>(a)]];
      double gp[2];
      phys_grad(g, b.grad[static_cast<size_t>(a)], gp);
      v += c * b.val[static_cast<size_t>(a)];
      gx += c * gp[0];
      gy += c * gp[1];
    }
    return v * v + gx * (Kw(0, 0) * gx + Kw(0, 1) * gy) + gy * (Kw(1, 0) * gx + Kw(1, 1) * gy);
  });
  return std::sqrt(s);
}

}  // namespace poromr
