#include "poromr/cases.hpp"

#include <cmath>
#include <stdexcept>

namespace poromr {

namespace {

constexpr std::array<double, 2> kZero2 = {0.0, 0.0};

ScalarFn zero_scalar() {
  return [](double, double, double) { return 0.0; };
}
VectorFn zero_vector() {
  return [](double, double, double) { return kZero2; };
}

}  // namespace

CaseDefinition test1_manufactured() {
  return test1_manufactured(params_from_young_poisson(1e-4, 0.4, 1e-5, 0.83, 1e-5));
}

CaseDefinition test1_manufactured(const PhysicalParams& params) {
  CaseDefinition c;
  c.name = "test1";
  c.params = params;

  const double lam = c.params.lambda, mu = c.params.mu;
  const double c0 = c.params.c0, alpha = c.params.alpha;
  const double k = c.params.K(0, 0), mu_f = c.params.mu_f;

  // u = (t/2)(x^2, y^2), p = sin(x+y) e^t
  c.exact = CaseDefinition::Exact{};
  c.exact->u = [](double x, double y, double t) {
    return std::array<double, 2>{0.5 * t * x * x, 0.5 * t * y * y};
  };
  c.exact->grad_u = [](double x, double y, double t) {
    return std::array<std::array<double, 2>, 2>{{{t * x, 0.0}, {0.0, t * y}}};
  };
  c.exact->p = [](double x, double y, double t) { return std::sin(x + y) * std::exp(t); };
  c.exact->grad_p = [](double x, double y, double t) {
    const double v = std::cos(x + y) * std::exp(t);
    return std::array<double, 2>{v, v};
  };

  c.body_force = [lam, mu, alpha](double x, double y, double t) {
    const double a = -(lam + mu) * t + alpha * std::cos(x + y) * std::exp(t);
    return std::array<double, 2>{a, a};
  };
  c.source = [c0, alpha, k, mu_f](double x, double y, double t) {
    return (c0 + 2.0 * k / mu_f) * std::sin(x + y) * std::exp(t) + alpha * (x + y);
  };
  // total traction sigma(u)n - alpha p n, evaluated with the outward normal
  // of the segment the point lies on
  c.traction = [lam, mu, alpha](double x, double y, double t) {
    const auto n = unit_square_normal(x, y);
    const double s = std::sin(x + y) * std::exp(t);
    return std::array<double, 2>{
        mu * t * x * n[0] + lam * t * (x + y) * n[0] - alpha * s * n[0],
        mu * t * y * n[1] + lam * t * (x + y) * n[1] - alpha * s * n[1]};
  };
  c.flux = zero_scalar();  // all pressure boundaries are Dirichlet

  c.p_bc = c.exact->p;
  c.u_bc = c.exact->u;

  // p fixed everywhere; u1 on the vertical sides, u2 on the horizontal ones
  for (int s = 0; s < 4; ++s) c.plan.p[s] = BcKind::dirichlet;
  c.plan.ux = {BcKind::neumann, BcKind::dirichlet, BcKind::neumann, BcKind::dirichlet};
  c.plan.uy = {BcKind::dirichlet, BcKind::neumann, BcKind::dirichlet, BcKind::neumann};

  c.u0 = [](double, double) { return kZero2; };
  c.grad_u0 = [](double, double) {
    return std::array<std::array<double, 2>, 2>{{{0.0, 0.0}, {0.0, 0.0}}};
  };
  c.p0 = [](double x, double y) { return std::sin(x + y); };
  c.q0 = [](double, double) { return 0.0; };

  c.recommended = {1e-6, 5, 1.0, 0};
  return c;
}

CaseDefinition test2_barry_mercer() {
  return test2_barry_mercer(params_from_young_poisson(3.5e-2, 0.11, 0.9, 0.31, 3e-6));
}

CaseDefinition test2_barry_mercer(const PhysicalParams& params) {
  CaseDefinition c;
  c.name = "test2";
  c.params = params;

  const double alpha = c.params.alpha;

  c.body_force = zero_vector();
  c.source = zero_scalar();
  c.flux = zero_scalar();

  // drainage data: p2 = sin(t) on the loaded strip of the bottom edge
  auto p_data = [](double x, double y, double t) {
    if (y <= 1e-12 && x >= 0.2 && x < 0.8) return std::sin(t);
    return 0.0;
  };
  c.p_bc = p_data;
  c.u_bc = zero_vector();
  c.traction = [alpha, p_data](double x, double y, double t) {
    return std::array<double, 2>{0.0, alpha * p_data(x, y, t)};
  };

  for (int s = 0; s < 4; ++s) c.plan.p[s] = BcKind::dirichlet;
  c.plan.ux = {BcKind::neumann, BcKind::dirichlet, BcKind::neumann, BcKind::dirichlet};
  c.plan.uy = {BcKind::dirichlet, BcKind::neumann, BcKind::dirichlet, BcKind::neumann};

  c.u0 = [](double, double) { return kZero2; };
  c.grad_u0 = [](double, double) {
    return std::array<std::array<double, 2>, 2>{{{0.0, 0.0}, {0.0, 0.0}}};
  };
  c.p0 = [](double, double) { return 0.0; };
  c.q0 = [](double, double) { return 0.0; };

  c.recommended = {1e-5, 5, 1.0, 0};
  return c;
}

CaseDefinition test3_footing() {
  return test3_footing(params_from_young_poisson(1e5, 0.4, 0.01, 0.93, 1e-1));
}

CaseDefinition test3_footing(const PhysicalParams& params) {
  CaseDefinition c;
  c.name = "test3";
  c.params = params;

  c.body_force = zero_vector();
  c.source = zero_scalar();
  c.flux = zero_scalar();  // no-flux pressure boundary everywhere

  // downward unit load on the top edge, traction-free sides; clamped bottom
  c.traction = [](double, double y, double) {
    return std::array<double, 2>{0.0, (y >= 1.0 - 1e-12) ? -1.0 : 0.0};
  };
  c.p_bc = zero_scalar();
  c.u_bc = zero_vector();

  c.plan.ux = {BcKind::dirichlet, BcKind::neumann, BcKind::neumann, BcKind::neumann};
  c.plan.uy = {BcKind::dirichlet, BcKind::neumann, BcKind::neumann, BcKind::neumann};
  // plan.p stays all-Neumann

  c.u0 = [](double, double) { return kZero2; };
  c.grad_u0 = [](double, double) {
    return std::array<std::array<double, 2>, 2>{{{0.0, 0.0}, {0.0, 0.0}}};
  };
  c.p0 = [](double, double) { return 0.0; };
  c.q0 = [](double, double) { return 0.0; };

  c.recommended = {1e-5, 5, 1.0, 0};
  return c;
}

CaseDefinition verification_neumann() {
  return verification_neumann(params_from_young_poisson(1e-4, 0.4, 1e-5, 0.83, 1e-5));
}

CaseDefinition verification_neumann(const PhysicalParams& params) {
  CaseDefinition c;
  c.name = "verification_neumann";
  c.params = params;

  c.body_force = zero_vector();
  c.source = [](double, double, double) { return 1.0; };
  c.flux = zero_scalar();
  c.traction = zero_vector();
  c.p_bc = zero_scalar();
  c.u_bc = zero_vector();
  // every field pure Neumann; rigid motions removed by constraint rows

  c.u0 = [](double, double) { return kZero2; };
  c.grad_u0 = [](double, double) {
    return std::array<std::array<double, 2>, 2>{{{0.0, 0.0}, {0.0, 0.0}}};
  };
  c.p0 = [](double, double) { return 0.0; };
  c.q0 = [](double, double) { return 0.0; };

  c.recommended = {1e-3, 5, 0.1, 0};
  return c;
}

CaseDefinition case_by_name(const std::string& name) {
  if (name == "test1") return test1_manufactured();
  if (name == "test2") return test2_barry_mercer();
  if (name == "test3") return test3_footing();
  if (name == "verification_neumann") return verification_neumann();
  throw std::invalid_argument("unknown case: " + name);
}

CaseDefinition case_by_name(const std::string& name, const PhysicalParams& params) {
  if (name == "test1") return test1_manufactured(params);
  if (name == "test2") return test2_barry_mercer(params);
  if (name == "test3") return test3_footing(params);
  if (name == "verification_neumann") return verification_neumann(params);
  throw std::invalid_argument("unknown case: " + name);
}

std::array<double, 2> unit_square_normal(double x, double y) {
  // closest side wins; corners resolve to the side reached first in the
  // segment numbering (bottom, right, top, left)
  const double d[4] = {y, 1.0 - x, 1.0 - y, x};
  int side = 0;
  for (int s = 1; s < 4; ++s)
    if (d[s] < d[side]) side = s;
  switch (side) {
    case 0: return {0.0, -1.0};
    case 1: return {1.0, 0.0};
    case 2: return {0.0, 1.0};
    default: return {-1.0, 0.0};
  }
}

bool needs_rm_constraints(const CaseDefinition& c) { return !c.plan.any_u_dirichlet(); }

}  // namespace poromr
