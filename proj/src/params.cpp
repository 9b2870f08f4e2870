#include "poromr/params.hpp"

#include <cmath>
#include <stdexcept>

namespace poromr {

LameParams derive_lame(double E, double nu) {
  if (E <= 0.0) throw std::invalid_argument("derive_lame: E must be positive");
  if (nu <= 0.0 || nu >= 0.5)
    throw std::invalid_argument("derive_lame: nu must lie in (0, 1/2)");
  LameParams lp;
  lp.lambda = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
  lp.mu = E / (2.0 * (1.0 + nu));
  return lp;
}

Kappas derive_kappas(double alpha, double lambda, double c0) {
  if (alpha <= 0.0 || alpha > 1.0)
    throw std::invalid_argument("derive_kappas: alpha must lie in (0, 1]");
  if (lambda <= 0.0) throw std::invalid_argument("derive_kappas: lambda must be positive");
  if (c0 < 0.0) throw std::invalid_argument("derive_kappas: c0 must be nonnegative");
  const double den = alpha * alpha + lambda * c0;
  Kappas k;
  k.k1 = alpha / den;
  k.k2 = lambda / den;
  k.k3 = c0 / den;
  return k;
}

PhysicalParams params_from_young_poisson(double E, double nu, double c0, double alpha,
                                         double k_iso, double mu_f) {
  PhysicalParams p;
  p.E = E;
  p.nu = nu;
  const LameParams lp = derive_lame(E, nu);
  p.lambda = lp.lambda;
  p.mu = lp.mu;
  p.c0 = c0;
  p.alpha = alpha;
  p.K = k_iso * Eigen::Matrix2d::Identity();
  p.mu_f = mu_f;
  validate(p);
  return p;
}

void validate(const PhysicalParams& p) {
  if (p.E <= 0.0) throw std::invalid_argument("params: E must be positive");
  if (p.nu <= 0.0 || p.nu >= 0.5) throw std::invalid_argument("params: nu must lie in (0, 1/2)");
  if (p.lambda <= 0.0 || p.mu <= 0.0)
    throw std::invalid_argument("params: Lame parameters must be positive");
  if (p.alpha <= 0.0 || p.alpha > 1.0)
    throw std::invalid_argument("params: alpha must lie in (0, 1]");
  if (p.c0 < 0.0) throw std::invalid_argument("params: c0 must be nonnegative");
  if (p.mu_f <= 0.0) throw std::invalid_argument("params: mu_f must be positive");
  const double sym = std::abs(p.K(0, 1) - p.K(1, 0));
  const double scale = p.K.cwiseAbs().maxCoeff();
  if (sym > 1e-12 * std::max(1.0, scale))
    throw std::invalid_argument("params: K must be symmetric");
  if (p.K(0, 0) <= 0.0 || p.K.determinant() <= 0.0)
    throw std::invalid_argument("params: K must be SPD");
}

std::pair<double, double> to_reformulated(double p, double q, const PhysicalParams& pp) {
  return {pp.alpha * p - pp.lambda * q, pp.c0 * p + pp.alpha * q};
}

std::pair<double, double> recover_pq(double xi, double eta, const PhysicalParams& pp) {
  const Kappas k = pp.kappas();
  return {k.k1 * xi + k.k2 * eta, k.k1 * eta - k.k3 * xi};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> to_reformulated(const Eigen::VectorXd& p,
                                                            const Eigen::VectorXd& q,
                                                            const PhysicalParams& pp) {
  return {pp.alpha * p - pp.lambda * q, pp.c0 * p + pp.alpha * q};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> recover_pq(const Eigen::VectorXd& xi,
                                                       const Eigen::VectorXd& eta,
                                                       const PhysicalParams& pp) {
  const Kappas k = pp.kappas();
  return {k.k1 * xi + k.k2 * eta, k.k1 * eta - k.k3 * xi};
}

}  // namespace poromr
