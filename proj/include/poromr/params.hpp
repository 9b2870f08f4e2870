#pragma once

#include <Eigen/Dense>
#include <utility>

namespace poromr {

struct LameParams {
  double lambda = 0;
  double mu = 0;
};

// Plane-strain Lame parameters from Young's modulus and Poisson ratio.
LameParams derive_lame(double E, double nu);

struct Kappas {
  double k1 = 0, k2 = 0, k3 = 0;
};

// Coefficients of the inverse change of variables between (p, q) and
// (xi, eta):  p = k1*xi + k2*eta,  q = k1*eta - k3*xi.
Kappas derive_kappas(double alpha, double lambda, double c0);

struct PhysicalParams {
  double E = 0, nu = 0;        // elastic moduli
  double lambda = 0, mu = 0;   // derived Lame parameters
  double c0 = 0;               // constrained storage coefficient
  double alpha = 0;            // Biot-Willis coefficient
  Eigen::Matrix2d K = Eigen::Matrix2d::Identity();  // permeability (SPD)
  double mu_f = 1.0;           // fluid viscosity
  double rho_f = 0.0;          // fluid density (gravity term)
  Eigen::Vector2d g = Eigen::Vector2d::Zero();

  Kappas kappas() const { return derive_kappas(alpha, lambda, c0); }
};

// Builds a parameter set from (E, nu) plus flow constants; K = k_iso * I.
PhysicalParams params_from_young_poisson(double E, double nu, double c0, double alpha,
                                         double k_iso, double mu_f = 1.0);

// Throws std::invalid_argument on out-of-range values (E <= 0, nu outside
// (0, 1/2), alpha outside (0, 1], c0 < 0, K not SPD, mu_f <= 0).
void validate(const PhysicalParams& p);

// Variable changes: xi = alpha*p - lambda*q, eta = c0*p + alpha*q.
std::pair<double, double> to_reformulated(double p, double q, const PhysicalParams& pp);
std::pair<double, double> recover_pq(double xi, double eta, const PhysicalParams& pp);

std::pair<Eigen::VectorXd, Eigen::VectorXd> to_reformulated(const Eigen::VectorXd& p,
                                                            const Eigen::VectorXd& q,
                                                            const PhysicalParams& pp);
std::pair<Eigen::VectorXd, Eigen::VectorXd> recover_pq(const Eigen::VectorXd& xi,
                                                       const Eigen::VectorXd& eta,
                                                       const PhysicalParams& pp);

}  // namespace poromr
