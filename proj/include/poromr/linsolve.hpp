#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <memory>
#include <vector>

#include "poromr/assembly.hpp"

namespace poromr {

// Direct sparse Cholesky-class factorization for SPD systems. Every solve is
// polished by iterative refinement until its residual passes
// 1e-12 * max(1, ||b||); violations throw.
class SpdSolver {
 public:
  explicit SpdSolver(SparseMat A);
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  const SparseMat& matrix() const { return A_; }

 private:
  SparseMat A_;
  Eigen::SimplicialLDLT<SparseMat> fac_;
};

// Direct sparse factorization (with pivoting) for symmetric-indefinite saddle
// systems, polished by iterative refinement. Block row offsets define the
// blockwise residual check, relative tolerance 1e-10 per block.
class SaddleSolver {
 public:
  SaddleSolver(SparseMat A, std::vector<int> block_offsets);
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  const SparseMat& matrix() const { return A_; }

 private:
  SparseMat A_;
  std::vector<int> offsets_;  // includes 0 and n
  Eigen::SparseLU<SparseMat> fac_;
};

// One-shot conveniences.
Eigen::VectorXd solve_spd(const SparseMat& A, const Eigen::VectorXd& b);
Eigen::VectorXd solve_saddle(const SparseMat& A, const Eigen::VectorXd& b,
                             const std::vector<int>& block_offsets);

}  // namespace poromr
