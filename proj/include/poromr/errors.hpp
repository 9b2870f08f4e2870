#pragma once

#include <stdexcept>
#include <string>

namespace poromr {

// Factorization failure, ill-conditioning, or a residual check that did not
// meet its contract.
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// Fixed-point (or other iterative) loop exceeded its iteration budget.
struct IterationError : std::runtime_error {
  explicit IterationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace poromr
