#pragma once

#include <functional>

#include <Eigen/Sparse>

#include "nlup/types.hpp"

namespace nlup {

struct NewtonConfig {
  double residual_tol = 1e-10;  // max-norm of the residual
  int max_iters = 50;
};

struct NewtonResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double residual_norm = 0.0;
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::SparseMatrix<double>(const Eigen::VectorXd&)>;

/// Full-step Newton: x <- x - J(x)^{-1} F(x), sparse direct linear solves,
/// stop when ||F||_inf <= residual_tol. At least one update is performed.
/// Throws SingularJacobianError if the factorization fails and
/// NoConvergenceError (carrying the last residual norm) past max_iters.
NewtonResult newton_solve(const ResidualFn& residual, const JacobianFn& jacobian,
                          const Eigen::VectorXd& guess, const NewtonConfig& cfg);

}  // namespace nlup
