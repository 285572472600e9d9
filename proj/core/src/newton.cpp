#include "nlup/newton.hpp"

#include <string>

#include <Eigen/SparseLU>

#include "nlup/errors.hpp"

namespace nlup {

NewtonResult newton_solve(const ResidualFn& residual, const JacobianFn& jacobian,
                          const Eigen::VectorXd& guess, const NewtonConfig& cfg) {
  Eigen::VectorXd x = guess;
  Eigen::VectorXd f = residual(x);
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    Eigen::SparseMatrix<double> jac = jacobian(x);
    jac.makeCompressed();
    lu.compute(jac);
    if (lu.info() != Eigen::Success)
      throw SingularJacobianError("newton: singular Jacobian at iteration " +
                                  std::to_string(iter));
    x -= lu.solve(f);
    f = residual(x);
    const double norm = f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
    if (norm <= cfg.residual_tol) return {std::move(x), iter, norm};
  }

  const double norm = f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
  throw NoConvergenceError("newton: no convergence after " +
                               std::to_string(cfg.max_iters) +
                               " iterations, residual max-norm " +
                               std::to_string(norm),
                           norm);
}

}  // namespace nlup
