#pragma once

#include <vector>

#include <Eigen/Sparse>

#include "nlup/newton.hpp"
#include "nlup/physics.hpp"

namespace nlup {

/// Fine-grid reference solver: backward Euler + upwind finite volume +
/// Newton on the full fine grid. Upwind values on domain-inflow faces are
/// the problem's boundary value (0 in production).
class FineSolver {
 public:
  explicit FineSolver(const TransportProblem& problem);

  /// One backward-Euler step; Newton warm-started from s_n.
  FineField step(const FineField& s_n, const NewtonConfig& cfg) const;

  // Assembly exposed for the finite-difference checks in tests.
  Eigen::VectorXd residual(const FineField& s, const FineField& s_n) const;
  Eigen::SparseMatrix<double> jacobian(const FineField& s) const;

 private:
  const TransportProblem& problem_;
  // Per fine cell: 4 faces as {outward-signed flux, neighbor index (-1 =
  // domain ghost)} in the fixed {left, right, bottom, top} order.
  struct CellFace {
    double q_out;
    int neighbor;
  };
  std::vector<std::array<CellFace, 4>> cell_faces_;
};

struct ReferenceRun {
  std::vector<FineField> fields;      // [0] = initial state
  std::vector<CellAverages> averages;
};

/// Sequential backward-Euler trajectory with per-step coarse averages.
ReferenceRun solve_reference(const TransportProblem& problem, int n_steps,
                             const NewtonConfig& cfg);

}  // namespace nlup
