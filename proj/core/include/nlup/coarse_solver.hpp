#pragma once

#include <vector>

#include "nlup/downscale.hpp"
#include "nlup/physics.hpp"

namespace nlup {

struct FixedPointConfig {
  double tol = 1e-4;   // max-norm of successive iterate differences
  double omega = 0.5;  // relaxation in (0, 1]
  int max_iters = 200;
};

/// Coarse finite-volume residual
///   F_i = gamma |K_i| (Sbar_i - Sbar_n_i)
///         + sum over fine faces of dK_i of lambda(trace) * outward flux,
/// using the coarse-volume identity int_{K_i} psi = |K_i| Sbar_i (exact
/// under the indicator partition of unity with satisfied constraints).
Eigen::VectorXd coarse_residual(const TransportProblem& problem,
                                const CellAverages& s_iter,
                                const CellAverages& s_prev,
                                const EdgeTraces& traces);

struct TimestepResult {
  CellAverages next;
  int iterations = 0;
  std::vector<double> history;  // per-iteration max-norm of the update
};

/// Relaxed fixed point from Sbar^(0) = Sbar^n:
///   Sbar^(m+1)_i = Sbar^(m)_i - omega * F_i / (gamma |K_i|)
/// until ||Sbar^(m+1) - Sbar^(m)||_inf <= tol. Throws NoConvergenceError
/// (with the residual history in the message) past max_iters.
TimestepResult solve_timestep(const TransportProblem& problem,
                              const CellAverages& s_prev,
                              const TraceProvider& provider,
                              const FixedPointConfig& cfg);

struct CoarseTrajectory {
  std::vector<CellAverages> steps;  // [0] = initial averages
  std::vector<int> iterations;      // per time step
  std::vector<double> seconds;      // per time step wall time
};

CoarseTrajectory run_coarse(const TransportProblem& problem,
                            const TraceProvider& provider, int n_steps,
                            const FixedPointConfig& cfg);

}  // namespace nlup
