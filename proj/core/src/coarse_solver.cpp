#include "nlup/coarse_solver.hpp"

#include <chrono>
#include <sstream>

#include "nlup/errors.hpp"

namespace nlup {

Eigen::VectorXd coarse_residual(const TransportProblem& problem,
                                const CellAverages& s_iter,
                                const CellAverages& s_prev,
                                const EdgeTraces& traces) {
  const MeshHierarchy& mesh = problem.mesh;
  if (traces.size() != mesh.n_trace_slots())
    throw InvalidArgumentError("coarse_residual: trace vector size mismatch");

  const double gamma = problem.gamma();
  const double coarse_area = mesh.coarse_cell_area();
  const auto& lambda = problem.flux.eval;

  Eigen::VectorXd f(mesh.n_coarse_cells());
  for (int i = 0; i < mesh.n_coarse_cells(); ++i)
    f[i] = gamma * coarse_area * (s_iter[i] - s_prev[i]);

  // Each trace slot feeds the two adjacent cells with opposite signs, so
  // interior contributions cancel pairwise in the sum over cells.
  for (const CoarseEdge& edge : mesh.coarse_edges()) {
    int slot = edge.trace_offset;
    for (int face_id : edge.faces) {
      const double flux =
          lambda(traces[slot++]) * problem.velocity.face_flux[face_id];
      if (edge.lower >= 0) f[edge.lower] += flux;
      if (edge.upper >= 0) f[edge.upper] -= flux;
    }
  }
  return f;
}

TimestepResult solve_timestep(const TransportProblem& problem,
                              const CellAverages& s_prev,
                              const TraceProvider& provider,
                              const FixedPointConfig& cfg) {
  const double scale =
      cfg.omega / (problem.gamma() * problem.mesh.coarse_cell_area());

  TimestepResult result;
  CellAverages s = s_prev;
  for (int m = 1; m <= cfg.max_iters; ++m) {
    const EdgeTraces traces = provider.traces(s, s_prev);
    const Eigen::VectorXd f = coarse_residual(problem, s, s_prev, traces);
    const Eigen::VectorXd update = scale * f;
    s -= update;
    const double diff = update.size() ? update.cwiseAbs().maxCoeff() : 0.0;
    result.history.push_back(diff);
    if (diff <= cfg.tol) {
      result.next = std::move(s);
      result.iterations = m;
      return result;
    }
  }

  std::ostringstream msg;
  msg << "fixed point: no convergence after " << cfg.max_iters
      << " iterations (tol " << cfg.tol << ", omega " << cfg.omega
      << "); last updates:";
  const int tail = std::min<int>(5, result.history.size());
  for (int k = static_cast<int>(result.history.size()) - tail;
       k < static_cast<int>(result.history.size()); ++k)
    msg << " " << result.history[k];
  throw NoConvergenceError(msg.str(), result.history.back());
}

CoarseTrajectory run_coarse(const TransportProblem& problem,
                            const TraceProvider& provider, int n_steps,
                            const FixedPointConfig& cfg) {
  if (n_steps < 1) throw InvalidArgumentError("run_coarse: n_steps >= 1");

  CoarseTrajectory traj;
  traj.steps.push_back(project_initial(problem).coarse);
  for (int n = 0; n < n_steps; ++n) {
    const auto start = std::chrono::steady_clock::now();
    TimestepResult res;
    try {
      res = solve_timestep(problem, traj.steps.back(), provider, cfg);
    } catch (const NoConvergenceError& e) {
      throw NoConvergenceError(
          "step " + std::to_string(n + 1) + ": " + e.what(), e.residual_norm);
    }
    const auto end = std::chrono::steady_clock::now();
    traj.steps.push_back(std::move(res.next));
    traj.iterations.push_back(res.iterations);
    traj.seconds.push_back(std::chrono::duration<double>(end - start).count());
  }
  return traj;
}

}  // namespace nlup
