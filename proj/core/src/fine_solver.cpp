#include "nlup/fine_solver.hpp"

#include <array>

#include "nlup/errors.hpp"

namespace nlup {

FineSolver::FineSolver(const TransportProblem& problem) : problem_(problem) {
  const MeshHierarchy& mesh = problem.mesh;
  const auto sign = MeshHierarchy::outward_sign();
  cell_faces_.resize(mesh.n_fine_cells());
  for (int fi = 0; fi < mesh.nx_fine(); ++fi) {
    for (int fj = 0; fj < mesh.ny_fine(); ++fj) {
      const int cell = mesh.fine_index(fi, fj);
      const auto faces = mesh.fine_cell_faces(fi, fj);
      for (int k = 0; k < 4; ++k) {
        const FineFace& f = mesh.faces()[faces[k]];
        const int neighbor = f.owner == cell ? f.neighbor : f.owner;
        cell_faces_[cell][k] = {sign[k] * problem.velocity.face_flux[faces[k]],
                                neighbor};
      }
    }
  }
}

Eigen::VectorXd FineSolver::residual(const FineField& s,
                                     const FineField& s_n) const {
  const double gamma = problem_.gamma();
  const double area = problem_.mesh.fine_cell_area();
  const auto& lambda = problem_.flux.eval;
  const int n = problem_.mesh.n_fine_cells();

  Eigen::VectorXd f(n);
  for (int j = 0; j < n; ++j) {
    double acc = gamma * area * (s[j] - s_n[j]);
    for (const auto& cf : cell_faces_[j]) {
      if (cf.q_out == 0.0) continue;
      // Upwind value: this cell on outflow, the neighbor on inflow,
      // the boundary value on domain-inflow ghosts.
      const double up = cf.q_out > 0.0
                            ? s[j]
                            : (cf.neighbor >= 0 ? s[cf.neighbor]
                                                : problem_.boundary_value);
      acc += lambda(up) * cf.q_out;
    }
    f[j] = acc;
  }
  return f;
}

Eigen::SparseMatrix<double> FineSolver::jacobian(const FineField& s) const {
  const double gamma = problem_.gamma();
  const double area = problem_.mesh.fine_cell_area();
  const auto& dlambda = problem_.flux.deriv;
  const int n = problem_.mesh.n_fine_cells();

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(n) * 5);
  for (int j = 0; j < n; ++j) {
    double diag = gamma * area;
    for (const auto& cf : cell_faces_[j]) {
      if (cf.q_out > 0.0) {
        diag += dlambda(s[j]) * cf.q_out;
      } else if (cf.q_out < 0.0 && cf.neighbor >= 0) {
        trips.emplace_back(j, cf.neighbor, dlambda(s[cf.neighbor]) * cf.q_out);
      }
    }
    trips.emplace_back(j, j, diag);
  }

  Eigen::SparseMatrix<double> jac(n, n);
  jac.setFromTriplets(trips.begin(), trips.end());
  return jac;
}

FineField FineSolver::step(const FineField& s_n, const NewtonConfig& cfg) const {
  auto res = newton_solve(
      [&](const Eigen::VectorXd& s) { return residual(s, s_n); },
      [&](const Eigen::VectorXd& s) { return jacobian(s); }, s_n, cfg);
  return std::move(res.x);
}

ReferenceRun solve_reference(const TransportProblem& problem, int n_steps,
                             const NewtonConfig& cfg) {
  if (n_steps < 1) throw InvalidArgumentError("solve_reference: n_steps >= 1");
  FineSolver solver(problem);
  ReferenceRun run;
  run.fields.reserve(n_steps + 1);
  run.averages.reserve(n_steps + 1);
  run.fields.push_back(project_initial(problem).fine);
  run.averages.push_back(problem.mesh.coarse_averages(run.fields.back()));
  for (int n = 0; n < n_steps; ++n) {
    run.fields.push_back(solver.step(run.fields.back(), cfg));
    run.averages.push_back(problem.mesh.coarse_averages(run.fields.back()));
  }
  return run;
}

}  // namespace nlup
