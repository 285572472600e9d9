#include "nlup/downscale.hpp"

#include <algorithm>
#include <string>

#include "nlup/errors.hpp"
#include "nlup/parallel.hpp"

namespace nlup {

void LocalProblem::set_data(const MeshHierarchy& mesh,
                            const CellAverages& s_bar_n,
                            const CellAverages& s_bar) {
  if (s_bar_n.size() != mesh.n_coarse_cells() ||
      s_bar.size() != mesh.n_coarse_cells())
    throw InvalidArgumentError("local problem: average vectors must have one "
                               "entry per coarse cell");
  source.resize(n_cells());
  for (int j = 0; j < n_cells(); ++j) source[j] = s_bar_n[coarse_of_cell[j]];
  constraint_values.resize(n_constraints());
  for (int b = 0; b < n_constraints(); ++b)
    constraint_values[b] = s_bar[constrained_cells[b]];
}

LocalProblem build_local(const TransportProblem& problem,
                         const OversampleEntry& ovs,
                         const CellAverages& s_bar_n,
                         const CellAverages& s_bar) {
  const MeshHierarchy& mesh = problem.mesh;
  LocalProblem lp;
  lp.alpha = ovs.alpha;
  lp.rect = mesh.fine_rect(ovs.plusplus);
  lp.gamma = problem.gamma();
  lp.cell_area = mesh.fine_cell_area();
  lp.coarse_area = mesh.coarse_cell_area();
  lp.boundary_value = problem.boundary_value;

  lp.constrained_cells.reserve(ovs.plus.cell_count());
  for (int ci = ovs.plus.lo_i; ci <= ovs.plus.hi_i; ++ci)
    for (int cj = ovs.plus.lo_j; cj <= ovs.plus.hi_j; ++cj)
      lp.constrained_cells.push_back(mesh.coarse_index(ci, cj));

  const int n = lp.n_cells();
  lp.coarse_of_cell.resize(n);
  lp.constraint_of_cell.assign(n, -1);
  lp.cell_faces.resize(n);
  const auto sign = MeshHierarchy::outward_sign();
  for (int fi = lp.rect.lo_i; fi <= lp.rect.hi_i; ++fi) {
    for (int fj = lp.rect.lo_j; fj <= lp.rect.hi_j; ++fj) {
      const int j = lp.rect.local_index(fi, fj);
      const int ci = fi / mesh.refine(), cj = fj / mesh.refine();
      lp.coarse_of_cell[j] = mesh.coarse_index(ci, cj);
      if (ovs.plus.contains(ci, cj))
        lp.constraint_of_cell[j] =
            (ci - ovs.plus.lo_i) * ovs.plus.span_j() + (cj - ovs.plus.lo_j);
      const int cell = mesh.fine_index(fi, fj);
      const auto faces = mesh.fine_cell_faces(fi, fj);
      for (int k = 0; k < 4; ++k) {
        const FineFace& f = mesh.faces()[faces[k]];
        const int global_nb = f.owner == cell ? f.neighbor : f.owner;
        int local_nb = -1;
        if (global_nb >= 0) {
          auto [ni, nj] = mesh.fine_ij(global_nb);
          if (lp.rect.contains(ni, nj)) local_nb = lp.rect.local_index(ni, nj);
        }
        lp.cell_faces[j][k] = {sign[k] * problem.velocity.face_flux[faces[k]],
                               local_nb};
      }
    }
  }

  lp.set_data(mesh, s_bar_n, s_bar);
  return lp;
}

Eigen::VectorXd local_residual(const LocalProblem& lp, const FluxFunction& flux,
                               const Eigen::VectorXd& psi,
                               const Eigen::VectorXd& mu) {
  const int n = lp.n_cells(), m = lp.n_constraints();
  if (psi.size() != n || mu.size() != m)
    throw InvalidArgumentError("local_residual: size mismatch");

  Eigen::VectorXd f(n + m);
  const auto& lambda = flux.eval;
  for (int j = 0; j < n; ++j) {
    double acc = lp.gamma * lp.cell_area * psi[j] -
                 lp.cell_area * lp.source[j];
    if (lp.constraint_of_cell[j] >= 0)
      acc -= lp.cell_area * mu[lp.constraint_of_cell[j]];
    for (const auto& cf : lp.cell_faces[j]) {
      if (cf.q_out == 0.0) continue;
      const double up =
          cf.q_out > 0.0
              ? psi[j]
              : (cf.neighbor >= 0 ? psi[cf.neighbor] : lp.boundary_value);
      acc += lambda(up) * cf.q_out;
    }
    f[j] = acc;
  }
  for (int b = 0; b < m; ++b) f[n + b] = lp.coarse_area * lp.constraint_values[b];
  for (int j = 0; j < n; ++j) {
    const int b = lp.constraint_of_cell[j];
    if (b >= 0) f[n + b] -= lp.cell_area * psi[j];
  }
  return f;
}

Eigen::SparseMatrix<double> local_jacobian(const LocalProblem& lp,
                                           const FluxFunction& flux,
                                           const Eigen::VectorXd& psi,
                                           const Eigen::VectorXd& mu) {
  const int n = lp.n_cells(), m = lp.n_constraints();
  if (psi.size() != n || mu.size() != m)
    throw InvalidArgumentError("local_jacobian: size mismatch");

  const auto& dlambda = flux.deriv;
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(n) * 7);
  for (int j = 0; j < n; ++j) {
    double diag = lp.gamma * lp.cell_area;
    for (const auto& cf : lp.cell_faces[j]) {
      if (cf.q_out > 0.0) {
        diag += dlambda(psi[j]) * cf.q_out;
      } else if (cf.q_out < 0.0 && cf.neighbor >= 0) {
        trips.emplace_back(j, cf.neighbor, dlambda(psi[cf.neighbor]) * cf.q_out);
      }
    }
    trips.emplace_back(j, j, diag);
    const int b = lp.constraint_of_cell[j];
    if (b >= 0) {
      trips.emplace_back(j, n + b, -lp.cell_area);
      trips.emplace_back(n + b, j, -lp.cell_area);
    }
  }

  Eigen::SparseMatrix<double> jac(n + m, n + m);
  jac.setFromTriplets(trips.begin(), trips.end());
  return jac;
}

LocalSolution solve_local(const LocalProblem& lp, const FluxFunction& flux,
                          const NewtonConfig& cfg) {
  const int n = lp.n_cells(), m = lp.n_constraints();

  Eigen::VectorXd guess(n + m);
  for (int j = 0; j < n; ++j) {
    const int b = lp.constraint_of_cell[j];
    guess[j] = b >= 0 ? lp.constraint_values[b] : lp.source[j];
  }
  guess.tail(m).setZero();

  // F_mean carries a |K| factor, so hitting the mean-constraint tolerance
  // needs a residual bound of constraint_tol * |K|.
  NewtonConfig local_cfg = cfg;
  local_cfg.residual_tol =
      std::min(cfg.residual_tol, 0.5 * kConstraintTol * lp.coarse_area);

  NewtonResult res;
  try {
    res = newton_solve(
        [&](const Eigen::VectorXd& z) {
          return local_residual(lp, flux, z.head(n), z.tail(m));
        },
        [&](const Eigen::VectorXd& z) {
          return local_jacobian(lp, flux, z.head(n), z.tail(m));
        },
        guess, local_cfg);
  } catch (const NoConvergenceError& e) {
    throw NoConvergenceError("local problem alpha=" + std::to_string(lp.alpha) +
                                 ": " + e.what(),
                             e.residual_norm);
  } catch (const SingularJacobianError& e) {
    throw SingularJacobianError("local problem alpha=" +
                                std::to_string(lp.alpha) + ": " + e.what());
  }

  LocalSolution sol;
  sol.psi = res.x.head(n);
  sol.mu = res.x.tail(m);
  sol.newton_iterations = res.iterations;
  return sol;
}

LocalField restrict_local(const MeshHierarchy& mesh, const OversampleEntry& ovs,
                          const LocalProblem& lp, const LocalSolution& sol) {
  LocalField field;
  field.rect = mesh.fine_rect(ovs.plus);
  field.values.resize(field.rect.cell_count());
  for (int fi = field.rect.lo_i; fi <= field.rect.hi_i; ++fi)
    for (int fj = field.rect.lo_j; fj <= field.rect.hi_j; ++fj)
      field.values[field.rect.local_index(fi, fj)] =
          sol.psi[lp.rect.local_index(fi, fj)];
  return field;
}

EdgeTraces assemble_traces(const TransportProblem& problem,
                           const std::vector<LocalField>& fields) {
  const MeshHierarchy& mesh = problem.mesh;
  if (static_cast<int>(fields.size()) != mesh.n_coarse_cells())
    throw SolverError("assemble_traces: expected one local solution per "
                      "coarse cell, got " + std::to_string(fields.size()));

  EdgeTraces traces(mesh.n_trace_slots());
  for (const CoarseEdge& edge : mesh.coarse_edges()) {
    int slot = edge.trace_offset;
    for (int face_id : edge.faces) {
      const FineFace& f = mesh.faces()[face_id];
      const double q = problem.velocity.face_flux[face_id];
      // Coarse cell on the upwind side; zero-flux slots fall back to
      // whichever side exists (their value never enters the scheme).
      int up_coarse;
      int up_fine;
      if (q > 0.0 || (q == 0.0 && edge.lower >= 0)) {
        up_coarse = edge.lower;
        up_fine = f.owner;
      } else {
        up_coarse = edge.upper;
        up_fine = f.neighbor;
      }
      traces[slot++] = up_coarse >= 0
                           ? fields[up_coarse].at(mesh.fine_ij(up_fine).first,
                                                  mesh.fine_ij(up_fine).second)
                           : problem.boundary_value;
    }
  }
  return traces;
}

ExactTraceProvider::ExactTraceProvider(const TransportProblem& problem,
                                       int layers_plus, int layers_plusplus,
                                       NewtonConfig newton_cfg)
    : problem_(problem),
      newton_cfg_(newton_cfg),
      oversample_(problem.mesh.oversample_all(layers_plus, layers_plusplus)) {
  const CellAverages zeros = CellAverages::Zero(problem.mesh.n_coarse_cells());
  protos_.reserve(oversample_.size());
  for (const auto& ovs : oversample_)
    protos_.push_back(build_local(problem, ovs, zeros, zeros));
}

EdgeTraces ExactTraceProvider::traces(const CellAverages& s_iter,
                                      const CellAverages& s_prev) const {
  const MeshHierarchy& mesh = problem_.mesh;
  if (s_iter.size() != mesh.n_coarse_cells() ||
      s_prev.size() != mesh.n_coarse_cells())
    throw InvalidArgumentError("trace provider: average vectors must have one "
                               "entry per coarse cell");

  std::vector<LocalField> fields(mesh.n_coarse_cells());
  parallel_for(mesh.n_coarse_cells(), [&](int alpha) {
    LocalProblem lp = protos_[alpha];
    lp.set_data(mesh, s_prev, s_iter);
    const LocalSolution sol = solve_local(lp, problem_.flux, newton_cfg_);
    fields[alpha] = restrict_local(mesh, oversample_[alpha], lp, sol);
  });
  return assemble_traces(problem_, fields);
}

}  // namespace nlup
