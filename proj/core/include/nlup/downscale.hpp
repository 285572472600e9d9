#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "nlup/newton.hpp"
#include "nlup/physics.hpp"

namespace nlup {

/// Constrained local transport problem on one double oversampling domain
/// K++: gamma*psi + div(v lambda(psi)) = gamma*Sbar_n in K++, psi = 0 on
/// the inflow boundary of K++, and mean(psi) pinned to Sbar on every
/// coarse cell of K+. Unknowns are one psi per fine cell of K++ (local
/// (x,y)-lex order) followed by one multiplier mu per constrained cell.
struct LocalProblem {
  int alpha = -1;
  FineRect rect;                        // fine cells of K++
  std::vector<int> constrained_cells;   // global coarse ids of K+ cells
  std::vector<int> coarse_of_cell;      // per local fine cell
  std::vector<int> constraint_of_cell;  // local constraint index or -1
  Eigen::VectorXd source;               // Sbar_n per local fine cell
  Eigen::VectorXd constraint_values;    // Sbar per constrained cell
  double gamma = 0.0;
  double cell_area = 0.0;    // |tau|
  double coarse_area = 0.0;  // |K|
  double boundary_value = 0.0;

  struct CellFace {
    double q_out;  // outward-signed face flux
    int neighbor;  // local fine index across the face; -1 = ghost
  };
  std::vector<std::array<CellFace, 4>> cell_faces;

  int n_cells() const { return rect.cell_count(); }
  int n_constraints() const { return static_cast<int>(constrained_cells.size()); }
  int size() const { return n_cells() + n_constraints(); }

  /// Refreshes the data vectors for new averages; geometry is untouched.
  void set_data(const MeshHierarchy& mesh, const CellAverages& s_bar_n,
                const CellAverages& s_bar);
};

LocalProblem build_local(const TransportProblem& problem,
                         const OversampleEntry& ovs,
                         const CellAverages& s_bar_n,
                         const CellAverages& s_bar);

/// Stacked residual (F_eqn; F_mean).
Eigen::VectorXd local_residual(const LocalProblem& lp,
                               const FluxFunction& flux,
                               const Eigen::VectorXd& psi,
                               const Eigen::VectorXd& mu);

/// Saddle-point Jacobian [[dF_eqn/dpsi, B], [B^T, 0]].
Eigen::SparseMatrix<double> local_jacobian(const LocalProblem& lp,
                                           const FluxFunction& flux,
                                           const Eigen::VectorXd& psi,
                                           const Eigen::VectorXd& mu);

struct LocalSolution {
  Eigen::VectorXd psi;
  Eigen::VectorXd mu;
  int newton_iterations = 0;
};

/// Post-Newton bound on |mean_{K_beta}(psi) - Sbar_beta|.
constexpr double kConstraintTol = 1e-9;

/// Newton on the saddle-point system from the piecewise-constant initial
/// guess (constraint values on K+, source values on the buffer, mu = 0).
/// Throws SingularJacobianError / NoConvergenceError with the offending
/// alpha in the message.
LocalSolution solve_local(const LocalProblem& lp, const FluxFunction& flux,
                          const NewtonConfig& cfg);

/// Fine-scale field on a rectangular patch with O(1) lookup by fine index.
struct LocalField {
  FineRect rect;
  Eigen::VectorXd values;

  double at(int fi, int fj) const { return values[rect.local_index(fi, fj)]; }
};

/// Restriction of a local solution to K+ (subvector selection).
LocalField restrict_local(const MeshHierarchy& mesh, const OversampleEntry& ovs,
                          const LocalProblem& lp, const LocalSolution& sol);

/// Combines the restricted local solutions with the indicator partition of
/// unity (psi = psi_alpha on K_alpha) and stores the upwind value of psi
/// on every trace slot; domain-inflow slots get the boundary value.
/// `fields` is indexed by coarse cell and each entry must cover its cell.
EdgeTraces assemble_traces(const TransportProblem& problem,
                           const std::vector<LocalField>& fields);

/// Mapping (current iterate, previous-step averages) -> edge traces.
class TraceProvider {
 public:
  virtual ~TraceProvider() = default;
  virtual EdgeTraces traces(const CellAverages& s_iter,
                            const CellAverages& s_prev) const = 0;
  virtual std::string name() const = 0;
};

/// The non-NN provider: one constrained local solve per coarse cell,
/// run as a parallel map with a deterministic gather.
class ExactTraceProvider : public TraceProvider {
 public:
  ExactTraceProvider(const TransportProblem& problem, int layers_plus,
                     int layers_plusplus, NewtonConfig newton_cfg);

  EdgeTraces traces(const CellAverages& s_iter,
                    const CellAverages& s_prev) const override;
  std::string name() const override { return "exact"; }

  const std::vector<OversampleEntry>& oversample_entries() const {
    return oversample_;
  }

 private:
  const TransportProblem& problem_;
  NewtonConfig newton_cfg_;
  std::vector<OversampleEntry> oversample_;
  std::vector<LocalProblem> protos_;  // geometry built once, data zeroed
};

}  // namespace nlup
