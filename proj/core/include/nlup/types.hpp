#pragma once

#include <Eigen/Dense>

namespace nlup {

/// One scalar per coarse cell, in mesh cell order.
using CellAverages = Eigen::VectorXd;

/// One scalar per fine cell, in mesh cell order.
using FineField = Eigen::VectorXd;

/// One scalar per (coarse edge, fine face) trace slot, in the global
/// slot order defined by MeshHierarchy (edges in order, faces within
/// each edge in order).
using EdgeTraces = Eigen::VectorXd;

}  // namespace nlup
