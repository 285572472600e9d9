#pragma once

#include <functional>
#include <string>

#include "nlup/mesh.hpp"
#include "nlup/types.hpp"

namespace nlup {

/// Flux nonlinearity lambda with its exact analytic derivative.
struct FluxFunction {
  std::string name;
  std::function<double(double)> eval;
  std::function<double(double)> deriv;
};

/// Known nonlinearities: "s2" (lambda(S)=S^2) and "linear" (lambda(S)=S).
/// Throws InvalidArgumentError for unknown names.
FluxFunction flux_function(const std::string& name);

/// Divergence-free analytic velocity with per-fine-face signed normal
/// fluxes (midpoint rule, fixed global normals: +x vertical, +y horizontal).
struct VelocityField {
  std::string name;
  std::function<double(double, double)> vx;
  std::function<double(double, double)> vy;
  Eigen::VectorXd face_flux;  // one signed entry per fine face
};

/// Midpoint-rule signed flux of one face: length * (v . n)(midpoint).
double face_flux_midpoint(const VelocityField& velocity, const FineFace& face);

/// Builds a named velocity ("constant11" or "example2") with face fluxes
/// populated on the given mesh. Throws InvalidArgumentError for unknown
/// names.
VelocityField builtin_velocity(const std::string& name,
                               const MeshHierarchy& mesh);

struct DivergenceReport {
  Eigen::VectorXd per_cell;  // sum of outward-signed face fluxes per fine cell
  double max_abs = 0.0;
};

DivergenceReport discrete_divergence(const VelocityField& velocity,
                                     const MeshHierarchy& mesh);

struct InitialCondition {
  std::string name;
  std::function<double(double, double)> eval;
};

/// Named initial conditions: "sinprod" = (1+sin(2pi x) sin(2pi y))/2,
/// "sinprod48" = (1+sin(4pi x) sin(8pi y))/2, "zero", "one".
InitialCondition builtin_initial(const std::string& name);

/// Everything fixed about one transport run: grids, velocity, flux law,
/// initial data, time step and the inflow boundary value (0 in
/// production; tests may set it to probe constant steady states).
struct TransportProblem {
  MeshHierarchy mesh;
  VelocityField velocity;
  FluxFunction flux;
  InitialCondition initial;
  double dt = 0.1;
  int n_steps = 5;
  double boundary_value = 0.0;

  double gamma() const { return 1.0 / dt; }
};

/// Midpoint samples of S0 on the fine grid plus their coarse means.
struct InitialState {
  FineField fine;
  CellAverages coarse;
};

InitialState project_initial(const TransportProblem& problem);

}  // namespace nlup
