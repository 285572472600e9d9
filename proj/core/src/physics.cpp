#include "nlup/physics.hpp"

#include <cmath>

#include "nlup/errors.hpp"

namespace nlup {

FluxFunction flux_function(const std::string& name) {
  if (name == "s2") {
    return {"s2", [](double s) { return s * s; }, [](double s) { return 2.0 * s; }};
  }
  if (name == "linear") {
    return {"linear", [](double s) { return s; }, [](double) { return 1.0; }};
  }
  throw InvalidArgumentError("unknown flux function: " + name);
}

double face_flux_midpoint(const VelocityField& velocity, const FineFace& face) {
  const double vn = face.axis == 0 ? velocity.vx(face.mx, face.my)
                                   : velocity.vy(face.mx, face.my);
  return face.length * vn;
}

namespace {

VelocityField with_face_fluxes(VelocityField v, const MeshHierarchy& mesh) {
  v.face_flux.resize(mesh.n_faces());
  for (int id = 0; id < mesh.n_faces(); ++id)
    v.face_flux[id] = face_flux_midpoint(v, mesh.faces()[id]);
  return v;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

VelocityField builtin_velocity(const std::string& name,
                               const MeshHierarchy& mesh) {
  VelocityField v;
  v.name = name;
  if (name == "constant11") {
    v.vx = [](double, double) { return 1.0; };
    v.vy = [](double, double) { return 1.0; };
  } else if (name == "example2") {
    v.vx = [](double x, double y) {
      const double s = std::sin(kTwoPi * x);
      return 1.0 + s * s * std::sin(kTwoPi * y);
    };
    v.vy = [](double x, double y) {
      return 1.0 + std::sin(2.0 * kTwoPi * x) * std::cos(kTwoPi * y);
    };
  } else {
    throw InvalidArgumentError("unknown velocity field: " + name);
  }
  return with_face_fluxes(std::move(v), mesh);
}

DivergenceReport discrete_divergence(const VelocityField& velocity,
                                     const MeshHierarchy& mesh) {
  DivergenceReport rep;
  rep.per_cell = Eigen::VectorXd::Zero(mesh.n_fine_cells());
  const auto sign = MeshHierarchy::outward_sign();
  for (int fi = 0; fi < mesh.nx_fine(); ++fi) {
    for (int fj = 0; fj < mesh.ny_fine(); ++fj) {
      const auto faces = mesh.fine_cell_faces(fi, fj);
      double acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += sign[k] * velocity.face_flux[faces[k]];
      rep.per_cell[mesh.fine_index(fi, fj)] = acc;
    }
  }
  rep.max_abs = rep.per_cell.size() ? rep.per_cell.cwiseAbs().maxCoeff() : 0.0;
  return rep;
}

InitialCondition builtin_initial(const std::string& name) {
  if (name == "sinprod") {
    return {"sinprod", [](double x, double y) {
              return 0.5 * (1.0 + std::sin(kTwoPi * x) * std::sin(kTwoPi * y));
            }};
  }
  if (name == "sinprod48") {
    return {"sinprod48", [](double x, double y) {
              return 0.5 *
                     (1.0 + std::sin(2.0 * kTwoPi * x) * std::sin(4.0 * kTwoPi * y));
            }};
  }
  if (name == "zero") {
    return {"zero", [](double, double) { return 0.0; }};
  }
  if (name == "one") {
    return {"one", [](double, double) { return 1.0; }};
  }
  throw InvalidArgumentError("unknown initial condition: " + name);
}

InitialState project_initial(const TransportProblem& problem) {
  const MeshHierarchy& mesh = problem.mesh;
  InitialState s;
  s.fine.resize(mesh.n_fine_cells());
  for (int fi = 0; fi < mesh.nx_fine(); ++fi) {
    for (int fj = 0; fj < mesh.ny_fine(); ++fj) {
      const auto c = mesh.fine_center(fi, fj);
      s.fine[mesh.fine_index(fi, fj)] = problem.initial.eval(c[0], c[1]);
    }
  }
  s.coarse = mesh.coarse_averages(s.fine);
  return s;
}

}  // namespace nlup
