#include "nlup/mesh.hpp"

#include <algorithm>
#include <string>

#include "nlup/errors.hpp"

namespace nlup {

namespace {

// Integer sort key in half-cell units: vertical items sit at even kx,
// horizontal at odd kx (and vice versa in ky), so keys never tie and the
// (x, then y) order is exact.
struct Keyed {
  long kx, ky;
  int kind;  // 0 vertical, 1 horizontal
  int a, b;  // structured indices
};

void sort_keys(std::vector<Keyed>& items) {
  std::sort(items.begin(), items.end(), [](const Keyed& l, const Keyed& r) {
    return l.kx != r.kx ? l.kx < r.kx : l.ky < r.ky;
  });
}

}  // namespace

MeshHierarchy MeshHierarchy::build(int nx_coarse, int ny_coarse, int refine) {
  if (nx_coarse < 1 || ny_coarse < 1 || refine < 1) {
    throw InvalidArgumentError(
        "mesh: nx_coarse, ny_coarse and refine must all be >= 1 (got " +
        std::to_string(nx_coarse) + ", " + std::to_string(ny_coarse) + ", " +
        std::to_string(refine) + ")");
  }

  MeshHierarchy m;
  m.nx_c_ = nx_coarse;
  m.ny_c_ = ny_coarse;
  m.refine_ = refine;
  m.nx_f_ = nx_coarse * refine;
  m.ny_f_ = ny_coarse * refine;
  m.Hx_ = 1.0 / nx_coarse;
  m.Hy_ = 1.0 / ny_coarse;
  m.hx_ = m.Hx_ / refine;
  m.hy_ = m.Hy_ / refine;

  const int nxf = m.nx_f_, nyf = m.ny_f_;

  // Fine faces, globally ordered by midpoint.
  std::vector<Keyed> fitems;
  fitems.reserve((nxf + 1) * nyf + nxf * (nyf + 1));
  for (int fi = 0; fi <= nxf; ++fi)
    for (int fj = 0; fj < nyf; ++fj)
      fitems.push_back({2L * fi, 2L * fj + 1, 0, fi, fj});
  for (int fi = 0; fi < nxf; ++fi)
    for (int fj = 0; fj <= nyf; ++fj)
      fitems.push_back({2L * fi + 1, 2L * fj, 1, fi, fj});
  sort_keys(fitems);

  m.faces_.resize(fitems.size());
  m.vert_face_.assign((nxf + 1) * nyf, -1);
  m.horiz_face_.assign(nxf * (nyf + 1), -1);
  for (int id = 0; id < static_cast<int>(fitems.size()); ++id) {
    const Keyed& k = fitems[id];
    FineFace f;
    f.axis = k.kind;
    if (k.kind == 0) {
      f.owner = k.a > 0 ? m.fine_index(k.a - 1, k.b) : -1;
      f.neighbor = k.a < nxf ? m.fine_index(k.a, k.b) : -1;
      f.mx = k.a * m.hx_;
      f.my = (k.b + 0.5) * m.hy_;
      f.length = m.hy_;
      m.vert_face_[k.a * nyf + k.b] = id;
    } else {
      f.owner = k.b > 0 ? m.fine_index(k.a, k.b - 1) : -1;
      f.neighbor = k.b < nyf ? m.fine_index(k.a, k.b) : -1;
      f.mx = (k.a + 0.5) * m.hx_;
      f.my = k.b * m.hy_;
      f.length = m.hx_;
      m.horiz_face_[k.a * (nyf + 1) + k.b] = id;
    }
    m.faces_[id] = f;
  }

  // Coarse edges, same global ordering rule.
  std::vector<Keyed> eitems;
  eitems.reserve((nx_coarse + 1) * ny_coarse + nx_coarse * (ny_coarse + 1));
  for (int ci = 0; ci <= nx_coarse; ++ci)
    for (int cj = 0; cj < ny_coarse; ++cj)
      eitems.push_back({2L * ci, 2L * cj + 1, 0, ci, cj});
  for (int ci = 0; ci < nx_coarse; ++ci)
    for (int cj = 0; cj <= ny_coarse; ++cj)
      eitems.push_back({2L * ci + 1, 2L * cj, 1, ci, cj});
  sort_keys(eitems);

  m.edges_.resize(eitems.size());
  m.vert_edge_.assign((nx_coarse + 1) * ny_coarse, -1);
  m.horiz_edge_.assign(nx_coarse * (ny_coarse + 1), -1);
  int offset = 0;
  for (int id = 0; id < static_cast<int>(eitems.size()); ++id) {
    const Keyed& k = eitems[id];
    CoarseEdge e;
    e.axis = k.kind;
    e.trace_offset = offset;
    if (k.kind == 0) {
      e.lower = k.a > 0 ? m.coarse_index(k.a - 1, k.b) : -1;
      e.upper = k.a < nx_coarse ? m.coarse_index(k.a, k.b) : -1;
      e.mx = k.a * m.Hx_;
      e.my = (k.b + 0.5) * m.Hy_;
      e.faces.reserve(refine);
      for (int s = 0; s < refine; ++s)
        e.faces.push_back(m.vertical_face(k.a * refine, k.b * refine + s));
      m.vert_edge_[k.a * ny_coarse + k.b] = id;
    } else {
      e.lower = k.b > 0 ? m.coarse_index(k.a, k.b - 1) : -1;
      e.upper = k.b < ny_coarse ? m.coarse_index(k.a, k.b) : -1;
      e.mx = (k.a + 0.5) * m.Hx_;
      e.my = k.b * m.Hy_;
      e.faces.reserve(refine);
      for (int s = 0; s < refine; ++s)
        e.faces.push_back(m.horizontal_face(k.a * refine + s, k.b * refine));
      m.horiz_edge_[k.a * (ny_coarse + 1) + k.b] = id;
    }
    offset += static_cast<int>(e.faces.size());
    m.edges_[id] = std::move(e);
  }
  m.n_trace_slots_ = offset;

  return m;
}

OversampleEntry MeshHierarchy::oversample(int alpha, int layers_plus,
                                          int layers_plusplus) const {
  if (alpha < 0 || alpha >= n_coarse_cells())
    throw InvalidArgumentError("oversample: coarse index out of range: " +
                               std::to_string(alpha));
  if (layers_plus < 1 || layers_plusplus < layers_plus)
    throw InvalidArgumentError(
        "oversample: need layers_plusplus >= layers_plus >= 1");

  auto [ci, cj] = coarse_ij(alpha);
  auto clipped = [&](int layers) {
    CoarseRect r;
    r.lo_i = std::max(ci - layers, 0);
    r.hi_i = std::min(ci + layers, nx_c_ - 1);
    r.lo_j = std::max(cj - layers, 0);
    r.hi_j = std::min(cj + layers, ny_c_ - 1);
    return r;
  };

  OversampleEntry e;
  e.alpha = alpha;
  e.layers_plus = layers_plus;
  e.layers_plusplus = layers_plusplus;
  e.plus = clipped(layers_plus);
  e.plusplus = clipped(layers_plus + layers_plusplus);
  return e;
}

std::vector<OversampleEntry> MeshHierarchy::oversample_all(
    int layers_plus, int layers_plusplus) const {
  std::vector<OversampleEntry> all;
  all.reserve(n_coarse_cells());
  for (int a = 0; a < n_coarse_cells(); ++a)
    all.push_back(oversample(a, layers_plus, layers_plusplus));
  return all;
}

CellAverages MeshHierarchy::coarse_averages(const FineField& fine) const {
  CellAverages avg = CellAverages::Zero(n_coarse_cells());
  for (int fi = 0; fi < nx_f_; ++fi)
    for (int fj = 0; fj < ny_f_; ++fj)
      avg[coarse_index(fi / refine_, fj / refine_)] += fine[fine_index(fi, fj)];
  avg /= static_cast<double>(refine_ * refine_);
  return avg;
}

std::vector<int> inflow_faces(const MeshHierarchy& mesh,
                              const std::vector<int>& region,
                              const Eigen::VectorXd& face_flux) {
  std::vector<char> in_region(mesh.n_coarse_cells(), 0);
  for (int c : region) in_region[c] = 1;
  auto inside = [&](int fine_cell) {
    return fine_cell >= 0 && in_region[mesh.coarse_of_fine(fine_cell)];
  };

  std::vector<int> result;
  const auto& faces = mesh.faces();
  for (int id = 0; id < mesh.n_faces(); ++id) {
    const FineFace& f = faces[id];
    const bool own_in = inside(f.owner);
    const bool nbr_in = inside(f.neighbor);
    if (own_in == nbr_in) continue;  // interior to the region or fully outside
    const double outward = own_in ? face_flux[id] : -face_flux[id];
    if (outward < 0.0) result.push_back(id);
  }
  return result;
}

}  // namespace nlup
