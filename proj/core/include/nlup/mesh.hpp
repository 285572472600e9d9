#pragma once

#include <array>
#include <utility>
#include <vector>

#include "nlup/types.hpp"

namespace nlup {

/// Fine-grid face with a fixed global normal: +x for vertical faces
/// (axis 0), +y for horizontal faces (axis 1). Signed quantities on a
/// face are always relative to this normal.
struct FineFace {
  int owner = -1;     // fine cell on the -normal side (left/bottom); -1 outside
  int neighbor = -1;  // fine cell on the +normal side (right/top); -1 outside
  int axis = 0;       // 0 vertical, 1 horizontal
  double mx = 0.0, my = 0.0;
  double length = 0.0;
};

/// Axis-aligned rectangle of coarse cells, inclusive index bounds.
struct CoarseRect {
  int lo_i = 0, hi_i = -1, lo_j = 0, hi_j = -1;

  int span_i() const { return hi_i - lo_i + 1; }
  int span_j() const { return hi_j - lo_j + 1; }
  int cell_count() const { return span_i() * span_j(); }
  bool contains(int ci, int cj) const {
    return ci >= lo_i && ci <= hi_i && cj >= lo_j && cj <= hi_j;
  }
};

/// Rectangle of fine cells, inclusive bounds, with local (x,y)-lex indexing.
struct FineRect {
  int lo_i = 0, hi_i = -1, lo_j = 0, hi_j = -1;

  int span_i() const { return hi_i - lo_i + 1; }
  int span_j() const { return hi_j - lo_j + 1; }
  int cell_count() const { return span_i() * span_j(); }
  bool contains(int fi, int fj) const {
    return fi >= lo_i && fi <= hi_i && fj >= lo_j && fj <= hi_j;
  }
  int local_index(int fi, int fj) const {
    return (fi - lo_i) * span_j() + (fj - lo_j);
  }
};

/// Segment of a coarse-cell boundary, one coarse cell long, carrying the
/// fine faces that compose it (ordered lexicographically by midpoint).
struct CoarseEdge {
  int lower = -1;  // coarse cell on the -normal side; -1 on the domain boundary
  int upper = -1;  // coarse cell on the +normal side
  int axis = 0;
  double mx = 0.0, my = 0.0;
  std::vector<int> faces;
  int trace_offset = 0;  // first global trace slot of this edge
};

/// Oversampling domains of one coarse cell: K+ (constraint region) and
/// K++ (local-problem region), both clipped to the domain.
struct OversampleEntry {
  int alpha = -1;
  int layers_plus = 1;
  int layers_plusplus = 1;
  CoarseRect plus;
  CoarseRect plusplus;
};

/// Uniform coarse grid on the unit square with a conforming fine
/// refinement. Immutable after construction; safe to share read-only
/// across parallel workers.
///
/// Cells, faces and edges are all indexed lexicographically by midpoint
/// (x first, then y), so identical inputs always produce identical
/// orderings, file layouts and NN input/output layouts.
class MeshHierarchy {
 public:
  /// Throws InvalidArgumentError unless all counts are >= 1.
  static MeshHierarchy build(int nx_coarse, int ny_coarse, int refine);

  int nx_coarse() const { return nx_c_; }
  int ny_coarse() const { return ny_c_; }
  int refine() const { return refine_; }
  int nx_fine() const { return nx_f_; }
  int ny_fine() const { return ny_f_; }

  int n_coarse_cells() const { return nx_c_ * ny_c_; }
  int n_fine_cells() const { return nx_f_ * ny_f_; }

  double coarse_dx() const { return Hx_; }
  double coarse_dy() const { return Hy_; }
  double fine_dx() const { return hx_; }
  double fine_dy() const { return hy_; }
  double coarse_cell_area() const { return Hx_ * Hy_; }
  double fine_cell_area() const { return hx_ * hy_; }

  int coarse_index(int ci, int cj) const { return ci * ny_c_ + cj; }
  std::pair<int, int> coarse_ij(int idx) const {
    return {idx / ny_c_, idx % ny_c_};
  }
  int fine_index(int fi, int fj) const { return fi * ny_f_ + fj; }
  std::pair<int, int> fine_ij(int idx) const {
    return {idx / ny_f_, idx % ny_f_};
  }

  /// Coarse cell containing a fine cell (conforming refinement).
  int coarse_of_fine(int fine_idx) const {
    auto [fi, fj] = fine_ij(fine_idx);
    return coarse_index(fi / refine_, fj / refine_);
  }

  std::array<double, 2> fine_center(int fi, int fj) const {
    return {(fi + 0.5) * hx_, (fj + 0.5) * hy_};
  }
  std::array<double, 2> coarse_center(int ci, int cj) const {
    return {(ci + 0.5) * Hx_, (cj + 0.5) * Hy_};
  }

  const std::vector<FineFace>& faces() const { return faces_; }
  int n_faces() const { return static_cast<int>(faces_.size()); }

  int vertical_face(int fi, int fj) const {  // fi in [0, nx_f], fj in [0, ny_f)
    return vert_face_[fi * ny_f_ + fj];
  }
  int horizontal_face(int fi, int fj) const {  // fi in [0, nx_f), fj in [0, ny_f]
    return horiz_face_[fi * (ny_f_ + 1) + fj];
  }

  /// Face ids of one fine cell in the order {left, right, bottom, top};
  /// outward signs relative to the global normals are {-1, +1, -1, +1}.
  std::array<int, 4> fine_cell_faces(int fi, int fj) const {
    return {vertical_face(fi, fj), vertical_face(fi + 1, fj),
            horizontal_face(fi, fj), horizontal_face(fi, fj + 1)};
  }
  static constexpr std::array<double, 4> outward_sign() {
    return {-1.0, 1.0, -1.0, 1.0};
  }

  const std::vector<CoarseEdge>& coarse_edges() const { return edges_; }
  int n_coarse_edges() const { return static_cast<int>(edges_.size()); }
  int n_trace_slots() const { return n_trace_slots_; }

  /// Edge ids of one coarse cell in the order {left, right, bottom, top};
  /// same outward sign convention as fine_cell_faces.
  std::array<int, 4> coarse_cell_edges(int ci, int cj) const {
    return {vert_edge_[ci * ny_c_ + cj], vert_edge_[(ci + 1) * ny_c_ + cj],
            horiz_edge_[ci * (ny_c_ + 1) + cj],
            horiz_edge_[ci * (ny_c_ + 1) + cj + 1]};
  }

  /// K+ = K grown by layers_plus coarse layers, K++ = K+ grown by
  /// layers_plusplus further layers, both clipped to the domain.
  /// Requires layers_plusplus >= layers_plus >= 1 and a valid alpha.
  OversampleEntry oversample(int alpha, int layers_plus,
                             int layers_plusplus) const;
  std::vector<OversampleEntry> oversample_all(int layers_plus,
                                              int layers_plusplus) const;

  FineRect fine_rect(const CoarseRect& r) const {
    return {r.lo_i * refine_, (r.hi_i + 1) * refine_ - 1, r.lo_j * refine_,
            (r.hi_j + 1) * refine_ - 1};
  }

  /// Area-weighted coarse means of a fine field.
  CellAverages coarse_averages(const FineField& fine) const;

 private:
  MeshHierarchy() = default;

  int nx_c_ = 0, ny_c_ = 0, refine_ = 0, nx_f_ = 0, ny_f_ = 0;
  double Hx_ = 0, Hy_ = 0, hx_ = 0, hy_ = 0;
  std::vector<FineFace> faces_;
  std::vector<int> vert_face_, horiz_face_;  // structured id lookups
  std::vector<CoarseEdge> edges_;
  std::vector<int> vert_edge_, horiz_edge_;
  int n_trace_slots_ = 0;
};

/// Fine faces on the boundary of a union of coarse cells whose outward
/// flux (w.r.t. the region) is negative. `face_flux` holds the signed
/// per-face fluxes relative to the global normals; `region` is a list of
/// coarse cell indices.
std::vector<int> inflow_faces(const MeshHierarchy& mesh,
                              const std::vector<int>& region,
                              const Eigen::VectorXd& face_flux);

}  // namespace nlup
