#pragma once

// Geometry of the cubical lattice Z^d, its dual (Z^d)* = Z^d + (1/2,...,1/2),
// the (d-1)-faces, and the face <-> dual-bond bijection.
//
// Conventions used throughout the library:
//   * Axes are 0-based: axis 0 is the first coordinate.
//   * A dual vertex x* is stored by its integer part c, x* = c + (1/2,...,1/2).
//   * A face is (axis, anchor): anchor[axis] is the degenerate value l and every
//     other anchor[j] is the lower end of the interval [anchor[j], anchor[j]+1].

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace holeperc {

inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 16;

class Dim {
 public:
  // Throws std::invalid_argument unless kMinDim <= d <= kMaxDim.
  explicit Dim(int d);
  int value() const noexcept { return d_; }
  friend bool operator==(Dim, Dim) = default;

 private:
  int d_;
};

// Lambda^n = [-n,n]^d, B(n) = {x : |x|_inf <= n}, B~(n) = {x* : |x*|_inf < n}.
class Window {
 public:
  Window(Dim d, int n);
  Window(int d, int n) : Window(Dim(d), n) {}

  int d() const noexcept { return d_.value(); }
  int n() const noexcept { return n_; }

  // Dual vertices per axis, 2n.
  int side() const noexcept { return 2 * n_; }
  // |B~(n)| = (2n)^d.
  std::int64_t num_dual_vertices() const;
  // d * (2n+1) * (2n)^(d-1): faces whose closure lies in Lambda^n.
  std::int64_t num_faces() const;
  // |dB~(n)| = (2n)^d - (2n-2)^d, the outermost dual layer.
  std::int64_t num_boundary_vertices() const;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  Dim d_;
  int n_;
};

struct DualVertex {
  std::vector<int> coords;
  friend auto operator<=>(const DualVertex&, const DualVertex&) = default;
};

// <base, base + e_axis>; base is the lexicographically smaller endpoint.
struct DualBond {
  DualVertex base;
  int axis = 0;
  DualVertex upper() const;
  friend auto operator<=>(const DualBond&, const DualBond&) = default;
};

struct Face {
  int axis = 0;
  std::vector<int> anchor;
  friend auto operator<=>(const Face&, const Face&) = default;
};

// Builds the bond between two dual vertices at l1 distance 1, in canonical
// orientation. Throws std::invalid_argument otherwise.
DualBond make_dual_bond(const DualVertex& x, const DualVertex& y);

// The unique face crossed by e: degenerate coordinate x*_i + 1/2, and
// [x*_j - 1/2, x*_j + 1/2] elsewhere.
Face face_from_dual_bond(const DualBond& e);
DualBond dual_bond_from_face(const Face& q);

// All faces Q' with Q cap Q' an elementary (d-2)-cube; always 6(d-1) of them,
// returned in sorted order. Not restricted to any window.
std::vector<Face> face_neighbors(const Face& q);

// Faces whose closure lies in Lambda^n, in canonical order: grouped by axis,
// then row-major over the anchor (last coordinate fastest).
std::vector<Face> faces_in_window(const Window& w);

// B~(n) in canonical order: row-major over c in [-n, n-1]^d.
std::vector<DualVertex> dual_vertices_in_window(const Window& w);

bool contains(const Window& w, const DualVertex& x);
bool contains(const Window& w, const Face& q);
// x* lies in the outermost dual layer, |x*|_inf = n - 1/2.
bool is_boundary(const Window& w, const DualVertex& x);

// Canonical indices. Throw std::out_of_range for elements outside the window.
std::int64_t vertex_index(const Window& w, const DualVertex& x);
DualVertex vertex_at(const Window& w, std::int64_t index);
std::int64_t face_index(const Window& w, const Face& q);
Face face_at(const Window& w, std::int64_t index);

std::string to_string(const DualVertex& x);
std::string to_string(const Face& q);

// Index tables for one window, shared by the labeling and sampling code.
// Vertex and face indices follow the canonical orders above.
class WindowGeometry {
 public:
  static constexpr std::int32_t kOutside = -1;

  explicit WindowGeometry(const Window& w);

  const Window& window() const noexcept { return window_; }
  int d() const noexcept { return window_.d(); }
  std::int32_t num_vertices() const noexcept { return num_vertices_; }
  std::int32_t num_faces() const noexcept { return num_faces_; }

  // Endpoints of the dual bond crossing face f; kOutside when the endpoint
  // lies outside B~(n).
  std::int32_t bond_lower(std::int32_t f) const noexcept { return bond_lower_[f]; }
  std::int32_t bond_upper(std::int32_t f) const noexcept { return bond_upper_[f]; }
  int face_axis(std::int32_t f) const noexcept;

  // Bit 2j: vertex sits on the low outer layer along axis j; bit 2j+1: high.
  std::uint32_t vertex_layers(std::int32_t v) const noexcept { return vertex_layers_[v]; }
  // Bit 2j: face closure meets {x_j = -n}; bit 2j+1: meets {x_j = n}.
  std::uint32_t face_sides(std::int32_t f) const noexcept { return face_sides_[f]; }

  std::int32_t vertex_stride(int axis) const noexcept { return vertex_stride_[axis]; }
  // Neighbor of v along +/- axis inside B~(n), or kOutside.
  std::int32_t vertex_step(std::int32_t v, int axis, int dir) const noexcept {
    const std::uint32_t edge = 1u << (2 * axis + (dir > 0 ? 1 : 0));
    if (vertex_layers_[v] & edge) return kOutside;
    return v + dir * vertex_stride_[axis];
  }
  // Face index of the bond <v, v + e_axis> (the upper endpoint may be outside).
  std::int32_t face_above(std::int32_t v, int axis) const noexcept;
  // Face index of the bond <v - e_axis, v>.
  std::int32_t face_below(std::int32_t v, int axis) const noexcept;

  // In-window neighbors of face f (window-filtered face_neighbors).
  std::span<const std::int32_t> face_adjacency(std::int32_t f) const noexcept {
    return {adjacency_.data() + adjacency_offsets_[f],
            adjacency_.data() + adjacency_offsets_[f + 1]};
  }

  // True when some axis has both of its opposite bits set.
  static bool spans(std::uint32_t mask) noexcept {
    return (mask & (mask >> 1) & 0x55555555u) != 0;
  }

 private:
  Window window_;
  std::int32_t num_vertices_ = 0;
  std::int32_t num_faces_ = 0;
  std::int32_t block_size_ = 0;
  std::array<std::int32_t, kMaxDim> vertex_stride_{};
  std::array<std::array<std::int32_t, kMaxDim>, kMaxDim> face_strides_{};
  std::vector<std::int32_t> face_stride_self_;
  std::vector<std::int32_t> bond_lower_;
  std::vector<std::int32_t> bond_upper_;
  std::vector<std::uint32_t> vertex_layers_;
  std::vector<std::uint32_t> face_sides_;
  std::vector<std::int64_t> adjacency_offsets_;
  std::vector<std::int32_t> adjacency_;
};

// Process-wide cache; geometry is immutable once built.
std::shared_ptr<const WindowGeometry> geometry_for(const Window& w);

}  // namespace holeperc
