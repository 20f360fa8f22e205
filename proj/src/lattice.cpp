#include "holeperc/lattice.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace holeperc {

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void check_length(const Window& w, std::size_t len, const char* what) {
  if (len != static_cast<std::size_t>(w.d())) {
    throw std::invalid_argument(std::string(what) + ": coordinate vector length " +
                                std::to_string(len) + " does not match d=" +
                                std::to_string(w.d()));
  }
}

// Extent of anchor coordinate j inside the face block of `axis`.
int face_extent(const Window& w, int axis, int j) {
  return j == axis ? 2 * w.n() + 1 : 2 * w.n();
}

}  // namespace

Dim::Dim(int d) : d_(d) {
  if (d < kMinDim || d > kMaxDim) {
    throw std::invalid_argument("dimension must lie in [" + std::to_string(kMinDim) + ", " +
                                std::to_string(kMaxDim) + "], got " + std::to_string(d));
  }
}

Window::Window(Dim d, int n) : d_(d), n_(n) {
  if (n < 0) throw std::invalid_argument("window radius must be non-negative");
}

std::int64_t Window::num_dual_vertices() const { return ipow(side(), d()); }

std::int64_t Window::num_faces() const {
  return static_cast<std::int64_t>(d()) * (2 * n_ + 1) * ipow(side(), d() - 1);
}

std::int64_t Window::num_boundary_vertices() const {
  if (n_ == 0) return 0;
  return ipow(side(), d()) - ipow(side() - 2, d());
}

DualVertex DualBond::upper() const {
  DualVertex y = base;
  y.coords.at(static_cast<std::size_t>(axis)) += 1;
  return y;
}

DualBond make_dual_bond(const DualVertex& x, const DualVertex& y) {
  if (x.coords.size() != y.coords.size()) {
    throw std::invalid_argument("dual bond endpoints have different dimensions");
  }
  int axis = -1;
  int distance = 0;
  for (std::size_t j = 0; j < x.coords.size(); ++j) {
    const int delta = y.coords[j] - x.coords[j];
    if (delta != 0) {
      distance += delta < 0 ? -delta : delta;
      axis = static_cast<int>(j);
    }
  }
  if (distance != 1) throw std::invalid_argument("dual bond endpoints must be at l1 distance 1");
  return x < y ? DualBond{x, axis} : DualBond{y, axis};
}

Face face_from_dual_bond(const DualBond& e) {
  Face q{e.axis, e.base.coords};
  q.anchor.at(static_cast<std::size_t>(e.axis)) += 1;
  return q;
}

DualBond dual_bond_from_face(const Face& q) {
  DualBond e{DualVertex{q.anchor}, q.axis};
  e.base.coords.at(static_cast<std::size_t>(q.axis)) -= 1;
  return e;
}

std::vector<Face> face_neighbors(const Face& q) {
  const int d = static_cast<int>(q.anchor.size());
  const int a = q.axis;
  std::vector<Face> out;
  out.reserve(static_cast<std::size_t>(6 * (d - 1)));
  for (int j = 0; j < d; ++j) {
    if (j == a) continue;
    // Same degenerate axis, slid by one along j: meet in a (d-2)-cube.
    for (int s : {-1, 1}) {
      Face r = q;
      r.anchor[static_cast<std::size_t>(j)] += s;
      out.push_back(std::move(r));
    }
    // Degenerate along j at an end of q's j-interval, straddling l along a.
    for (int end : {0, 1}) {
      for (int side : {-1, 0}) {
        Face r = q;
        r.axis = j;
        r.anchor[static_cast<std::size_t>(j)] += end;
        r.anchor[static_cast<std::size_t>(a)] += side;
        out.push_back(std::move(r));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool contains(const Window& w, const DualVertex& x) {
  check_length(w, x.coords.size(), "dual vertex");
  return std::all_of(x.coords.begin(), x.coords.end(),
                     [&](int c) { return c >= -w.n() && c <= w.n() - 1; });
}

bool contains(const Window& w, const Face& q) {
  check_length(w, q.anchor.size(), "face");
  if (q.axis < 0 || q.axis >= w.d()) return false;
  for (int j = 0; j < w.d(); ++j) {
    const int c = q.anchor[static_cast<std::size_t>(j)];
    const int hi = j == q.axis ? w.n() : w.n() - 1;
    if (c < -w.n() || c > hi) return false;
  }
  return true;
}

bool is_boundary(const Window& w, const DualVertex& x) {
  if (!contains(w, x)) return false;
  return std::any_of(x.coords.begin(), x.coords.end(),
                     [&](int c) { return c == -w.n() || c == w.n() - 1; });
}

std::int64_t vertex_index(const Window& w, const DualVertex& x) {
  if (!contains(w, x)) throw std::out_of_range("dual vertex " + to_string(x) + " outside window");
  std::int64_t idx = 0;
  for (int c : x.coords) idx = idx * w.side() + (c + w.n());
  return idx;
}

DualVertex vertex_at(const Window& w, std::int64_t index) {
  if (index < 0 || index >= w.num_dual_vertices()) throw std::out_of_range("vertex index");
  DualVertex x{std::vector<int>(static_cast<std::size_t>(w.d()))};
  for (int j = w.d() - 1; j >= 0; --j) {
    x.coords[static_cast<std::size_t>(j)] = static_cast<int>(index % w.side()) - w.n();
    index /= w.side();
  }
  return x;
}

std::int64_t face_index(const Window& w, const Face& q) {
  if (!contains(w, q)) throw std::out_of_range("face " + to_string(q) + " outside window");
  const std::int64_t block = (2 * w.n() + 1) * ipow(w.side(), w.d() - 1);
  std::int64_t idx = 0;
  for (int j = 0; j < w.d(); ++j) {
    idx = idx * face_extent(w, q.axis, j) + (q.anchor[static_cast<std::size_t>(j)] + w.n());
  }
  return q.axis * block + idx;
}

Face face_at(const Window& w, std::int64_t index) {
  if (index < 0 || index >= w.num_faces()) throw std::out_of_range("face index");
  const std::int64_t block = (2 * w.n() + 1) * ipow(w.side(), w.d() - 1);
  Face q{static_cast<int>(index / block), std::vector<int>(static_cast<std::size_t>(w.d()))};
  std::int64_t rem = index % block;
  for (int j = w.d() - 1; j >= 0; --j) {
    const int extent = face_extent(w, q.axis, j);
    q.anchor[static_cast<std::size_t>(j)] = static_cast<int>(rem % extent) - w.n();
    rem /= extent;
  }
  return q;
}

std::vector<Face> faces_in_window(const Window& w) {
  std::vector<Face> out;
  out.reserve(static_cast<std::size_t>(w.num_faces()));
  for (std::int64_t i = 0; i < w.num_faces(); ++i) out.push_back(face_at(w, i));
  return out;
}

std::vector<DualVertex> dual_vertices_in_window(const Window& w) {
  std::vector<DualVertex> out;
  out.reserve(static_cast<std::size_t>(w.num_dual_vertices()));
  for (std::int64_t i = 0; i < w.num_dual_vertices(); ++i) out.push_back(vertex_at(w, i));
  return out;
}

std::string to_string(const DualVertex& x) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < x.coords.size(); ++j) {
    if (j) os << ',';
    const int twice = 2 * x.coords[j] + 1;
    os << twice << "/2";
  }
  os << ')';
  return os.str();
}

std::string to_string(const Face& q) {
  std::ostringstream os;
  for (std::size_t j = 0; j < q.anchor.size(); ++j) {
    if (j) os << 'x';
    if (static_cast<int>(j) == q.axis) {
      os << '{' << q.anchor[j] << '}';
    } else {
      os << '[' << q.anchor[j] << ',' << q.anchor[j] + 1 << ']';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

WindowGeometry::WindowGeometry(const Window& w) : window_(w) {
  const int d = w.d();
  const int side = w.side();
  if (w.num_faces() >= std::numeric_limits<std::int32_t>::max()) {
    throw std::length_error("window too large for 32-bit face indices");
  }
  num_vertices_ = static_cast<std::int32_t>(w.num_dual_vertices());
  num_faces_ = static_cast<std::int32_t>(w.num_faces());
  block_size_ = d > 0 ? num_faces_ / d : 0;

  std::int32_t stride = 1;
  for (int j = d - 1; j >= 0; --j) {
    vertex_stride_[static_cast<std::size_t>(j)] = stride;
    stride *= side;
  }

  vertex_layers_.resize(static_cast<std::size_t>(num_vertices_));
  std::array<int, kMaxDim> off{};
  for (std::int32_t v = 0; v < num_vertices_; ++v) {
    std::int32_t rem = v;
    std::uint32_t mask = 0;
    for (int j = d - 1; j >= 0; --j) {
      off[static_cast<std::size_t>(j)] = rem % side;
      rem /= side;
      if (off[static_cast<std::size_t>(j)] == 0) mask |= 1u << (2 * j);
      if (off[static_cast<std::size_t>(j)] == side - 1) mask |= 1u << (2 * j + 1);
    }
    vertex_layers_[static_cast<std::size_t>(v)] = mask;
  }

  // Per-axis strides of the face blocks.
  std::array<std::array<std::int32_t, kMaxDim>, kMaxDim> fstride{};
  for (int a = 0; a < d; ++a) {
    std::int32_t s = 1;
    for (int j = d - 1; j >= 0; --j) {
      fstride[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] = s;
      s *= (j == a ? side + 1 : side);
    }
  }
  auto encode = [&](int axis, const std::array<int, kMaxDim>& anchor_off) {
    std::int32_t idx = axis * block_size_;
    for (int j = 0; j < d; ++j) {
      idx += anchor_off[static_cast<std::size_t>(j)] *
             fstride[static_cast<std::size_t>(axis)][static_cast<std::size_t>(j)];
    }
    return idx;
  };

  bond_lower_.resize(static_cast<std::size_t>(num_faces_));
  bond_upper_.resize(static_cast<std::size_t>(num_faces_));
  face_sides_.resize(static_cast<std::size_t>(num_faces_));
  adjacency_offsets_.assign(static_cast<std::size_t>(num_faces_) + 1, 0);
  adjacency_.reserve(static_cast<std::size_t>(num_faces_) * static_cast<std::size_t>(6 * (d - 1)));

  for (std::int32_t f = 0; f < num_faces_; ++f) {
    const int a = f / block_size_;
    std::int32_t rem = f % block_size_;
    for (int j = d - 1; j >= 0; --j) {
      const int extent = j == a ? side + 1 : side;
      off[static_cast<std::size_t>(j)] = rem % extent;
      rem /= extent;
    }
    // off[j] = anchor[j] + n. The crossing bond joins the dual vertices whose
    // offset along a is off[a]-1 and off[a].
    std::int32_t base = 0;
    for (int j = 0; j < d; ++j) {
      if (j != a) base += off[static_cast<std::size_t>(j)] * vertex_stride_[static_cast<std::size_t>(j)];
    }
    const int lo = off[static_cast<std::size_t>(a)] - 1;
    const int hi = off[static_cast<std::size_t>(a)];
    const std::int32_t sa = vertex_stride_[static_cast<std::size_t>(a)];
    bond_lower_[static_cast<std::size_t>(f)] = lo >= 0 ? base + lo * sa : kOutside;
    bond_upper_[static_cast<std::size_t>(f)] = hi <= side - 1 ? base + hi * sa : kOutside;

    std::uint32_t sides = 0;
    for (int j = 0; j < d; ++j) {
      const int o = off[static_cast<std::size_t>(j)];
      if (j == a) {
        if (o == 0) sides |= 1u << (2 * j);
        if (o == side) sides |= 1u << (2 * j + 1);
      } else {
        if (o == 0) sides |= 1u << (2 * j);
        if (o + 1 == side) sides |= 1u << (2 * j + 1);
      }
    }
    face_sides_[static_cast<std::size_t>(f)] = sides;

    // Neighbors: the same enumeration as face_neighbors(), filtered to the window.
    std::array<int, kMaxDim> nb = off;
    for (int j = 0; j < d; ++j) {
      if (j == a) continue;
      const auto ju = static_cast<std::size_t>(j);
      const auto au = static_cast<std::size_t>(a);
      for (int s : {-1, 1}) {
        nb[ju] = off[ju] + s;
        if (nb[ju] >= 0 && nb[ju] <= side - 1) adjacency_.push_back(encode(a, nb));
        nb[ju] = off[ju];
      }
      for (int end : {0, 1}) {
        for (int step : {-1, 0}) {
          nb[ju] = off[ju] + end;    // degenerate along j: range [0, side]
          nb[au] = off[au] + step;   // interval along a: range [0, side-1]
          if (nb[au] >= 0 && nb[au] <= side - 1) adjacency_.push_back(encode(j, nb));
          nb[ju] = off[ju];
          nb[au] = off[au];
        }
      }
    }
    adjacency_offsets_[static_cast<std::size_t>(f) + 1] = static_cast<std::int64_t>(adjacency_.size());
  }
  face_stride_self_.resize(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    face_stride_self_[static_cast<std::size_t>(a)] =
        fstride[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)];
  }
  face_strides_ = fstride;
}

int WindowGeometry::face_axis(std::int32_t f) const noexcept { return f / block_size_; }

std::int32_t WindowGeometry::face_below(std::int32_t v, int axis) const noexcept {
  // Bond <v - e_axis, v> is the face with anchor = coords(v): offsets equal v's.
  std::int32_t idx = axis * block_size_;
  std::int32_t rem = v;
  const int side = window_.side();
  for (int j = window_.d() - 1; j >= 0; --j) {
    const int o = rem % side;
    rem /= side;
    idx += o * face_strides_[static_cast<std::size_t>(axis)][static_cast<std::size_t>(j)];
  }
  return idx;
}

std::int32_t WindowGeometry::face_above(std::int32_t v, int axis) const noexcept {
  return face_below(v, axis) + face_stride_self_[static_cast<std::size_t>(axis)];
}

std::shared_ptr<const WindowGeometry> geometry_for(const Window& w) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const WindowGeometry>> cache;
  const std::lock_guard lock(mutex);
  auto& slot = cache[{w.d(), w.n()}];
  if (!slot) slot = std::make_shared<const WindowGeometry>(w);
  return slot;
}

}  // namespace holeperc
