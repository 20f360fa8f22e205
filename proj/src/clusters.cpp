#include "holeperc/clusters.hpp"

#include <algorithm>
#include <stdexcept>

#include "holeperc/union_find.hpp"

namespace holeperc {

namespace {

// Assigns dense ids in order of first appearance over elements [0, count).
// Elements for which include(i) is false get -1.
template <typename Include>
void canonicalize(UnionFind& uf, std::int32_t count, Include include, ClusterLabeling& out) {
  out.label.assign(static_cast<std::size_t>(count), -1);
  std::vector<std::int32_t> id_of_root(static_cast<std::size_t>(uf.size()), -1);
  for (std::int32_t i = 0; i < count; ++i) {
    if (!include(i)) continue;
    const std::int32_t root = uf.find(i);
    auto& id = id_of_root[static_cast<std::size_t>(root)];
    if (id < 0) {
      id = static_cast<std::int32_t>(out.sizes.size());
      out.sizes.push_back(0);
      out.touches_infinity.push_back(0);
      out.representative.push_back(i);
    }
    out.label[static_cast<std::size_t>(i)] = id;
    out.sizes[static_cast<std::size_t>(id)] += 1;
  }
}

}  // namespace

std::vector<std::int32_t> ClusterLabeling::members(std::int32_t cluster_id) const {
  if (cluster_id < 0 || cluster_id >= cluster_count()) throw std::out_of_range("unknown cluster id");
  std::vector<std::int32_t> out;
  out.reserve(static_cast<std::size_t>(sizes[static_cast<std::size_t>(cluster_id)]));
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (label[i] == cluster_id) out.push_back(static_cast<std::int32_t>(i));
  }
  return out;
}

ClusterLabeling dual_clusters_from_bonds(const Window& w, const BitField& bond_open) {
  const auto geo = geometry_for(w);
  if (bond_open.size() != static_cast<std::size_t>(geo->num_faces())) {
    throw std::invalid_argument("bond state length does not match the window");
  }
  const std::int32_t nv = geo->num_vertices();
  const std::int32_t infinity = nv;
  UnionFind uf(nv + 1);
  for (std::int32_t f = 0; f < geo->num_faces(); ++f) {
    if (!bond_open.test(static_cast<std::size_t>(f))) continue;
    const std::int32_t lo = geo->bond_lower(f);
    const std::int32_t hi = geo->bond_upper(f);
    uf.unite(lo == WindowGeometry::kOutside ? infinity : lo, hi == WindowGeometry::kOutside ? infinity : hi);
  }
  ClusterLabeling out;
  out.subject = ClusterSubject::dual_vertices;
  out.window = w;
  canonicalize(uf, nv, [](std::int32_t) { return true; }, out);
  if (nv > 0) {
    const std::int32_t inf_root = uf.find(infinity);
    for (std::int32_t c = 0; c < out.cluster_count(); ++c) {
      if (uf.find(out.representative[static_cast<std::size_t>(c)]) == inf_root) {
        out.touches_infinity[static_cast<std::size_t>(c)] = 1;
      }
    }
  }
  return out;
}

ClusterLabeling dual_clusters(const Configuration& cfg) {
  return dual_clusters_from_bonds(cfg.window, cfg.open_faces.complement());
}

ClusterLabeling face_clusters(const Configuration& cfg) {
  const auto geo = geometry_for(cfg.window);
  const std::int32_t nf = geo->num_faces();
  UnionFind uf(nf);
  for (std::int32_t f = 0; f < nf; ++f) {
    if (!cfg.open_faces.test(static_cast<std::size_t>(f))) continue;
    for (std::int32_t g : geo->face_adjacency(f)) {
      if (g > f && cfg.open_faces.test(static_cast<std::size_t>(g))) uf.unite(f, g);
    }
  }
  ClusterLabeling out;
  out.subject = ClusterSubject::faces;
  out.window = cfg.window;
  canonicalize(uf, nf, [&](std::int32_t f) { return cfg.open_faces.test(static_cast<std::size_t>(f)); }, out);
  for (std::int32_t f = 0; f < nf; ++f) {
    const std::int32_t c = out.label[static_cast<std::size_t>(f)];
    if (c >= 0 && geo->face_sides(f) != 0) out.touches_infinity[static_cast<std::size_t>(c)] = 1;
  }
  return out;
}

std::vector<DualBond> boundary_edges(const ClusterLabeling& labeling, std::int32_t cluster_id) {
  if (labeling.subject != ClusterSubject::dual_vertices) {
    throw std::invalid_argument("boundary_edges requires a dual-vertex labeling");
  }
  if (cluster_id < 0 || cluster_id >= labeling.cluster_count()) {
    throw std::out_of_range("unknown cluster id " + std::to_string(cluster_id));
  }
  const auto geo = geometry_for(labeling.window);
  std::vector<DualBond> out;
  for (std::int32_t v = 0; v < geo->num_vertices(); ++v) {
    if (labeling.label[static_cast<std::size_t>(v)] != cluster_id) continue;
    for (int axis = 0; axis < geo->d(); ++axis) {
      for (int dir : {-1, 1}) {
        const std::int32_t u = geo->vertex_step(v, axis, dir);
        if (u != WindowGeometry::kOutside && labeling.label[static_cast<std::size_t>(u)] == cluster_id) continue;
        const std::int32_t f = dir > 0 ? geo->face_above(v, axis) : geo->face_below(v, axis);
        out.push_back(dual_bond_from_face(face_at(labeling.window, f)));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool internal_dual_spans(const Window& w, const BitField& bond_open) {
  const auto geo = geometry_for(w);
  const std::int32_t nv = geo->num_vertices();
  UnionFind uf(nv);
  for (std::int32_t f = 0; f < geo->num_faces(); ++f) {
    if (!bond_open.test(static_cast<std::size_t>(f))) continue;
    const std::int32_t lo = geo->bond_lower(f);
    const std::int32_t hi = geo->bond_upper(f);
    if (lo != WindowGeometry::kOutside && hi != WindowGeometry::kOutside) uf.unite(lo, hi);
  }
  std::vector<std::uint32_t> mask(static_cast<std::size_t>(nv), 0);
  for (std::int32_t v = 0; v < nv; ++v) {
    auto& m = mask[static_cast<std::size_t>(uf.find(v))];
    m |= geo->vertex_layers(v);
    if (WindowGeometry::spans(m)) return true;
  }
  return false;
}

}  // namespace holeperc
