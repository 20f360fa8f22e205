#include "holeperc/holes.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

#include "holeperc/union_find.hpp"

namespace holeperc {

std::vector<Hole> extract_holes(const ClusterLabeling& dual) {
  if (dual.subject != ClusterSubject::dual_vertices) {
    throw std::invalid_argument("extract_holes requires a dual-vertex labeling");
  }
  std::vector<std::int32_t> hole_of_cluster(static_cast<std::size_t>(dual.cluster_count()), -1);
  std::vector<Hole> holes;
  for (std::int32_t c = 0; c < dual.cluster_count(); ++c) {
    if (dual.touches_infinity[static_cast<std::size_t>(c)]) continue;
    hole_of_cluster[static_cast<std::size_t>(c)] = static_cast<std::int32_t>(holes.size());
    holes.push_back(Hole{static_cast<std::int32_t>(holes.size()), {}});
    holes.back().members.reserve(static_cast<std::size_t>(dual.sizes[static_cast<std::size_t>(c)]));
  }
  for (std::size_t v = 0; v < dual.label.size(); ++v) {
    const std::int32_t h = hole_of_cluster[static_cast<std::size_t>(dual.label[v])];
    if (h >= 0) holes[static_cast<std::size_t>(h)].members.push_back(static_cast<std::int32_t>(v));
  }
  return holes;
}

std::vector<Hole> extract_holes(const Configuration& cfg) { return extract_holes(dual_clusters(cfg)); }

HoleGraph build_hole_graph(const Configuration& cfg, const ClusterLabeling& dual) {
  const auto geo = geometry_for(cfg.window);
  HoleGraph g;
  g.window = cfg.window;
  g.holes = extract_holes(dual);
  g.hole_of_vertex.assign(static_cast<std::size_t>(geo->num_vertices()), -1);
  g.hole_layers.assign(g.holes.size(), 0);
  for (const Hole& h : g.holes) {
    for (std::int32_t v : h.members) {
      g.hole_of_vertex[static_cast<std::size_t>(v)] = h.id;
      g.hole_layers[static_cast<std::size_t>(h.id)] |= geo->vertex_layers(v);
    }
  }

  for (std::int32_t f = 0; f < geo->num_faces(); ++f) {
    if (!cfg.open_faces.test(static_cast<std::size_t>(f))) continue;
    const std::int32_t lo = geo->bond_lower(f);
    const std::int32_t hi = geo->bond_upper(f);
    if (lo == WindowGeometry::kOutside || hi == WindowGeometry::kOutside) continue;
    const std::int32_t a = g.hole_of_vertex[static_cast<std::size_t>(lo)];
    const std::int32_t b = g.hole_of_vertex[static_cast<std::size_t>(hi)];
    if (a < 0 || b < 0 || a == b) continue;
    g.edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());

  const std::size_t nh = g.holes.size();
  g.adjacency_offsets.assign(nh + 1, 0);
  for (const auto& [a, b] : g.edges) {
    ++g.adjacency_offsets[static_cast<std::size_t>(a) + 1];
    ++g.adjacency_offsets[static_cast<std::size_t>(b) + 1];
  }
  for (std::size_t i = 0; i < nh; ++i) g.adjacency_offsets[i + 1] += g.adjacency_offsets[i];
  g.adjacency.resize(static_cast<std::size_t>(g.adjacency_offsets[nh]));
  std::vector<std::int64_t> fill(g.adjacency_offsets.begin(), g.adjacency_offsets.end() - 1);
  for (const auto& [a, b] : g.edges) {
    g.adjacency[static_cast<std::size_t>(fill[static_cast<std::size_t>(a)]++)] = b;
    g.adjacency[static_cast<std::size_t>(fill[static_cast<std::size_t>(b)]++)] = a;
  }

  UnionFind uf(static_cast<std::int32_t>(nh));
  for (const auto& [a, b] : g.edges) uf.unite(a, b);
  g.cluster_label.assign(nh, -1);
  std::vector<std::int32_t> id_of_root(nh, -1);
  for (std::int32_t h = 0; h < static_cast<std::int32_t>(nh); ++h) {
    auto& id = id_of_root[static_cast<std::size_t>(uf.find(h))];
    if (id < 0) {
      id = static_cast<std::int32_t>(g.cluster_size.size());
      g.cluster_size.push_back(0);
      g.cluster_layers.push_back(0);
    }
    g.cluster_label[static_cast<std::size_t>(h)] = id;
    g.cluster_size[static_cast<std::size_t>(id)] += 1;
    g.cluster_layers[static_cast<std::size_t>(id)] |= g.hole_layers[static_cast<std::size_t>(h)];
  }
  g.cluster_touches_boundary.resize(g.cluster_size.size());
  for (std::size_t c = 0; c < g.cluster_size.size(); ++c) {
    g.cluster_touches_boundary[c] = g.cluster_layers[c] != 0 ? 1 : 0;
  }
  return g;
}

HoleGraph build_hole_graph(const Configuration& cfg) { return build_hole_graph(cfg, dual_clusters(cfg)); }

namespace {

VertexPartition canonical_partition(UnionFind& uf, const std::vector<std::uint8_t>& included) {
  VertexPartition out;
  out.label.assign(included.size(), -1);
  std::vector<std::int32_t> id_of_root(included.size(), -1);
  for (std::size_t v = 0; v < included.size(); ++v) {
    if (!included[v]) continue;
    auto& id = id_of_root[static_cast<std::size_t>(uf.find(static_cast<std::int32_t>(v)))];
    if (id < 0) id = out.count++;
    out.label[v] = id;
  }
  return out;
}

}  // namespace

VertexPartition hole_clusters_via_complement(const Configuration& cfg) {
  const auto geo = geometry_for(cfg.window);
  const ClusterLabeling dual = dual_clusters(cfg);
  const std::int32_t nv = geo->num_vertices();
  std::vector<std::uint8_t> outside_infinite(static_cast<std::size_t>(nv), 0);
  for (std::int32_t v = 0; v < nv; ++v) {
    outside_infinite[static_cast<std::size_t>(v)] =
        dual.touches_infinity[static_cast<std::size_t>(dual.label[static_cast<std::size_t>(v)])] ? 0 : 1;
  }
  UnionFind uf(nv);
  for (std::int32_t v = 0; v < nv; ++v) {
    if (!outside_infinite[static_cast<std::size_t>(v)]) continue;
    for (int axis = 0; axis < geo->d(); ++axis) {
      const std::int32_t u = geo->vertex_step(v, axis, +1);
      if (u != WindowGeometry::kOutside && outside_infinite[static_cast<std::size_t>(u)]) uf.unite(v, u);
    }
  }
  return canonical_partition(uf, outside_infinite);
}

VertexPartition hole_cluster_partition(const HoleGraph& graph) {
  VertexPartition out;
  out.label.assign(graph.hole_of_vertex.size(), -1);
  std::vector<std::int32_t> remap(static_cast<std::size_t>(graph.cluster_count()), -1);
  for (std::size_t v = 0; v < graph.hole_of_vertex.size(); ++v) {
    const std::int32_t h = graph.hole_of_vertex[v];
    if (h < 0) continue;
    auto& id = remap[static_cast<std::size_t>(graph.cluster_label[static_cast<std::size_t>(h)])];
    if (id < 0) id = out.count++;
    out.label[v] = id;
  }
  return out;
}

BitField hole_membership(const HoleGraph& graph) {
  BitField out(graph.hole_of_vertex.size());
  for (std::size_t v = 0; v < graph.hole_of_vertex.size(); ++v) {
    if (graph.hole_of_vertex[v] >= 0) out.set(v);
  }
  return out;
}

bool is_trifurcation(const HoleGraph& graph, std::int32_t vertex) {
  if (vertex < 0 || static_cast<std::size_t>(vertex) >= graph.hole_of_vertex.size()) {
    throw std::out_of_range("vertex outside window");
  }
  const std::int32_t h = graph.hole_of_vertex[static_cast<std::size_t>(vertex)];
  if (h < 0 || graph.holes[static_cast<std::size_t>(h)].size() != 1) return false;
  if (!graph.cluster_touches_boundary[static_cast<std::size_t>(graph.cluster_label[static_cast<std::size_t>(h)])]) {
    return false;
  }
  std::vector<std::uint8_t> seen(graph.holes.size(), 0);
  seen[static_cast<std::size_t>(h)] = 1;
  int touching = 0;
  std::deque<std::int32_t> queue;
  for (std::int32_t start : graph.neighbors(h)) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    bool touches = false;
    seen[static_cast<std::size_t>(start)] = 1;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::int32_t cur = queue.front();
      queue.pop_front();
      touches = touches || graph.hole_touches_boundary(cur);
      for (std::int32_t nb : graph.neighbors(cur)) {
        if (!seen[static_cast<std::size_t>(nb)]) {
          seen[static_cast<std::size_t>(nb)] = 1;
          queue.push_back(nb);
        }
      }
    }
    if (touches) ++touching;
  }
  return touching == 3;
}

bool is_trifurcation(const Configuration& cfg, const DualVertex& x) {
  const auto v = static_cast<std::int32_t>(vertex_index(cfg.window, x));
  return is_trifurcation(build_hole_graph(cfg), v);
}

std::vector<std::int32_t> find_trifurcations(const HoleGraph& graph) {
  const auto nh = static_cast<std::int32_t>(graph.holes.size());
  std::vector<std::int32_t> disc(static_cast<std::size_t>(nh), -1);
  std::vector<std::int32_t> low(static_cast<std::size_t>(nh), 0);
  std::vector<std::int32_t> parent(static_cast<std::size_t>(nh), -1);
  // Boundary-touching holes in the DFS subtree.
  std::vector<std::int64_t> sub(static_cast<std::size_t>(nh), 0);
  // Separated child subtrees that touch the boundary, and their touching total.
  std::vector<std::int32_t> separated_touching(static_cast<std::size_t>(nh), 0);
  std::vector<std::int64_t> separated_sum(static_cast<std::size_t>(nh), 0);
  std::vector<std::int64_t> cluster_total(static_cast<std::size_t>(graph.cluster_count()), 0);
  for (std::int32_t h = 0; h < nh; ++h) {
    if (graph.hole_touches_boundary(h)) ++cluster_total[static_cast<std::size_t>(graph.cluster_label[static_cast<std::size_t>(h)])];
  }

  std::vector<std::int32_t> result_holes;
  std::vector<std::pair<std::int32_t, std::int64_t>> stack;  // (hole, next adjacency slot)
  std::int32_t timer = 0;
  for (std::int32_t root = 0; root < nh; ++root) {
    if (disc[static_cast<std::size_t>(root)] >= 0) continue;
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
    sub[static_cast<std::size_t>(root)] = graph.hole_touches_boundary(root) ? 1 : 0;
    stack.emplace_back(root, graph.adjacency_offsets[static_cast<std::size_t>(root)]);
    while (!stack.empty()) {
      auto& [v, slot] = stack.back();
      const auto vu = static_cast<std::size_t>(v);
      if (slot < graph.adjacency_offsets[vu + 1]) {
        const std::int32_t w = graph.adjacency[static_cast<std::size_t>(slot++)];
        const auto wu = static_cast<std::size_t>(w);
        if (disc[wu] < 0) {
          parent[wu] = v;
          disc[wu] = low[wu] = timer++;
          sub[wu] = graph.hole_touches_boundary(w) ? 1 : 0;
          stack.emplace_back(w, graph.adjacency_offsets[wu]);
        } else if (w != parent[vu]) {
          low[vu] = std::min(low[vu], disc[wu]);
        }
        continue;
      }
      const std::int32_t child = v;
      stack.pop_back();
      const std::int32_t p = parent[static_cast<std::size_t>(child)];
      if (p < 0) continue;
      const auto pu = static_cast<std::size_t>(p);
      const auto cu = static_cast<std::size_t>(child);
      low[pu] = std::min(low[pu], low[cu]);
      sub[pu] += sub[cu];
      if (low[cu] >= disc[pu]) {
        separated_sum[pu] += sub[cu];
        if (sub[cu] > 0) ++separated_touching[pu];
      }
    }
  }

  std::vector<std::int32_t> out;
  for (std::int32_t h = 0; h < nh; ++h) {
    const auto hu = static_cast<std::size_t>(h);
    if (graph.holes[hu].size() != 1) continue;
    const std::int32_t c = graph.cluster_label[hu];
    if (!graph.cluster_touches_boundary[static_cast<std::size_t>(c)]) continue;
    int components = separated_touching[hu];
    if (parent[hu] >= 0) {
      const std::int64_t rest = cluster_total[static_cast<std::size_t>(c)] - (graph.hole_touches_boundary(h) ? 1 : 0) -
                                separated_sum[hu];
      if (rest > 0) ++components;
    }
    if (components == 3) out.push_back(graph.holes[hu].members.front());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int32_t count_spanning_hole_clusters(const HoleGraph& graph) {
  std::int32_t count = 0;
  for (std::uint32_t mask : graph.cluster_layers) {
    if (WindowGeometry::spans(mask)) ++count;
  }
  return count;
}

std::int32_t count_spanning_hole_clusters(const Configuration& cfg) {
  return count_spanning_hole_clusters(build_hole_graph(cfg));
}

void write_hole_adjacency(const HoleGraph& graph, std::ostream& out) {
  for (const Hole& h : graph.holes) {
    out << h.id << ' ' << h.size() << ' ' << h.members.size() << ':';
    for (std::int32_t nb : graph.neighbors(h.id)) out << ' ' << nb;
    out << '\n';
  }
}

std::string hole_graph_summary_json(const HoleGraph& graph) {
  nlohmann::json j;
  j["d"] = graph.window.d();
  j["n"] = graph.window.n();
  j["hole_count"] = graph.hole_count();
  j["edge_count"] = graph.edges.size();
  j["cluster_count"] = graph.cluster_count();
  std::int32_t max_size = 0;
  for (std::int32_t s : graph.cluster_size) max_size = std::max(max_size, s);
  j["max_cluster_size"] = max_size;
  auto clusters = nlohmann::json::array();
  for (std::int32_t c = 0; c < graph.cluster_count(); ++c) {
    const auto cu = static_cast<std::size_t>(c);
    clusters.push_back({{"id", c},
                        {"holes", graph.cluster_size[cu]},
                        {"touches_boundary", graph.cluster_touches_boundary[cu] != 0},
                        {"spanning", WindowGeometry::spans(graph.cluster_layers[cu])}});
  }
  j["clusters"] = std::move(clusters);
  j["spanning_cluster_count"] = count_spanning_hole_clusters(graph);
  return j.dump(2);
}

}  // namespace holeperc
