#include "holeperc/verify.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <tuple>

#include "holeperc/clusters.hpp"
#include "holeperc/config.hpp"
#include "holeperc/holes.hpp"
#include "holeperc/homology.hpp"
#include "holeperc/parallel.hpp"

namespace holeperc {

namespace {

struct SeedOutcome {
  std::map<std::string, std::int64_t> checks;
  std::vector<VerifyFailure> failures;
};

class Checker {
 public:
  Checker(SeedOutcome& out, int d, int n, std::uint64_t seed) : out_(out), d_(d), n_(n), seed_(seed) {}

  void expect(const std::string& check, double p, bool ok, const std::string& detail) {
    ++out_.checks[check];
    if (!ok) out_.failures.push_back(VerifyFailure{check, d_, n_, p, seed_, detail});
  }

 private:
  SeedOutcome& out_;
  int d_;
  int n_;
  std::uint64_t seed_;
};

std::string str_count(const char* what, std::int64_t a, std::int64_t b) {
  std::ostringstream os;
  os << what << ": " << a << " vs " << b;
  return os.str();
}

// Every bond leaving a finite dual cluster crosses an open face.
bool boundary_faces_open(const Configuration& cfg, const ClusterLabeling& dual, std::string& detail) {
  const auto geo = geometry_for(cfg.window);
  for (std::int32_t v = 0; v < geo->num_vertices(); ++v) {
    const std::int32_t c = dual.label[static_cast<std::size_t>(v)];
    if (dual.touches_infinity[static_cast<std::size_t>(c)]) continue;
    for (int axis = 0; axis < geo->d(); ++axis) {
      for (int dir : {-1, 1}) {
        const std::int32_t u = geo->vertex_step(v, axis, dir);
        if (u != WindowGeometry::kOutside && dual.label[static_cast<std::size_t>(u)] == c) continue;
        const std::int32_t f = dir > 0 ? geo->face_above(v, axis) : geo->face_below(v, axis);
        if (!cfg.open_faces.test(static_cast<std::size_t>(f))) {
          detail = "closed face " + to_string(face_at(cfg.window, f)) + " on the boundary of a finite cluster";
          return false;
        }
      }
    }
  }
  // The same identity through boundary_edges, for the first finite cluster.
  for (std::int32_t c = 0; c < dual.cluster_count(); ++c) {
    if (dual.touches_infinity[static_cast<std::size_t>(c)]) continue;
    for (const DualBond& e : boundary_edges(dual, c)) {
      const Face q = face_from_dual_bond(e);
      if (!contains(cfg.window, q) || !cfg.is_open(q)) {
        detail = "boundary_edges returned a bond whose face " + to_string(q) + " is not open";
        return false;
      }
    }
    break;
  }
  return true;
}

using EdgeSet = std::set<std::pair<std::int32_t, std::int32_t>>;

EdgeSet pairs_sharing(const std::map<std::int64_t, std::vector<std::int32_t>>& by_face) {
  EdgeSet out;
  for (const auto& [face, holes] : by_face) {
    for (std::size_t i = 0; i < holes.size(); ++i) {
      for (std::size_t j = i + 1; j < holes.size(); ++j) {
        if (holes[i] != holes[j]) out.emplace(std::min(holes[i], holes[j]), std::max(holes[i], holes[j]));
      }
    }
  }
  return out;
}

// Hole adjacency two ways: holes whose regions share a boundary face, from
// cell coordinates, and finite clusters whose boundary edge sets meet.
bool adjacency_forms_agree(const HoleGraph& graph, const ClusterLabeling& dual, std::string& detail) {
  const Window& w = graph.window;
  std::map<std::int64_t, std::vector<std::int32_t>> by_face;
  std::map<std::int64_t, std::vector<std::int32_t>> by_edge;
  for (const Hole& h : graph.holes) {
    for (const std::int32_t v : h.members) {
      const DualVertex x = vertex_at(w, v);
      for (int axis = 0; axis < w.d(); ++axis) {
        for (int dir : {-1, 1}) {
          DualVertex y = x;
          y.coords[static_cast<std::size_t>(axis)] += dir;
          const bool same = contains(w, y) && graph.hole_of_vertex[static_cast<std::size_t>(vertex_index(w, y))] == h.id;
          if (same) continue;
          Face q{axis, x.coords};
          if (dir > 0) ++q.anchor[static_cast<std::size_t>(axis)];
          by_face[face_index(w, q)].push_back(h.id);
        }
      }
    }
    const std::int32_t c = dual.label[static_cast<std::size_t>(h.members.front())];
    for (const DualBond& e : boundary_edges(dual, c)) {
      const Face q = face_from_dual_bond(e);
      if (contains(w, q)) by_edge[face_index(w, q)].push_back(h.id);
    }
  }
  const EdgeSet faces = pairs_sharing(by_face);
  const EdgeSet edges = pairs_sharing(by_edge);
  const EdgeSet graph_edges(graph.edges.begin(), graph.edges.end());
  if (faces == edges && edges == graph_edges) return true;
  detail = str_count("shared boundary faces vs shared boundary edges", static_cast<std::int64_t>(faces.size()),
                     static_cast<std::int64_t>(edges.size())) +
           ", hole graph " + std::to_string(graph_edges.size());
  return false;
}

void check_seed(const VerifyOptions& opt, int d, int n, std::uint64_t seed, SeedOutcome& out) {
  Checker check(out, d, n, seed);
  const Window w(d, n);
  const UniformField field = coupled_field(w, seed, 0);
  const DualVertex origin{std::vector<int>(static_cast<std::size_t>(d), 0)};
  const auto v0 = static_cast<std::size_t>(vertex_index(w, origin));
  const bool run_oracles = n <= opt.max_n_oracle;

  std::vector<double> ps = opt.ps;
  std::sort(ps.begin(), ps.end());
  BitField prev_members(static_cast<std::size_t>(w.num_dual_vertices()));
  bool prev_span = false;
  bool prev_theta = false;
  for (double p : ps) {
    const Configuration cfg = threshold(field, p);
    const ClusterLabeling dual = dual_clusters(cfg);
    const HoleGraph graph = build_hole_graph(cfg, dual);

    // What the oracles see; differs from cfg only under fault injection.
    Configuration seen = cfg;
    if (opt.inject_fault && w.num_faces() > 0) {
      seen.open_faces.flip(static_cast<std::size_t>(seed % static_cast<std::uint64_t>(w.num_faces())));
    }

    std::int64_t finite = 0;
    std::int64_t outside_inf = 0;
    for (std::int32_t c = 0; c < dual.cluster_count(); ++c) {
      if (!dual.touches_infinity[static_cast<std::size_t>(c)]) {
        ++finite;
        outside_inf += dual.sizes[static_cast<std::size_t>(c)];
      }
    }
    std::int64_t hole_volume = 0;
    for (const Hole& h : graph.holes) hole_volume += h.size();
    const auto holes = static_cast<std::int64_t>(graph.holes.size());
    check.expect("hole_count", p, holes == finite && hole_volume == outside_inf,
                 str_count("holes vs finite dual clusters", holes, finite));
    if (run_oracles) {
      const std::int64_t betti = betti_codim1(seen);
      const std::int64_t voxel = complement_components_voxel(seen);
      check.expect("hole_count", p, holes == betti, str_count("holes vs betti", holes, betti));
      check.expect("hole_count", p, holes == voxel, str_count("holes vs voxel components", holes, voxel));
    }

    const VertexPartition via_graph = hole_cluster_partition(graph);
    const VertexPartition via_complement = hole_clusters_via_complement(seen);
    check.expect("partition", p, via_graph == via_complement,
                 str_count("hole-graph clusters vs complement components", via_graph.count, via_complement.count));

    std::string adjacency_detail;
    check.expect("adjacency", p, adjacency_forms_agree(graph, dual, adjacency_detail), adjacency_detail);

    std::string detail;
    const bool identity = boundary_faces_open(seen, dual, detail);
    check.expect("boundary_faces", p, identity, detail);

    const BitField members = hole_membership(graph);
    const bool span = count_spanning_hole_clusters(graph) > 0;
    const std::int32_t h0 = graph.hole_of_vertex[v0];
    const bool theta =
        h0 >= 0 &&
        graph.cluster_touches_boundary[static_cast<std::size_t>(graph.cluster_label[static_cast<std::size_t>(h0)])];
    check.expect("monotone_coupling", p, prev_members.is_subset_of(members), "hole membership shrank");
    check.expect("monotone_coupling", p, !(prev_span && !span), "spanning indicator dropped");
    check.expect("monotone_coupling", p, !(prev_theta && !theta), "hole indicator at 0* dropped");
    prev_members = members;
    prev_span = span;
    prev_theta = theta;

    const std::vector<std::int32_t> fast = find_trifurcations(graph);
    std::vector<std::int32_t> brute;
    for (std::int32_t v = 0; v < static_cast<std::int32_t>(w.num_dual_vertices()); ++v) {
      if (is_trifurcation(graph, v)) brute.push_back(v);
    }
    check.expect("trifurcation", p, fast == brute,
                 str_count("articulation search vs breadth-first", static_cast<std::int64_t>(fast.size()),
                           static_cast<std::int64_t>(brute.size())));
    check.expect("trifurcation", p, static_cast<std::int64_t>(fast.size()) <= w.num_boundary_vertices(),
                 str_count("trifurcations vs surface bound", static_cast<std::int64_t>(fast.size()),
                           w.num_boundary_vertices()));
  }
}

}  // namespace

VerifyResult run_verify(const VerifyOptions& options) {
  if (options.seeds < 1) throw std::invalid_argument("seeds must be positive");
  if (options.max_n < 1) throw std::invalid_argument("max_n must be positive");
  for (double p : options.ps) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p values must lie in [0,1]");
  }
  for (int d : options.dims) (void)Dim(d);

  VerifyResult result;
  const int jobs = resolve_jobs(options.jobs);
  for (int d : options.dims) {
    for (int n = 1; n <= options.max_n; ++n) {
      std::vector<SeedOutcome> slots(static_cast<std::size_t>(options.seeds));
      parallel_for(options.seeds, jobs, [&](std::int64_t s) {
        check_seed(options, d, n, options.base_seed + static_cast<std::uint64_t>(s), slots[static_cast<std::size_t>(s)]);
      });
      for (auto& slot : slots) {
        for (const auto& [k, v] : slot.checks) result.checks_run[k] += v;
        for (auto& f : slot.failures) result.failures.push_back(std::move(f));
      }
    }
  }
  std::stable_sort(result.failures.begin(), result.failures.end(), [](const VerifyFailure& a, const VerifyFailure& b) {
    return std::tie(a.d, a.n, a.seed, a.p) < std::tie(b.d, b.n, b.seed, b.p);
  });
  return result;
}

std::string describe(const VerifyFailure& f) {
  char p[32];
  const auto end = std::to_chars(p, p + sizeof p, f.p).ptr;
  std::ostringstream os;
  os << "check=" << f.check << " d=" << f.d << " n=" << f.n << " p=" << std::string_view(p, end - p) << " seed=" << f.seed << ": " << f.detail;
  return os.str();
}

}  // namespace holeperc
