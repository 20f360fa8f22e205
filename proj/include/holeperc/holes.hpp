#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "holeperc/bitfield.hpp"
#include "holeperc/clusters.hpp"
#include "holeperc/config.hpp"
#include "holeperc/lattice.hpp"

namespace holeperc {

// A bounded component of the complement of the open faces, identified with
// the finite dual cluster it contains.
struct Hole {
  std::int32_t id = 0;
  std::vector<std::int32_t> members;  // dual vertex indices, ascending
  std::int64_t size() const noexcept { return static_cast<std::int64_t>(members.size()); }
};

// Holes joined when they share a boundary face. "Touches boundary" means the
// hole (or cluster) contains a dual vertex of the outermost layer of B~(n);
// this is the finite-window stand-in for an infinite hole cluster.
struct HoleGraph {
  Window window{2, 0};
  std::vector<Hole> holes;
  std::vector<std::int32_t> hole_of_vertex;        // -1 outside every hole
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;  // a < b, sorted, unique
  std::vector<std::int64_t> adjacency_offsets;
  std::vector<std::int32_t> adjacency;
  std::vector<std::uint32_t> hole_layers;          // OR of member layer masks
  std::vector<std::int32_t> cluster_label;         // per hole
  std::vector<std::int32_t> cluster_size;          // holes per cluster
  std::vector<std::uint32_t> cluster_layers;
  std::vector<std::uint8_t> cluster_touches_boundary;

  std::int32_t hole_count() const noexcept { return static_cast<std::int32_t>(holes.size()); }
  std::int32_t cluster_count() const noexcept { return static_cast<std::int32_t>(cluster_size.size()); }
  std::span<const std::int32_t> neighbors(std::int32_t hole) const noexcept {
    return {adjacency.data() + adjacency_offsets[static_cast<std::size_t>(hole)],
            adjacency.data() + adjacency_offsets[static_cast<std::size_t>(hole) + 1]};
  }
  bool hole_touches_boundary(std::int32_t hole) const noexcept {
    return hole_layers[static_cast<std::size_t>(hole)] != 0;
  }
};

// One hole per finite dual cluster, ids ordered by smallest member.
std::vector<Hole> extract_holes(const Configuration& cfg);
std::vector<Hole> extract_holes(const ClusterLabeling& dual);

// Edge between two holes for every closed dual bond (open face) whose
// endpoints lie in different finite dual clusters.
HoleGraph build_hole_graph(const Configuration& cfg);
HoleGraph build_hole_graph(const Configuration& cfg, const ClusterLabeling& dual);

// Dual vertices grouped into classes; -1 for vertices outside every class.
// Class ids are ordered by smallest member.
struct VertexPartition {
  std::vector<std::int32_t> label;
  std::int32_t count = 0;
  friend bool operator==(const VertexPartition&, const VertexPartition&) = default;
};

// Components of (L^d)* - I restricted to B~(n): vertices outside every
// infinity-touching dual cluster, joined by every lattice bond between two
// such vertices regardless of its state.
VertexPartition hole_clusters_via_complement(const Configuration& cfg);
// The vertex partition induced by the hole clusters of a hole graph.
VertexPartition hole_cluster_partition(const HoleGraph& graph);

// Dual vertices belonging to some hole.
BitField hole_membership(const HoleGraph& graph);

// x* is a trifurcation when its hole is {x*}, that hole's cluster touches the
// boundary, and deleting it leaves exactly three boundary-touching components.
// Throws std::out_of_range for x* outside B~(n).
bool is_trifurcation(const Configuration& cfg, const DualVertex& x);
// Breadth-first check for a single vertex index.
bool is_trifurcation(const HoleGraph& graph, std::int32_t vertex);
// All trifurcations in one pass (articulation-point search), ascending vertex order.
std::vector<std::int32_t> find_trifurcations(const HoleGraph& graph);

// Hole clusters touching two opposite outer layers of B~(n).
std::int32_t count_spanning_hole_clusters(const HoleGraph& graph);
std::int32_t count_spanning_hole_clusters(const Configuration& cfg);

// Export: one line per hole, "hole_id size member_count: neighbor_ids...".
void write_hole_adjacency(const HoleGraph& graph, std::ostream& out);
// JSON summary: hole count, cluster count, max cluster size, per-cluster
// boundary-touching and spanning flags.
std::string hole_graph_summary_json(const HoleGraph& graph);

}  // namespace holeperc
