#pragma once

#include <cstdint>
#include <vector>

#include "holeperc/bitfield.hpp"
#include "holeperc/config.hpp"
#include "holeperc/lattice.hpp"

namespace holeperc {

enum class ClusterSubject { dual_vertices, faces };

// Partition of the dual vertices of B~(n) (or of the open in-window faces).
// Cluster ids are dense and ordered by the smallest element index they
// contain, so labels do not depend on the order edges were processed.
struct ClusterLabeling {
  ClusterSubject subject = ClusterSubject::dual_vertices;
  Window window{2, 0};
  // Cluster id per element; -1 for closed faces when subject == faces.
  std::vector<std::int32_t> label;
  std::vector<std::uint8_t> touches_infinity;
  std::vector<std::int64_t> sizes;
  // Smallest element index of each cluster.
  std::vector<std::int32_t> representative;

  std::int32_t cluster_count() const noexcept { return static_cast<std::int32_t>(sizes.size()); }
  // Element indices of one cluster, ascending.
  std::vector<std::int32_t> members(std::int32_t cluster_id) const;
};

// Clusters of open dual bonds; a dual bond is open iff its face is closed.
// Bonds leaving B~(n) are open whenever their face is closed, and every bond
// outside the window is open, so the exterior acts as one "infinity" node.
ClusterLabeling dual_clusters(const Configuration& cfg);
// Same, from an explicit dual-bond state vector indexed by face.
ClusterLabeling dual_clusters_from_bonds(const Window& w, const BitField& bond_open);

// Open faces grouped by (d-2)-cube adjacency; touches_infinity marks clusters
// meeting the boundary of Lambda^n.
ClusterLabeling face_clusters(const Configuration& cfg);

// Delta C*: bonds with exactly one endpoint in the cluster, including bonds
// leaving the window. Sorted. Throws std::out_of_range for an unknown id and
// std::invalid_argument for face labelings.
std::vector<DualBond> boundary_edges(const ClusterLabeling& labeling, std::int32_t cluster_id);

// True when some cluster of open internal bonds (both endpoints in B~(n))
// touches two opposite outer layers of B~(n).
bool internal_dual_spans(const Window& w, const BitField& bond_open);

}  // namespace holeperc
