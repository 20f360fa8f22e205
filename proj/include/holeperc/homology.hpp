#pragma once

#include <cstdint>
#include <vector>

#include "holeperc/config.hpp"
#include "holeperc/errors.hpp"

namespace holeperc {

// Desk-scale oracles for the number of holes. Both throw OracleScaleExceeded
// past their caps.
struct OracleLimits {
  std::int64_t max_open_faces = 5000;
  int max_grid_side = 41;
};

// Boundary map from the open faces to their (d-2)-faces, over Z/2.
struct ChainComplexSlice {
  std::vector<std::int64_t> cells_dm1;               // face indices of the open faces
  std::int64_t num_cells_dm2 = 0;
  std::vector<std::vector<std::int32_t>> columns;    // sorted row ids per open face
};

ChainComplexSlice boundary_slice(const Configuration& cfg, const OracleLimits& limits = {});

// Rank over Z/2 by column reduction. column_order permutes the columns
// (empty = natural order); the rank does not depend on it.
std::int64_t gf2_rank(const ChainComplexSlice& slice, const std::vector<std::size_t>& column_order = {});

// dim ker of the boundary map on (d-1)-chains = #open faces - rank.
std::int64_t betti_codim1(const Configuration& cfg, const OracleLimits& limits = {});

// Bounded components of R^d minus the open faces, by flood fill on a
// half-unit grid over [-(n+1), n+1]^d, side 4n+5.
std::int64_t complement_components_voxel(const Configuration& cfg, const OracleLimits& limits = {});

}  // namespace holeperc
