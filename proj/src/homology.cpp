#include "holeperc/homology.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>
#include <string>
#include <unordered_map>

namespace holeperc {

namespace {

// Key for a (d-2)-face: its two degenerate axes and its anchor.
std::int64_t ridge_key(int d, int n, int a, int b, const std::vector<int>& anchor) {
  const std::int64_t base = 2 * n + 1;
  std::int64_t key = a * d + b;
  for (int j = 0; j < d; ++j) key = key * base + (anchor[static_cast<std::size_t>(j)] + n);
  return key;
}

}  // namespace

ChainComplexSlice boundary_slice(const Configuration& cfg, const OracleLimits& limits) {
  const auto open = static_cast<std::int64_t>(cfg.open_count());
  if (open > limits.max_open_faces) {
    throw OracleScaleExceeded("boundary matrix has " + std::to_string(open) + " columns, cap is " +
                              std::to_string(limits.max_open_faces));
  }
  const int d = cfg.window.d();
  const int n = cfg.window.n();
  ChainComplexSlice slice;
  std::unordered_map<std::int64_t, std::int32_t> row_of;
  for (std::int64_t f = 0; f < cfg.window.num_faces(); ++f) {
    if (!cfg.open_faces.test(static_cast<std::size_t>(f))) continue;
    const Face q = face_at(cfg.window, f);
    std::vector<std::int32_t> column;
    column.reserve(static_cast<std::size_t>(2 * (d - 1)));
    for (int j = 0; j < d; ++j) {
      if (j == q.axis) continue;
      std::vector<int> anchor = q.anchor;
      for (int shift = 0; shift < 2; ++shift) {
        anchor[static_cast<std::size_t>(j)] = q.anchor[static_cast<std::size_t>(j)] + shift;
        const std::int64_t key = ridge_key(d, n, std::min(q.axis, j), std::max(q.axis, j), anchor);
        auto [it, inserted] = row_of.try_emplace(key, static_cast<std::int32_t>(slice.num_cells_dm2));
        if (inserted) ++slice.num_cells_dm2;
        column.push_back(it->second);
      }
    }
    std::sort(column.begin(), column.end());
    slice.cells_dm1.push_back(f);
    slice.columns.push_back(std::move(column));
  }
  return slice;
}

std::int64_t gf2_rank(const ChainComplexSlice& slice, const std::vector<std::size_t>& column_order) {
  std::vector<std::size_t> order = column_order;
  if (order.empty()) {
    order.resize(slice.columns.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
  }
  // Standard lowest-one reduction: each pivot row is owned by one reduced column.
  std::unordered_map<std::int32_t, std::vector<std::int32_t>> owner;
  std::int64_t rank = 0;
  std::vector<std::int32_t> scratch;
  for (std::size_t idx : order) {
    std::vector<std::int32_t> col = slice.columns.at(idx);
    while (!col.empty()) {
      auto it = owner.find(col.back());
      if (it == owner.end()) break;
      scratch.clear();
      std::set_symmetric_difference(col.begin(), col.end(), it->second.begin(), it->second.end(),
                                    std::back_inserter(scratch));
      col.swap(scratch);
    }
    if (!col.empty()) {
      ++rank;
      const std::int32_t pivot = col.back();
      owner.emplace(pivot, std::move(col));
    }
  }
  return rank;
}

std::int64_t betti_codim1(const Configuration& cfg, const OracleLimits& limits) {
  const ChainComplexSlice slice = boundary_slice(cfg, limits);
  return static_cast<std::int64_t>(slice.columns.size()) - gf2_rank(slice);
}

std::int64_t complement_components_voxel(const Configuration& cfg, const OracleLimits& limits) {
  const int d = cfg.window.d();
  const int n = cfg.window.n();
  const int side = 4 * n + 5;
  if (side > limits.max_grid_side) {
    throw OracleScaleExceeded("voxel grid side " + std::to_string(side) + " exceeds cap " +
                              std::to_string(limits.max_grid_side));
  }
  std::vector<std::int64_t> stride(static_cast<std::size_t>(d));
  std::int64_t total = 1;
  for (int j = d - 1; j >= 0; --j) {
    stride[static_cast<std::size_t>(j)] = total;
    total *= side;
  }
  // Grid coordinate g = 2 (x + n + 1): even g are integer positions.
  std::vector<std::uint8_t> blocked(static_cast<std::size_t>(total), 0);
  std::vector<int> offset(static_cast<std::size_t>(d));
  for (std::int64_t f = 0; f < cfg.window.num_faces(); ++f) {
    if (!cfg.open_faces.test(static_cast<std::size_t>(f))) continue;
    const Face q = face_at(cfg.window, f);
    std::int64_t corner = 0;
    for (int j = 0; j < d; ++j) corner += 2 * (q.anchor[static_cast<std::size_t>(j)] + n + 1) * stride[static_cast<std::size_t>(j)];
    // Closed face: 3 grid points along each nondegenerate axis.
    std::fill(offset.begin(), offset.end(), 0);
    while (true) {
      std::int64_t idx = corner;
      for (int j = 0; j < d; ++j) idx += offset[static_cast<std::size_t>(j)] * stride[static_cast<std::size_t>(j)];
      blocked[static_cast<std::size_t>(idx)] = 1;
      int j = d - 1;
      for (; j >= 0; --j) {
        if (j == q.axis) continue;
        if (++offset[static_cast<std::size_t>(j)] < 3) break;
        offset[static_cast<std::size_t>(j)] = 0;
      }
      if (j < 0) break;
    }
  }

  std::vector<std::uint8_t> seen(blocked);
  std::vector<std::int64_t> stack;
  std::vector<int> coord(static_cast<std::size_t>(d));
  std::int64_t bounded = 0;
  for (std::int64_t start = 0; start < total; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    seen[static_cast<std::size_t>(start)] = 1;
    stack.push_back(start);
    bool touches_edge = false;
    while (!stack.empty()) {
      const std::int64_t cur = stack.back();
      stack.pop_back();
      std::int64_t rest = cur;
      for (int j = 0; j < d; ++j) {
        coord[static_cast<std::size_t>(j)] = static_cast<int>(rest / stride[static_cast<std::size_t>(j)]);
        rest %= stride[static_cast<std::size_t>(j)];
      }
      for (int j = 0; j < d; ++j) {
        const int c = coord[static_cast<std::size_t>(j)];
        if (c == 0 || c == side - 1) touches_edge = true;
        for (int dir : {-1, 1}) {
          const int nc = c + dir;
          if (nc < 0 || nc >= side) continue;
          const std::int64_t nb = cur + dir * stride[static_cast<std::size_t>(j)];
          if (!seen[static_cast<std::size_t>(nb)]) {
            seen[static_cast<std::size_t>(nb)] = 1;
            stack.push_back(nb);
          }
        }
      }
    }
    if (!touches_edge) ++bounded;
  }
  return bounded;
}

}  // namespace holeperc
