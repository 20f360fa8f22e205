#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace holeperc {

// Disjoint-set forest with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::int32_t count) : parent_(static_cast<std::size_t>(count)), size_(parent_.size(), 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::int32_t size() const noexcept { return static_cast<std::int32_t>(parent_.size()); }

  std::int32_t find(std::int32_t x) noexcept {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }

  // Returns the surviving root.
  std::int32_t unite(std::int32_t a, std::int32_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
    return a;
  }

  bool same(std::int32_t a, std::int32_t b) noexcept { return find(a) == find(b); }
  std::int32_t set_size(std::int32_t x) noexcept { return size_[static_cast<std::size_t>(find(x))]; }

 private:
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> size_;
};

}  // namespace holeperc
