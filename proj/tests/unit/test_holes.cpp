#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "holeperc/holes.hpp"
#include "json.hpp"

using namespace holeperc;

namespace {

void frame(Configuration& cfg, const std::vector<int>& cell) {
  for (int a = 0; a < cfg.window.d(); ++a) {
    for (int s : {0, 1}) {
      Face q{a, cell};
      q.anchor[static_cast<std::size_t>(a)] += s;
      cfg.set_open(q);
    }
  }
}

Configuration all_open(const Window& w) {
  Configuration cfg(w);
  cfg.open_faces = cfg.open_faces.complement();
  return cfg;
}

std::int32_t vid(const Window& w, std::vector<int> c) {
  return static_cast<std::int32_t>(vertex_index(w, DualVertex{std::move(c)}));
}

// Straight corridors of framed cells leaving 0* along +e1, +e2, +e3, with
// the given number of cells per corridor.
Configuration corridors(int n, const std::vector<int>& lengths) {
  const Window w(3, n);
  Configuration cfg(w);
  frame(cfg, {0, 0, 0});
  for (int a = 0; a < 3; ++a) {
    for (int k = 1; k <= lengths[static_cast<std::size_t>(a)]; ++k) {
      std::vector<int> cell{0, 0, 0};
      cell[static_cast<std::size_t>(a)] = k;
      frame(cfg, cell);
    }
  }
  return cfg;
}

}  // namespace

TEST_CASE("holes at p = 0 and p = 1") {
  const Window w(2, 3);
  CHECK(extract_holes(Configuration(w)).empty());
  const auto holes = extract_holes(all_open(w));
  CHECK(static_cast<std::int64_t>(holes.size()) == w.num_dual_vertices());
  for (std::size_t i = 0; i < holes.size(); ++i) {
    CHECK(holes[i].id == static_cast<std::int32_t>(i));
    CHECK(holes[i].size() == 1);
  }
}

TEST_CASE("a framed cell is one hole") {
  const Window w(2, 2);
  Configuration cfg(w);
  frame(cfg, {0, 0});
  const auto holes = extract_holes(cfg);
  REQUIRE(holes.size() == 1);
  CHECK(holes[0].members == std::vector<std::int32_t>{vid(w, {0, 0})});
}

TEST_CASE("hole graph at p = 1 is the grid graph") {
  for (int n = 1; n <= 4; ++n) {
    const Window w(2, n);
    const HoleGraph g = build_hole_graph(all_open(w));
    const std::int64_t side = 2 * n;
    CHECK(static_cast<std::int64_t>(g.edges.size()) == 2 * side * (side - 1));
    CHECK(g.cluster_count() == 1);
    CHECK(g.cluster_touches_boundary[0] == 1);
    CHECK(count_spanning_hole_clusters(g) == 1);
  }
  const HoleGraph empty = build_hole_graph(Configuration(Window(2, 3)));
  CHECK(empty.holes.empty());
  CHECK(empty.edges.empty());
  CHECK(count_spanning_hole_clusters(empty) == 0);
}

TEST_CASE("two framed cells sharing a face") {
  const Window w(2, 3);
  Configuration cfg(w);
  frame(cfg, {0, 0});
  frame(cfg, {1, 0});
  CHECK(cfg.open_count() == 7);
  const HoleGraph g = build_hole_graph(cfg);
  CHECK(g.holes.size() == 2);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0] == std::pair<std::int32_t, std::int32_t>{0, 1});
  CHECK(g.cluster_count() == 1);
  CHECK(g.cluster_touches_boundary[0] == 0);
  CHECK(g.neighbors(0).size() == 1);
}

TEST_CASE("complement partition at the extremes") {
  const Window w(2, 3);
  const auto full = hole_clusters_via_complement(all_open(w));
  CHECK(full.count == 1);
  for (int l : full.label) CHECK(l == 0);
  const auto none = hole_clusters_via_complement(Configuration(w));
  CHECK(none.count == 0);
  for (int l : none.label) CHECK(l == -1);
}

TEST_CASE("hole-graph clusters equal components of the complement of I") {
  std::mt19937_64 rng(31);
  for (int d = 2; d <= 3; ++d) {
    for (int n = 1; n <= 5; ++n) {
      const Window w(d, n);
      for (double p : {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8}) {
        std::bernoulli_distribution coin(p);
        for (int rep = 0; rep < 200; ++rep) {
          Configuration cfg(w);
          for (std::size_t f = 0; f < cfg.open_faces.size(); ++f) cfg.open_faces.set(f, coin(rng));
          const HoleGraph g = build_hole_graph(cfg);
          REQUIRE(hole_cluster_partition(g) == hole_clusters_via_complement(cfg));
        }
      }
    }
  }
}

TEST_CASE("hole membership is monotone under the coupling") {
  for (int d = 2; d <= 3; ++d) {
    const Window w(d, 4);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const UniformField field = coupled_field(w, seed, 0);
      BitField prev(static_cast<std::size_t>(w.num_dual_vertices()));
      for (double p = 0.1; p < 0.95; p += 0.1) {
        const BitField cur = hole_membership(build_hole_graph(threshold(field, p)));
        REQUIRE(prev.is_subset_of(cur));
        prev = cur;
      }
    }
  }
}

TEST_CASE("trifurcation at the centre of three corridors") {
  const Configuration cfg = corridors(3, {2, 2, 2});
  const Window& w = cfg.window;
  const HoleGraph g = build_hole_graph(cfg);
  CHECK(g.holes.size() == 7);
  CHECK(g.cluster_count() == 1);
  CHECK(is_trifurcation(cfg, DualVertex{{0, 0, 0}}));
  CHECK_FALSE(is_trifurcation(cfg, DualVertex{{1, 0, 0}}));
  CHECK_FALSE(is_trifurcation(cfg, DualVertex{{-1, 0, 0}}));
  CHECK(find_trifurcations(g) == std::vector<std::int32_t>{vid(w, {0, 0, 0})});
  CHECK_THROWS_AS(is_trifurcation(cfg, DualVertex{{3, 0, 0}}), std::out_of_range);

  // A corridor that stops short of the outer layer does not count.
  const Configuration shorter = corridors(3, {1, 2, 2});
  CHECK(build_hole_graph(shorter).cluster_count() == 1);
  CHECK_FALSE(is_trifurcation(shorter, DualVertex{{0, 0, 0}}));
}

TEST_CASE("no trifurcations at the extremes") {
  for (int d = 2; d <= 3; ++d) {
    const Window w(d, 3);
    const HoleGraph full = build_hole_graph(all_open(w));
    CHECK(find_trifurcations(full).empty());
    for (std::int32_t v = 0; v < static_cast<std::int32_t>(w.num_dual_vertices()); ++v) {
      CHECK_FALSE(is_trifurcation(full, v));
    }
    const HoleGraph none = build_hole_graph(Configuration(w));
    CHECK(find_trifurcations(none).empty());
    CHECK_FALSE(is_trifurcation(Configuration(w), DualVertex{std::vector<int>(static_cast<std::size_t>(d), 0)}));
  }
}

TEST_CASE("articulation search agrees with per-vertex breadth-first search") {
  std::mt19937_64 rng(8);
  std::int64_t found = 0;
  for (int d = 2; d <= 3; ++d) {
    for (int n = 2; n <= 5; ++n) {
      const Window w(d, n);
      for (double p : {0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
        std::bernoulli_distribution coin(p);
        for (int rep = 0; rep < 40; ++rep) {
          Configuration cfg(w);
          for (std::size_t f = 0; f < cfg.open_faces.size(); ++f) cfg.open_faces.set(f, coin(rng));
          const HoleGraph g = build_hole_graph(cfg);
          std::vector<std::int32_t> brute;
          for (std::int32_t v = 0; v < static_cast<std::int32_t>(w.num_dual_vertices()); ++v) {
            if (is_trifurcation(g, v)) brute.push_back(v);
          }
          const auto fast = find_trifurcations(g);
          REQUIRE(fast == brute);
          REQUIRE(static_cast<std::int64_t>(fast.size()) <= w.num_boundary_vertices());
          found += static_cast<std::int64_t>(fast.size());
        }
      }
    }
  }
  // The comparison is only meaningful if some trifurcations occur.
  CHECK(found > 0);
}

TEST_CASE("hole graph export formats") {
  const Window w(2, 3);
  Configuration cfg(w);
  frame(cfg, {0, 0});
  frame(cfg, {1, 0});
  frame(cfg, {-3, -3});
  const HoleGraph g = build_hole_graph(cfg);
  std::ostringstream os;
  write_hole_adjacency(g, os);
  CHECK(os.str() == "0 1 1:\n1 1 1: 2\n2 1 1: 1\n");
  const auto j = nlohmann::json::parse(hole_graph_summary_json(g));
  CHECK(j["hole_count"] == 3);
  CHECK(j["cluster_count"] == 2);
  CHECK(j["max_cluster_size"] == 2);
  CHECK(j["clusters"][0]["touches_boundary"] == true);
  CHECK(j["clusters"][1]["touches_boundary"] == false);
  CHECK(j["spanning_cluster_count"] == 0);
}
