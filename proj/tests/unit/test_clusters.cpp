#include <map>
#include <queue>
#include <random>
#include <vector>

#include "doctest.h"
#include "holeperc/clusters.hpp"

using namespace holeperc;

namespace {

Configuration framed_cell(const Window& w, const std::vector<int>& cell) {
  Configuration cfg(w);
  for (int a = 0; a < w.d(); ++a) {
    for (int s : {0, 1}) {
      Face q{a, cell};
      q.anchor[static_cast<std::size_t>(a)] += s;
      cfg.set_open(q);
    }
  }
  return cfg;
}

Configuration random_config(const Window& w, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Configuration cfg(w);
  for (std::size_t f = 0; f < cfg.open_faces.size(); ++f) cfg.open_faces.set(f, coin(rng));
  return cfg;
}

// Breadth-first labeling on explicit coordinates. Returns labels ordered by
// first appearance and the set of labels reaching outside the window.
struct OracleLabels {
  std::vector<int> label;
  std::vector<bool> infinite;
};

OracleLabels oracle_dual_clusters(const Configuration& cfg) {
  const Window& w = cfg.window;
  const auto verts = dual_vertices_in_window(w);
  OracleLabels out;
  out.label.assign(verts.size(), -1);
  for (std::size_t s = 0; s < verts.size(); ++s) {
    if (out.label[s] >= 0) continue;
    const int id = static_cast<int>(out.infinite.size());
    out.infinite.push_back(false);
    std::queue<DualVertex> q;
    q.push(verts[s]);
    out.label[s] = id;
    while (!q.empty()) {
      const DualVertex x = q.front();
      q.pop();
      for (int a = 0; a < w.d(); ++a) {
        for (int dir : {-1, 1}) {
          DualVertex y = x;
          y.coords[static_cast<std::size_t>(a)] += dir;
          const Face f = face_from_dual_bond(make_dual_bond(x, y));
          if (cfg.is_open(f)) continue;  // open face = closed bond
          if (!contains(w, y)) {
            out.infinite[static_cast<std::size_t>(id)] = true;
            continue;
          }
          const auto yi = static_cast<std::size_t>(vertex_index(w, y));
          if (out.label[yi] < 0) {
            out.label[yi] = id;
            q.push(y);
          }
        }
      }
    }
  }
  // Clusters connected through the exterior merge into one infinite class.
  int inf_id = -1;
  std::vector<int> remap(out.infinite.size(), -1);
  std::vector<int> relabeled(out.label.size());
  int next = 0;
  std::vector<bool> infinite;
  for (std::size_t v = 0; v < out.label.size(); ++v) {
    const int c = out.label[v];
    if (remap[static_cast<std::size_t>(c)] < 0) {
      if (out.infinite[static_cast<std::size_t>(c)]) {
        if (inf_id < 0) {
          inf_id = next++;
          infinite.push_back(true);
        }
        remap[static_cast<std::size_t>(c)] = inf_id;
      } else {
        remap[static_cast<std::size_t>(c)] = next++;
        infinite.push_back(false);
      }
    }
    relabeled[v] = remap[static_cast<std::size_t>(c)];
  }
  return {relabeled, infinite};
}

}  // namespace

TEST_CASE("dual clusters at p = 0 and p = 1") {
  const Window w(3, 3);
  Configuration none(w);
  const auto all_one = dual_clusters(none);
  CHECK(all_one.cluster_count() == 1);
  CHECK(all_one.touches_infinity[0] == 1);
  CHECK(all_one.sizes[0] == w.num_dual_vertices());

  Configuration full(w);
  full.open_faces = full.open_faces.complement();
  const auto singles = dual_clusters(full);
  CHECK(singles.cluster_count() == w.num_dual_vertices());
  for (auto t : singles.touches_infinity) CHECK(t == 0);
}

TEST_CASE("a framed unit cell is a finite singleton cluster") {
  const Window w(2, 2);
  const auto cfg = framed_cell(w, {0, 0});
  CHECK(cfg.open_count() == 4);
  const auto lab = dual_clusters(cfg);
  CHECK(lab.cluster_count() == 2);
  const auto v0 = static_cast<std::size_t>(vertex_index(w, DualVertex{{0, 0}}));
  const auto c0 = static_cast<std::size_t>(lab.label[v0]);
  CHECK(lab.sizes[c0] == 1);
  CHECK(lab.touches_infinity[c0] == 0);
  CHECK(lab.touches_infinity[1 - c0] == 1);
  CHECK(lab.sizes[1 - c0] == 15);
}

TEST_CASE("face clusters") {
  const Window w(2, 2);
  Configuration full(w);
  full.open_faces = full.open_faces.complement();
  const auto one = face_clusters(full);
  CHECK(one.cluster_count() == 1);
  CHECK(one.sizes[0] == w.num_faces());
  CHECK(one.touches_infinity[0] == 1);

  Configuration single(w);
  single.set_open(Face{0, {0, 0}});
  const auto s = face_clusters(single);
  CHECK(s.cluster_count() == 1);
  CHECK(s.sizes[0] == 1);
  CHECK(s.touches_infinity[0] == 0);

  const auto square = face_clusters(framed_cell(w, {0, 0}));
  CHECK(square.cluster_count() == 1);
  CHECK(square.sizes[0] == 4);
  int unlabeled = 0;
  for (int l : square.label) unlabeled += l < 0;
  CHECK(unlabeled == w.num_faces() - 4);

  Configuration edge(w);
  edge.set_open(Face{0, {2, 0}});  // on x = n
  CHECK(face_clusters(edge).touches_infinity[0] == 1);
}

TEST_CASE("boundary edge sets") {
  const Window w2(2, 3);
  const auto lab2 = dual_clusters(framed_cell(w2, {0, 0}));
  const auto id2 = lab2.label[static_cast<std::size_t>(vertex_index(w2, DualVertex{{0, 0}}))];
  CHECK(boundary_edges(lab2, id2).size() == 4);

  const Window w3(3, 2);
  const auto lab3 = dual_clusters(framed_cell(w3, {0, 0, 0}));
  const auto id3 = lab3.label[static_cast<std::size_t>(vertex_index(w3, DualVertex{{0, 0, 0}}))];
  CHECK(boundary_edges(lab3, id3).size() == 6);

  // Two cells framed together, shared face closed: one cluster {0*, (1,0)*}.
  Configuration pair = framed_cell(w2, {0, 0});
  const auto other = framed_cell(w2, {1, 0});
  for (std::size_t f = 0; f < pair.open_faces.size(); ++f) {
    if (other.open_faces.test(f)) pair.open_faces.set(f);
  }
  pair.set_open(Face{0, {1, 0}}, false);
  const auto lab = dual_clusters(pair);
  const auto id = lab.label[static_cast<std::size_t>(vertex_index(w2, DualVertex{{0, 0}}))];
  CHECK(lab.sizes[static_cast<std::size_t>(id)] == 2);
  CHECK(boundary_edges(lab, id).size() == 6);

  CHECK_THROWS_AS(boundary_edges(lab, lab.cluster_count()), std::out_of_range);
  CHECK_THROWS_AS(boundary_edges(lab, -1), std::out_of_range);
  CHECK_THROWS_AS(boundary_edges(face_clusters(pair), 0), std::invalid_argument);

  // The infinity-touching cluster includes bonds leaving the window.
  const auto lab0 = dual_clusters(Configuration(Window(2, 1)));
  CHECK(boundary_edges(lab0, 0).size() == 8);
}

TEST_CASE("union-find labels match a breadth-first oracle") {
  std::mt19937_64 rng(17);
  for (int d = 2; d <= 3; ++d) {
    for (int n = 1; n <= 4; ++n) {
      const Window w(d, n);
      for (double p : {0.2, 0.4, 0.6, 0.8}) {
        for (int rep = 0; rep < 10; ++rep) {
          const auto cfg = random_config(w, p, rng);
          const auto lab = dual_clusters(cfg);
          const auto oracle = oracle_dual_clusters(cfg);
          REQUIRE(lab.label == oracle.label);
          for (std::size_t c = 0; c < oracle.infinite.size(); ++c) {
            REQUIRE((lab.touches_infinity[c] != 0) == oracle.infinite[c]);
          }
          std::int64_t total = 0;
          for (auto s : lab.sizes) total += s;
          REQUIRE(total == w.num_dual_vertices());
          for (std::int32_t c = 0; c < lab.cluster_count(); ++c) {
            REQUIRE(lab.representative[static_cast<std::size_t>(c)] == lab.members(c).front());
          }
        }
      }
    }
  }
}

TEST_CASE("boundary bonds of finite clusters cross open faces") {
  std::mt19937_64 rng(5);
  for (int d = 2; d <= 3; ++d) {
    for (int n = 1; n <= 4; ++n) {
      const Window w(d, n);
      for (int rep = 0; rep < 20; ++rep) {
        const auto cfg = random_config(w, 0.3 + 0.1 * (rep % 6), rng);
        const auto lab = dual_clusters(cfg);
        for (std::int32_t c = 0; c < lab.cluster_count(); ++c) {
          if (lab.touches_infinity[static_cast<std::size_t>(c)]) continue;
          for (const DualBond& e : boundary_edges(lab, c)) REQUIRE(cfg.is_open(face_from_dual_bond(e)));
        }
        // Each in-window face is either open or its dual bond is.
        const BitField bonds = cfg.open_faces.complement();
        REQUIRE(bonds.count() + cfg.open_count() == static_cast<std::size_t>(w.num_faces()));
      }
    }
  }
}

TEST_CASE("internal spanning of dual bonds") {
  const Window w(2, 3);
  CHECK(internal_dual_spans(w, BitField(static_cast<std::size_t>(w.num_faces()), true)));
  CHECK_FALSE(internal_dual_spans(w, BitField(static_cast<std::size_t>(w.num_faces()), false)));
  // One straight row of bonds across the window.
  BitField row(static_cast<std::size_t>(w.num_faces()));
  for (int x = -2; x <= 2; ++x) row.set(static_cast<std::size_t>(face_index(w, Face{0, {x, 0}})));
  CHECK(internal_dual_spans(w, row));
  row.set(static_cast<std::size_t>(face_index(w, Face{0, {0, 0}})), false);
  CHECK_FALSE(internal_dual_spans(w, row));
}
