#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <vector>

#include "doctest.h"
#include "holeperc/estimators.hpp"
#include "holeperc/holes.hpp"

using namespace holeperc;

namespace {

DualVertex zero(int d) { return DualVertex{std::vector<int>(static_cast<std::size_t>(d), 0)}; }

// 1/|C(x*)| averaged over B~(n) by breadth-first search from every vertex,
// with bonds drawn from an independent generator.
double brute_kappa(const Window& w, double q, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(q);
  std::map<std::pair<std::vector<int>, int>, bool> bond_open;
  for (const Face& f : faces_in_window(w)) {
    const DualBond e = dual_bond_from_face(f);
    bond_open[{e.base.coords, e.axis}] = coin(rng);
  }
  double total = 0.0;
  for (const DualVertex& start : dual_vertices_in_window(w)) {
    std::map<std::vector<int>, bool> seen{{start.coords, true}};
    std::queue<DualVertex> frontier;
    frontier.push(start);
    bool infinite = false;
    while (!frontier.empty() && !infinite) {
      const DualVertex x = frontier.front();
      frontier.pop();
      for (int a = 0; a < w.d(); ++a) {
        for (int dir : {-1, 1}) {
          DualVertex y = x;
          y.coords[static_cast<std::size_t>(a)] += dir;
          const DualBond e = make_dual_bond(x, y);
          if (!bond_open.at({e.base.coords, e.axis})) continue;
          if (!contains(w, y)) {
            infinite = true;
            continue;
          }
          if (seen.emplace(y.coords, true).second) frontier.push(y);
        }
      }
    }
    if (!infinite) total += 1.0 / static_cast<double>(seen.size());
  }
  return total / static_cast<double>(w.num_dual_vertices());
}

}  // namespace

TEST_CASE("quantity names round trip") {
  for (Quantity q : {Quantity::theta_hole, Quantity::kappa, Quantity::pc_estimate, Quantity::span_bond}) {
    CHECK(parse_quantity(quantity_name(q)) == q);
  }
  CHECK_THROWS_AS(parse_quantity("theta"), std::invalid_argument);
}

TEST_CASE("mean and standard error") {
  const MeanStat s = mean_stat({1.0, 2.0, 3.0, 4.0});
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  CHECK(s.count == 4);
  CHECK(std::isnan(mean_stat({}).mean));
}

TEST_CASE("exact values at p = 0 and p = 1") {
  SimulationParams p0{0.0, 2, 6, 20, 3};
  SimulationParams p1{1.0, 2, 6, 20, 3};
  CHECK(estimate_theta_hole(p0).value == 0.0);
  CHECK(estimate_theta_hole(p1).value == 1.0);
  CHECK(estimate_theta_bond(p1).value == 1.0);
  CHECK(estimate_theta_bond(p0).value == 0.0);
  CHECK(estimate_theta_face(p1).value == 1.0);
  CHECK(estimate_theta_face(p0).value == 0.0);
  CHECK(estimate_kappa(0.0, p0).value == 1.0);
  CHECK(estimate_kappa(0.0, p0).std_error == 0.0);
  CHECK(estimate_vertex_density(p1).value == 1.0);
  CHECK(estimate_vertex_density(p0).value == 0.0);

  const auto avg = estimate_average_hole_size(p1);
  CHECK(avg.value == 1.0);
  CHECK(*avg.extra("rhs") == 1.0);
  const auto avg0 = estimate_average_hole_size(p0);
  CHECK(avg0.skipped == 20);
  CHECK(avg0.replicates_used == 0);

  CHECK(two_point_hole(p1, zero(2), DualVertex{{3, -4}}).value == 1.0);
  CHECK(two_point_hole(p0, zero(2), zero(2)).value == 0.0);

  const auto u1 = estimate_uniqueness(p1);
  CHECK(u1.value == 0.0);
  CHECK(*u1.extra("mean_spanning_count") == 1.0);
  const auto u0 = estimate_uniqueness(p0);
  CHECK(*u0.extra("mean_spanning_count") == 0.0);

  CHECK(trifurcation_density(p1).value == 0.0);
  CHECK(trifurcation_density(p0).value == 0.0);
  SimulationParams d3{1.0, 3, 4, 3, 3};
  CHECK(trifurcation_density(d3).value == 0.0);
}

TEST_CASE("per-configuration hole statistics") {
  Configuration cfg(Window(2, 2));
  CHECK(vertex_density(cfg) == 0.0);
  CHECK_THROWS_AS(average_hole_size(cfg), std::domain_error);
  cfg.open_faces = cfg.open_faces.complement();
  CHECK(vertex_density(cfg) == 1.0);
  CHECK(average_hole_size(cfg) == 1.0);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(estimate_theta_hole(SimulationParams{0.5, 2, 1, 10, 1}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_uniqueness(SimulationParams{0.5, 2, 3, 10, 1}), std::invalid_argument);
  CHECK_THROWS_AS(trifurcation_density(SimulationParams{0.5, 2, 3, 10, 1}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_kappa(1.5, SimulationParams{0.5, 2, 4, 10, 1}), std::invalid_argument);
  CHECK_THROWS_AS(two_point_hole(SimulationParams{0.5, 2, 4, 10, 1}, zero(2), DualVertex{{4, 0}}),
                  std::out_of_range);
}

TEST_CASE("two-point function is reflexive") {
  SimulationParams params{0.6, 2, 6, 200, 9};
  const auto same = two_point_hole(params, zero(2), zero(2));
  // x* <-> x* exactly when x* lies in a hole.
  double in_hole = 0.0;
  const auto v0 = static_cast<std::size_t>(vertex_index(params.window(), zero(2)));
  for (std::int64_t r = 0; r < params.replicates; ++r) {
    in_hole += build_hole_graph(sample_configuration(params, r)).hole_of_vertex[v0] >= 0 ? 1.0 : 0.0;
  }
  CHECK(same.value == doctest::Approx(in_hole / static_cast<double>(params.replicates)));
}

TEST_CASE("results do not depend on the worker count") {
  SimulationParams params{0.55, 2, 8, 40, 21};
  CHECK(estimate_theta_hole(params, 1).value == estimate_theta_hole(params, 3).value);
  const auto a = estimate_average_hole_size(params, 1);
  const auto b = estimate_average_hole_size(params, 4);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  CHECK(*a.extra("rhs") == *b.extra("rhs"));
  CHECK(estimate_kappa(0.4, params, 1).value == estimate_kappa(0.4, params, 2).value);
}

TEST_CASE("kappa agrees with an independent breadth-first estimate") {
  const Window w(2, 4);
  std::mt19937_64 rng(77);
  std::vector<double> brute;
  for (int r = 0; r < 2000; ++r) brute.push_back(brute_kappa(w, 0.3, rng));
  const MeanStat oracle = mean_stat(brute);
  const auto est = estimate_kappa(0.3, SimulationParams{0.5, 2, 4, 2000, 5});
  const double sigma = std::hypot(oracle.std_error, est.std_error);
  CHECK(std::abs(est.value - oracle.mean) < 3.0 * sigma);
}

TEST_CASE("vertex density matches kappa of the dual") {
  SimulationParams params{0.7, 2, 16, 300, 8};
  const auto density = estimate_vertex_density(params);
  const auto kappa = estimate_kappa(0.3, params);
  CHECK(std::abs(density.value - kappa.value) < 3.0 * std::hypot(density.std_error, kappa.std_error));
}

TEST_CASE("crossing detection") {
  const std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  const std::vector<double> small{0.0, 0.1, 0.3, 0.6, 0.8, 0.9};
  const std::vector<double> large{0.0, 0.02, 0.2, 0.7, 0.95, 1.0};
  const auto c = find_crossing(grid, small, large);
  REQUIRE(c.has_value());
  // f = -0.1 at 0.3 and +0.1 at 0.4.
  CHECK(c->p == doctest::Approx(0.35));
  CHECK_FALSE(find_crossing(grid, large, large).has_value());
  // A weak tail wiggle loses to the main crossing.
  const std::vector<double> wiggle_small{0.01, 0.0, 0.3, 0.6, 0.8, 0.9};
  const std::vector<double> wiggle_large{0.0, 0.01, 0.2, 0.7, 0.95, 1.0};
  CHECK(find_crossing(grid, wiggle_small, wiggle_large)->p == doctest::Approx(0.35));
  CHECK_THROWS_AS(find_crossing(grid, small, {0.0}), std::invalid_argument);
}

TEST_CASE("grids") {
  const auto g = make_grid(0.0, 1.0, 0.01);
  CHECK(g.size() == 101);
  CHECK(g[37] == 0.37);
  CHECK(g.back() == 1.0);
  CHECK_THROWS_AS(make_grid(0.5, 0.4, 0.1), std::invalid_argument);
}

TEST_CASE("span thresholds reproduce direct evaluation") {
  for (int d = 2; d <= 3; ++d) {
    for (int n = 1; n <= 4; ++n) {
      const Window w(d, n);
      for (std::uint64_t r = 0; r < 15; ++r) {
        const UniformField field = coupled_field(w, 600 + static_cast<std::uint64_t>(d), r);
        const SpanThresholds t = span_thresholds(field);
        for (double p = 0.0; p <= 1.0; p += 0.05) {
          const Configuration cfg = threshold(field, p);
          REQUIRE(hole_spans(cfg) == (p > t.hole));
          REQUIRE(face_spans(cfg) == (p > t.face));
          REQUIRE(bond_spans_at(field, p) == (1.0 - p <= t.bond));
        }
        // Exactly at the thresholds.
        REQUIRE_FALSE(hole_spans(threshold(field, t.hole)));
        REQUIRE_FALSE(face_spans(threshold(field, t.face)));
        REQUIRE(bond_spans_at(field, 1.0 - t.bond));
      }
    }
  }
}

TEST_CASE("sweep validates input and checks itself") {
  SweepOptions o;
  o.d = 2;
  o.n_list = {2, 4};
  o.p_grid = make_grid(0.0, 1.0, 0.1);
  o.replicates = 20;
  o.check_stride = 5;
  const SweepResult r = sweep_pc(o);
  CHECK(r.checked_replicates == 8);
  for (const auto* c : {&r.hole, &r.face, &r.bond}) {
    REQUIRE(c->prob.size() == 2);
    for (const auto& curve : c->prob) {
      CHECK(curve.front() == 0.0);
      CHECK(curve.back() == 1.0);
      for (std::size_t k = 1; k < curve.size(); ++k) CHECK(curve[k] >= curve[k - 1]);
    }
  }
  o.check_stride = 0;
  o.jobs = 3;
  const SweepResult again = sweep_pc(o);
  CHECK(again.hole.prob == r.hole.prob);
  CHECK(again.bond.prob == r.bond.prob);

  SweepOptions bad = o;
  bad.p_grid = {0.2, 0.2};
  CHECK_THROWS_AS(sweep_pc(bad), std::invalid_argument);
  bad = o;
  bad.n_list = {4, 2};
  CHECK_THROWS_AS(sweep_pc(bad), std::invalid_argument);
  bad = o;
  bad.p_grid = {0.5, 1.5};
  CHECK_THROWS_AS(sweep_pc(bad), std::invalid_argument);
}
