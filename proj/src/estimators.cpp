#include "holeperc/estimators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "holeperc/clusters.hpp"
#include "holeperc/holes.hpp"
#include "holeperc/parallel.hpp"
#include "holeperc/union_find.hpp"

namespace holeperc {

namespace {

constexpr std::array<std::pair<Quantity, std::string_view>, 13> kQuantityNames{{
    {Quantity::theta_hole, "theta_hole"},
    {Quantity::theta_bond, "theta_bond"},
    {Quantity::theta_face, "theta_face"},
    {Quantity::kappa, "kappa"},
    {Quantity::vertex_density, "vertex_density"},
    {Quantity::avg_hole_size, "avg_hole_size"},
    {Quantity::two_point_hole, "two_point_hole"},
    {Quantity::spanning_hole_clusters, "spanning_hole_clusters"},
    {Quantity::trifurcation_density, "trifurcation_density"},
    {Quantity::pc_estimate, "pc_estimate"},
    {Quantity::span_hole, "span_hole"},
    {Quantity::span_face, "span_face"},
    {Quantity::span_bond, "span_bond"},
}};

void require(const SimulationParams& params, int min_n) {
  params.validate();
  if (params.n < min_n) {
    throw std::invalid_argument("window radius n must be at least " + std::to_string(min_n));
  }
}

DualVertex origin(int d) { return DualVertex{std::vector<int>(static_cast<std::size_t>(d), 0)}; }

// Per-replicate values computed in parallel into fixed slots.
template <typename Fn>
std::vector<double> per_replicate(const SimulationParams& params, int jobs, Fn fn) {
  std::vector<double> values(static_cast<std::size_t>(params.replicates));
  parallel_for(params.replicates, resolve_jobs(jobs),
               [&](std::int64_t r) { values[static_cast<std::size_t>(r)] = fn(r); });
  return values;
}

EstimateReport make_report(Quantity q, const SimulationParams& params, const std::vector<double>& values,
                           std::string notes) {
  const MeanStat s = mean_stat(values);
  EstimateReport rep;
  rep.quantity = q;
  rep.params = params;
  rep.value = s.mean;
  rep.std_error = s.std_error;
  rep.replicates_used = s.count;
  rep.proxy_notes = std::move(notes);
  return rep;
}

double covariance(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  if (n < 2) return 0.0;
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(n);
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += (a[i] - ma) * (b[i] - mb);
  return acc / static_cast<double>(n - 1);
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string_view quantity_name(Quantity q) {
  for (const auto& [k, name] : kQuantityNames) {
    if (k == q) return name;
  }
  return "unknown";
}

Quantity parse_quantity(std::string_view name) {
  for (const auto& [k, n] : kQuantityNames) {
    if (n == name) return k;
  }
  throw std::invalid_argument("unknown quantity '" + std::string(name) + "'");
}

std::optional<double> EstimateReport::extra(std::string_view key) const {
  for (const auto& [k, v] : extras) {
    if (k == key) return v;
  }
  return std::nullopt;
}

MeanStat mean_stat(const std::vector<double>& values) {
  MeanStat s;
  s.count = static_cast<std::int64_t>(values.size());
  if (values.empty()) {
    s.mean = std::numeric_limits<double>::quiet_NaN();
    s.std_error = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return s;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return s;
}

EstimateReport estimate_theta_hole(const SimulationParams& params, int jobs) {
  require(params, 2);
  const Window w = params.window();
  const auto v0 = static_cast<std::int32_t>(vertex_index(w, origin(params.d)));
  auto values = per_replicate(params, jobs, [&](std::int64_t r) {
    const HoleGraph g = build_hole_graph(sample_configuration(params, r));
    const std::int32_t h = g.hole_of_vertex[static_cast<std::size_t>(v0)];
    if (h < 0) return 0.0;
    return g.cluster_touches_boundary[static_cast<std::size_t>(g.cluster_label[static_cast<std::size_t>(h)])] ? 1.0
                                                                                                                : 0.0;
  });
  return make_report(Quantity::theta_hole, params, values,
                     "window proxy for |G_0*| = inf: hole cluster of 0* reaches the outer layer of B~(n)");
}

EstimateReport estimate_theta_bond(const SimulationParams& params, int jobs) {
  require(params, 2);
  const Window w = params.window();
  const auto v0 = static_cast<std::size_t>(vertex_index(w, origin(params.d)));
  auto values = per_replicate(params, jobs, [&](std::int64_t r) {
    const ClusterLabeling lab = dual_clusters_from_bonds(w, sample_dual_bonds(w, params.p, params.seed, r));
    return lab.touches_infinity[static_cast<std::size_t>(lab.label[v0])] ? 1.0 : 0.0;
  });
  return make_report(Quantity::theta_bond, params, values,
                     "p is the dual-bond probability; window proxy: cluster of 0* leaves B~(n)");
}

EstimateReport estimate_theta_bond_ergodic(const SimulationParams& params, int jobs) {
  require(params, 2);
  const Window w = params.window();
  auto values = per_replicate(params, jobs, [&](std::int64_t r) {
    const ClusterLabeling lab = dual_clusters_from_bonds(w, sample_dual_bonds(w, params.p, params.seed, r));
    std::int64_t inside = 0;
    for (std::int32_t c : lab.label) inside += lab.touches_infinity[static_cast<std::size_t>(c)];
    return static_cast<double>(inside) / static_cast<double>(lab.label.size());
  });
  return make_report(Quantity::theta_bond, params, values,
                     "p is the dual-bond probability; fraction of B~(n) in clusters leaving B~(n)");
}

EstimateReport estimate_theta_face(const SimulationParams& params, int jobs) {
  require(params, 2);
  const Window w = params.window();
  Face q0{0, std::vector<int>(static_cast<std::size_t>(params.d), 0)};
  const auto f0 = static_cast<std::size_t>(face_index(w, q0));
  auto values = per_replicate(params, jobs, [&](std::int64_t r) {
    const Configuration cfg = sample_configuration(params, r);
    if (!cfg.open_faces.test(f0)) return 0.0;
    const ClusterLabeling lab = face_clusters(cfg);
    return lab.touches_infinity[static_cast<std::size_t>(lab.label[f0])] ? 1.0 : 0.0;
  });
  return make_report(Quantity::theta_face, params, values,
                     "window proxy for |C(Q0)| = inf: face cluster of Q0 meets the boundary of Lambda^n");
}

EstimateReport estimate_kappa(double dual_p, const SimulationParams& params, int jobs) {
  require(params, 2);
  if (!(dual_p >= 0.0 && dual_p <= 1.0)) throw std::invalid_argument("dual_p must lie in [0,1]");
  const Window w = params.window();
  auto values = per_replicate(params, jobs, [&](std::int64_t r) {
    const ClusterLabeling lab = dual_clusters_from_bonds(w, sample_dual_bonds(w, dual_p, params.seed, r));
    double acc = 0.0;
    for (std::int32_t c : lab.label) {
      const auto cu = static_cast<std::size_t>(c);
      if (!lab.touches_infinity[cu]) acc += 1.0 / static_cast<double>(lab.sizes[cu]);
    }
    return acc / static_cast<double>(lab.label.size());
  });
  SimulationParams reported = params;
  reported.p = dual_p;
  return make_report(Quantity::kappa, reported, values,
                     "p is the dual-bond probability; clusters leaving B~(n) contribute 0");
}

double vertex_density(const Configuration& cfg) {
  const auto holes = extract_holes(cfg);
  return static_cast<double>(holes.size()) / static_cast<double>(cfg.window.num_dual_vertices());
}

EstimateReport estimate_vertex_density(const SimulationParams& params, int jobs) {
  require(params, 2);
  auto values = per_replicate(params, jobs, [&](std::int64_t r) { return vertex_density(sample_configuration(params, r)); });
  return make_report(Quantity::vertex_density, params, values, "holes inside B~(n) per dual vertex");
}

double average_hole_size(const Configuration& cfg) {
  const auto holes = extract_holes(cfg);
  if (holes.empty()) throw std::domain_error("configuration has no hole");
  std::int64_t total = 0;
  for (const Hole& h : holes) total += h.size();
  return static_cast<double>(total) / static_cast<double>(holes.size());
}

EstimateReport estimate_average_hole_size(const SimulationParams& params, int jobs) {
  require(params, 2);
  const Window w = params.window();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto raw = per_replicate(params, jobs, [&](std::int64_t r) {
    const auto holes = extract_holes(sample_configuration(params, r));
    if (holes.empty()) return nan;
    std::int64_t total = 0;
    for (const Hole& h : holes) total += h.size();
    return static_cast<double>(total) / static_cast<double>(holes.size());
  });
  std::vector<double> values;
  for (double v : raw) {
    if (!std::isnan(v)) values.push_back(v);
  }

  // Right-hand side from directly sampled dual bonds at 1 - p: the fraction
  // of vertices outside infinity-touching clusters over the density of
  // finite clusters, with a delta-method error that keeps their covariance.
  std::vector<double> outside(static_cast<std::size_t>(params.replicates));
  std::vector<double> finite(static_cast<std::size_t>(params.replicates));
  const double q = 1.0 - params.p;
  parallel_for(params.replicates, resolve_jobs(jobs), [&](std::int64_t r) {
    const ClusterLabeling lab = dual_clusters_from_bonds(w, sample_dual_bonds(w, q, params.seed, r));
    std::int64_t in_inf = 0;
    for (std::int32_t c : lab.label) in_inf += lab.touches_infinity[static_cast<std::size_t>(c)];
    double kappa = 0.0;
    for (std::int32_t c : lab.label) {
      const auto cu = static_cast<std::size_t>(c);
      if (!lab.touches_infinity[cu]) kappa += 1.0 / static_cast<double>(lab.sizes[cu]);
    }
    const auto v = static_cast<double>(lab.label.size());
    outside[static_cast<std::size_t>(r)] = 1.0 - static_cast<double>(in_inf) / v;
    finite[static_cast<std::size_t>(r)] = kappa / v;
  });
  const MeanStat a = mean_stat(outside);
  const MeanStat b = mean_stat(finite);
  const double rhs = a.mean / b.mean;
  const double reps = static_cast<double>(params.replicates);
  const double var_a = a.std_error * a.std_error;
  const double var_b = b.std_error * b.std_error;
  const double cov_ab = covariance(outside, finite) / reps;
  const double rhs_var = (var_a - 2.0 * rhs * cov_ab + rhs * rhs * var_b) / (b.mean * b.mean);

  EstimateReport rep = make_report(Quantity::avg_hole_size, params, values,
                                   "mean hole size over holes in B~(n); rhs = (1 - theta_bond(1-p)) / kappa(1-p)");
  rep.skipped = params.replicates - static_cast<std::int64_t>(values.size());
  rep.extras = {{"rhs", rhs},
                {"rhs_std_error", std::sqrt(std::max(rhs_var, 0.0))},
                {"theta_bond_dual", 1.0 - a.mean},
                {"theta_bond_dual_std_error", a.std_error},
                {"kappa_dual", b.mean},
                {"kappa_dual_std_error", b.std_error},
                {"skipped_replicates", static_cast<double>(rep.skipped)}};
  if (rep.skipped > 0) rep.proxy_notes += "; " + std::to_string(rep.skipped) + " replicates without holes skipped";
  return rep;
}

std::vector<EstimateReport> two_point_hole_profile(const SimulationParams& params, const DualVertex& x,
                                                   const std::vector<DualVertex>& ys, int jobs) {
  require(params, 1);
  const Window w = params.window();
  const auto vx = static_cast<std::size_t>(vertex_index(w, x));
  std::vector<std::size_t> vys;
  for (const auto& y : ys) vys.push_back(static_cast<std::size_t>(vertex_index(w, y)));
  const std::size_t k = ys.size();
  std::vector<double> slots(static_cast<std::size_t>(params.replicates) * k, 0.0);
  parallel_for(params.replicates, resolve_jobs(jobs), [&](std::int64_t r) {
    const HoleGraph g = build_hole_graph(sample_configuration(params, r));
    const std::int32_t hx = g.hole_of_vertex[vx];
    if (hx < 0) return;
    const std::int32_t cx = g.cluster_label[static_cast<std::size_t>(hx)];
    for (std::size_t i = 0; i < k; ++i) {
      const std::int32_t hy = g.hole_of_vertex[vys[i]];
      if (hy >= 0 && g.cluster_label[static_cast<std::size_t>(hy)] == cx) {
        slots[static_cast<std::size_t>(r) * k + i] = 1.0;
      }
    }
  });
  std::vector<EstimateReport> out;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> values(static_cast<std::size_t>(params.replicates));
    for (std::size_t r = 0; r < values.size(); ++r) values[r] = slots[r * k + i];
    auto rep = make_report(Quantity::two_point_hole, params, values,
                           "x*=" + to_string(x) + " y*=" + to_string(ys[i]) + "; same hole cluster inside B~(n)");
    int l1 = 0;
    for (std::size_t j = 0; j < x.coords.size(); ++j) l1 += std::abs(x.coords[j] - ys[i].coords[j]);
    rep.extras = {{"l1_distance", static_cast<double>(l1)}};
    out.push_back(std::move(rep));
  }
  return out;
}

EstimateReport two_point_hole(const SimulationParams& params, const DualVertex& x, const DualVertex& y, int jobs) {
  return two_point_hole_profile(params, x, {y}, jobs).front();
}

EstimateReport estimate_uniqueness(const SimulationParams& params, int jobs) {
  require(params, 4);
  std::vector<double> counts(static_cast<std::size_t>(params.replicates));
  parallel_for(params.replicates, resolve_jobs(jobs), [&](std::int64_t r) {
    counts[static_cast<std::size_t>(r)] =
        static_cast<double>(count_spanning_hole_clusters(build_hole_graph(sample_configuration(params, r))));
  });
  std::vector<double> multiple(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) multiple[i] = counts[i] >= 2.0 ? 1.0 : 0.0;
  auto rep = make_report(Quantity::spanning_hole_clusters, params, multiple,
                         "P(>= 2 hole clusters touching two opposite outer layers of B~(n))");
  const MeanStat c = mean_stat(counts);
  rep.extras = {{"mean_spanning_count", c.mean}, {"mean_spanning_count_std_error", c.std_error}};
  return rep;
}

EstimateReport trifurcation_density(const SimulationParams& params, int jobs) {
  require(params, 4);
  const Window w = params.window();
  const std::int64_t surface = w.num_boundary_vertices();
  const Window outer(params.d, params.n + 1);
  const std::int64_t outer_surface = outer.num_boundary_vertices();
  const auto volume = static_cast<double>(w.num_dual_vertices());
  std::vector<double> counts(static_cast<std::size_t>(params.replicates));
  parallel_for(params.replicates, resolve_jobs(jobs), [&](std::int64_t r) {
    const HoleGraph g = build_hole_graph(sample_configuration(params, r));
    const auto count = static_cast<std::int64_t>(find_trifurcations(g).size());
    if (count > surface) {
      throw InvariantViolation("trifurcation surface bound violated: " + std::to_string(count) + " > " +
                               std::to_string(surface) + " at d=" + std::to_string(params.d) +
                               " n=" + std::to_string(params.n) + " p=" + fmt_double(params.p) +
                               " seed=" + std::to_string(params.seed) + " replicate=" + std::to_string(r));
    }
    counts[static_cast<std::size_t>(r)] = static_cast<double>(count);
  });
  std::vector<double> density(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) density[i] = counts[i] / volume;
  auto rep = make_report(Quantity::trifurcation_density, params, density,
                         "trifurcations per dual vertex; infinite clusters proxied by the outer layer of B~(n)");
  const double max_count = counts.empty() ? 0.0 : *std::max_element(counts.begin(), counts.end());
  rep.extras = {{"max_count", max_count},
                {"total_count", std::accumulate(counts.begin(), counts.end(), 0.0)},
                {"surface_bound", static_cast<double>(surface)},
                {"outer_surface_bound", static_cast<double>(outer_surface)}};
  return rep;
}

// ---------------------------------------------------------------------------

std::string_view sweep_kind_name(SweepKind k) {
  switch (k) {
    case SweepKind::hole: return "hole";
    case SweepKind::face: return "face";
    case SweepKind::bond: return "bond";
  }
  return "unknown";
}

const SweepCurve& SweepResult::curve(SweepKind k) const {
  switch (k) {
    case SweepKind::hole: return hole;
    case SweepKind::face: return face;
    case SweepKind::bond: return bond;
  }
  throw std::invalid_argument("unknown sweep kind");
}

SpanThresholds span_thresholds(const UniformField& field) {
  const auto geo = geometry_for(field.window);
  const std::int32_t nv = geo->num_vertices();
  const std::int32_t nf = geo->num_faces();
  const auto& x = field.values;
  std::vector<std::int32_t> order(static_cast<std::size_t>(nf));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    const double xa = x[static_cast<std::size_t>(a)];
    const double xb = x[static_cast<std::size_t>(b)];
    return xa < xb || (xa == xb && a < b);
  });
  SpanThresholds out;

  // Hole: with bonds open when X >= p, vertex v is outside I exactly when
  // p > s_v, where s_v is the largest p at which v still reaches infinity.
  // Adding bonds in decreasing X gives s_v as the X of the bond that joins
  // v's cluster to infinity. Hole clusters at p are the components of
  // {v : s_v < p} under all lattice bonds.
  {
    const std::int32_t inf = nv;
    UnionFind uf(nv + 1);
    std::vector<std::int32_t> next(static_cast<std::size_t>(nv) + 1);
    std::iota(next.begin(), next.end(), 0);
    std::vector<double> s(static_cast<std::size_t>(nv), -1.0);
    std::int32_t remaining = nv;
    for (auto it = order.rbegin(); it != order.rend() && remaining > 0; ++it) {
      const std::int32_t f = *it;
      const std::int32_t lo = geo->bond_lower(f);
      const std::int32_t hi = geo->bond_upper(f);
      const std::int32_t a = uf.find(lo == WindowGeometry::kOutside ? inf : lo);
      const std::int32_t b = uf.find(hi == WindowGeometry::kOutside ? inf : hi);
      if (a == b) continue;
      const std::int32_t inf_root = uf.find(inf);
      if (a == inf_root || b == inf_root) {
        const std::int32_t joining = a == inf_root ? b : a;
        std::int32_t m = joining;
        do {
          s[static_cast<std::size_t>(m)] = x[static_cast<std::size_t>(f)];
          --remaining;
          m = next[static_cast<std::size_t>(m)];
        } while (m != joining);
      }
      std::swap(next[static_cast<std::size_t>(a)], next[static_cast<std::size_t>(b)]);
      uf.unite(a, b);
    }
    std::vector<std::int32_t> vorder(static_cast<std::size_t>(nv));
    std::iota(vorder.begin(), vorder.end(), 0);
    std::sort(vorder.begin(), vorder.end(), [&](std::int32_t a, std::int32_t b) {
      const double sa = s[static_cast<std::size_t>(a)];
      const double sb = s[static_cast<std::size_t>(b)];
      return sa < sb || (sa == sb && a < b);
    });
    UnionFind holes(nv);
    std::vector<std::uint8_t> present(static_cast<std::size_t>(nv), 0);
    std::vector<std::uint32_t> mask(static_cast<std::size_t>(nv), 0);
    for (std::int32_t v : vorder) {
      present[static_cast<std::size_t>(v)] = 1;
      std::uint32_t m = geo->vertex_layers(v);
      for (int axis = 0; axis < geo->d(); ++axis) {
        for (int dir : {-1, 1}) {
          const std::int32_t u = geo->vertex_step(v, axis, dir);
          if (u == WindowGeometry::kOutside || !present[static_cast<std::size_t>(u)]) continue;
          const std::int32_t ru = holes.find(u);
          const std::int32_t rv = holes.find(v);
          if (ru == rv) continue;
          m |= mask[static_cast<std::size_t>(ru)] | mask[static_cast<std::size_t>(rv)];
          holes.unite(ru, rv);
        }
      }
      m |= mask[static_cast<std::size_t>(holes.find(v))];
      mask[static_cast<std::size_t>(holes.find(v))] = m;
      if (WindowGeometry::spans(m)) {
        out.hole = s[static_cast<std::size_t>(v)];
        break;
      }
    }
  }

  // Face: faces open in increasing X.
  {
    UnionFind uf(nf);
    std::vector<std::uint8_t> open(static_cast<std::size_t>(nf), 0);
    std::vector<std::uint32_t> mask(static_cast<std::size_t>(nf), 0);
    for (std::int32_t f : order) {
      open[static_cast<std::size_t>(f)] = 1;
      std::uint32_t m = geo->face_sides(f);
      for (std::int32_t g : geo->face_adjacency(f)) {
        if (!open[static_cast<std::size_t>(g)]) continue;
        const std::int32_t rg = uf.find(g);
        const std::int32_t rf = uf.find(f);
        if (rg == rf) continue;
        m |= mask[static_cast<std::size_t>(rg)] | mask[static_cast<std::size_t>(rf)];
        uf.unite(rg, rf);
      }
      m |= mask[static_cast<std::size_t>(uf.find(f))];
      mask[static_cast<std::size_t>(uf.find(f))] = m;
      if (WindowGeometry::spans(m)) {
        out.face = x[static_cast<std::size_t>(f)];
        break;
      }
    }
  }

  // Dual bonds inside B~(n), opened in decreasing X.
  {
    UnionFind uf(nv);
    std::vector<std::uint32_t> mask(static_cast<std::size_t>(nv));
    for (std::int32_t v = 0; v < nv; ++v) mask[static_cast<std::size_t>(v)] = geo->vertex_layers(v);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::int32_t f = *it;
      const std::int32_t lo = geo->bond_lower(f);
      const std::int32_t hi = geo->bond_upper(f);
      if (lo == WindowGeometry::kOutside || hi == WindowGeometry::kOutside) continue;
      const std::int32_t a = uf.find(lo);
      const std::int32_t b = uf.find(hi);
      if (a == b) continue;
      const std::uint32_t m = mask[static_cast<std::size_t>(a)] | mask[static_cast<std::size_t>(b)];
      mask[static_cast<std::size_t>(uf.unite(a, b))] = m;
      if (WindowGeometry::spans(m)) {
        out.bond = x[static_cast<std::size_t>(f)];
        break;
      }
    }
  }
  return out;
}

bool hole_spans(const Configuration& cfg) { return count_spanning_hole_clusters(build_hole_graph(cfg)) > 0; }

bool face_spans(const Configuration& cfg) {
  const auto geo = geometry_for(cfg.window);
  const ClusterLabeling lab = face_clusters(cfg);
  std::vector<std::uint32_t> mask(static_cast<std::size_t>(lab.cluster_count()), 0);
  for (std::int32_t f = 0; f < geo->num_faces(); ++f) {
    const std::int32_t c = lab.label[static_cast<std::size_t>(f)];
    if (c < 0) continue;
    auto& m = mask[static_cast<std::size_t>(c)];
    m |= geo->face_sides(f);
    if (WindowGeometry::spans(m)) return true;
  }
  return false;
}

bool bond_spans_at(const UniformField& field, double q) {
  BitField bonds(field.values.size());
  const double cut = 1.0 - q;
  for (std::size_t f = 0; f < field.values.size(); ++f) {
    if (field.values[f] >= cut) bonds.set(f);
  }
  return internal_dual_spans(field.window, bonds);
}

std::optional<Crossing> find_crossing(const std::vector<double>& p_grid, const std::vector<double>& small,
                                      const std::vector<double>& large) {
  const std::size_t k = p_grid.size();
  if (small.size() != k || large.size() != k) throw std::invalid_argument("curve length does not match the grid");
  std::vector<double> f(k);
  for (std::size_t i = 0; i < k; ++i) f[i] = large[i] - small[i];
  std::optional<Crossing> best;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::size_t last_neg = kNone;
  for (std::size_t i = 0; i < k; ++i) {
    if (f[i] < 0.0) {
      last_neg = i;
    } else if (f[i] > 0.0) {
      if (last_neg != kNone) {
        const std::size_t a = last_neg;
        double score = 0.0;
        for (std::size_t j = a >= 2 ? a - 2 : 0; j <= a; ++j) score += std::abs(f[j]);
        for (std::size_t j = i; j < std::min(k, i + 3); ++j) score += std::abs(f[j]);
        const double p = p_grid[a] + (p_grid[i] - p_grid[a]) * (-f[a]) / (f[i] - f[a]);
        if (!best || score > best->score) best = Crossing{0, 0, p, score};
      }
      last_neg = kNone;
    }
  }
  return best;
}

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(lo <= hi) || lo < 0.0 || hi > 1.0) {
    throw std::invalid_argument("grid needs 0 <= lo <= hi <= 1 and step > 0");
  }
  std::vector<double> grid;
  const auto count = static_cast<std::int64_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::int64_t i = 0; i <= count; ++i) {
    grid.push_back(std::round((lo + static_cast<double>(i) * step) * 1e9) / 1e9);
  }
  return grid;
}

SweepResult sweep_pc(const SweepOptions& options) {
  if (options.n_list.empty()) throw std::invalid_argument("n_list is empty");
  for (std::size_t i = 0; i < options.n_list.size(); ++i) {
    if (options.n_list[i] < 1) throw std::invalid_argument("window radii must be positive");
    if (i > 0 && options.n_list[i] <= options.n_list[i - 1]) throw std::invalid_argument("n_list must increase");
  }
  if (options.p_grid.empty()) throw std::invalid_argument("p_grid is empty");
  for (std::size_t k = 0; k < options.p_grid.size(); ++k) {
    const double p = options.p_grid[k];
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p_grid values must lie in [0,1]");
    if (k > 0 && p <= options.p_grid[k - 1]) throw std::invalid_argument("p_grid must be strictly increasing");
  }
  if (options.replicates < 1) throw std::invalid_argument("replicates must be positive");
  (void)Dim(options.d);

  const int jobs = resolve_jobs(options.jobs);
  const auto& grid = options.p_grid;
  const std::size_t kp = grid.size();
  SweepResult result;
  result.options = options;
  result.hole.kind = SweepKind::hole;
  result.face.kind = SweepKind::face;
  result.bond.kind = SweepKind::bond;
  std::int64_t checked = 0;

  for (int n : options.n_list) {
    const Window w(options.d, n);
    std::vector<SpanThresholds> th(static_cast<std::size_t>(options.replicates));
    parallel_for(options.replicates, jobs, [&](std::int64_t r) {
      const UniformField field = coupled_field(w, options.seed, static_cast<std::uint64_t>(r));
      const SpanThresholds t = span_thresholds(field);
      th[static_cast<std::size_t>(r)] = t;
      if (options.check_stride <= 0 || r % options.check_stride != 0) return;
      std::array<bool, 3> prev{false, false, false};
      for (std::size_t k = 0; k < kp; ++k) {
        const double p = grid[k];
        const Configuration cfg = threshold(field, p);
        const std::array<bool, 3> direct{hole_spans(cfg), face_spans(cfg), bond_spans_at(field, p)};
        const std::array<bool, 3> fast{p > t.hole, p > t.face, 1.0 - p <= t.bond};
        for (std::size_t m = 0; m < 3; ++m) {
          const char* kind = m == 0 ? "hole" : m == 1 ? "face" : "bond";
          std::string where = std::string(kind) + " spanning at d=" + std::to_string(options.d) +
                              " n=" + std::to_string(n) + " p=" + fmt_double(p) +
                              " seed=" + std::to_string(options.seed) + " replicate=" + std::to_string(r);
          if (prev[m] && !direct[m]) throw InvariantViolation("non-monotone " + where);
          if (direct[m] != fast[m]) throw InvariantViolation("threshold mismatch for " + where);
        }
        prev = direct;
      }
    });
    if (options.check_stride > 0) checked += (options.replicates + options.check_stride - 1) / options.check_stride;

    std::vector<double> hole(kp, 0.0), face(kp, 0.0), bond(kp, 0.0);
    for (const SpanThresholds& t : th) {
      for (std::size_t k = 0; k < kp; ++k) {
        hole[k] += grid[k] > t.hole ? 1.0 : 0.0;
        face[k] += grid[k] > t.face ? 1.0 : 0.0;
        bond[k] += 1.0 - grid[k] <= t.bond ? 1.0 : 0.0;
      }
    }
    const auto reps = static_cast<double>(options.replicates);
    for (std::size_t k = 0; k < kp; ++k) {
      hole[k] /= reps;
      face[k] /= reps;
      bond[k] /= reps;
    }
    result.hole.prob.push_back(std::move(hole));
    result.face.prob.push_back(std::move(face));
    result.bond.prob.push_back(std::move(bond));
  }
  result.checked_replicates = checked;

  for (SweepCurve* c : {&result.hole, &result.face, &result.bond}) {
    c->pc_estimate = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 1; i < options.n_list.size(); ++i) {
      auto cross = find_crossing(grid, c->prob[i - 1], c->prob[i]);
      if (!cross) continue;
      cross->n_small = options.n_list[i - 1];
      cross->n_large = options.n_list[i];
      c->crossings.push_back(*cross);
      if (i + 1 == options.n_list.size()) c->pc_estimate = cross->p;
    }
  }
  return result;
}

}  // namespace holeperc
