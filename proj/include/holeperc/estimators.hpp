#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "holeperc/config.hpp"
#include "holeperc/errors.hpp"
#include "holeperc/lattice.hpp"

namespace holeperc {

enum class Quantity {
  theta_hole,
  theta_bond,
  theta_face,
  kappa,
  vertex_density,
  avg_hole_size,
  two_point_hole,
  spanning_hole_clusters,
  trifurcation_density,
  pc_estimate,
  // Sweep curves: probability of a spanning cluster at one (n, p).
  span_hole,
  span_face,
  span_bond,
};

std::string_view quantity_name(Quantity q);
// Throws std::invalid_argument for unknown names.
Quantity parse_quantity(std::string_view name);

struct EstimateReport {
  Quantity quantity = Quantity::theta_hole;
  SimulationParams params;
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t replicates_used = 0;
  std::string proxy_notes;
  // Replicates that produced no value (e.g. no holes for avg_hole_size).
  std::int64_t skipped = 0;
  // Secondary numbers reported next to the main value (JSON only).
  std::vector<std::pair<std::string, double>> extras;

  std::optional<double> extra(std::string_view key) const;
};

// Sample mean and standard error (sample sd with n-1, over sqrt(n)) of
// per-replicate values.
struct MeanStat {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t count = 0;
};
MeanStat mean_stat(const std::vector<double>& values);

// jobs <= 0 means resolve_jobs(0). Results do not depend on jobs.

// 0* lies in a hole whose hole cluster touches the outer layer of B~(n).
EstimateReport estimate_theta_hole(const SimulationParams& params, int jobs = 0);

// params.p is the dual-bond open probability. The cluster of 0* reaches past
// B~(n).
EstimateReport estimate_theta_bond(const SimulationParams& params, int jobs = 0);
// Same event averaged over every x* in B~(n) instead of 0* alone; lower
// variance, same expectation up to boundary effects.
EstimateReport estimate_theta_bond_ergodic(const SimulationParams& params, int jobs = 0);

// The face cluster of Q0 = {0} x [0,1]^(d-1) meets the boundary of Lambda^n.
EstimateReport estimate_theta_face(const SimulationParams& params, int jobs = 0);

// Average over B~(n) of 1/|C*(x*)| with infinity-touching clusters
// contributing 0, on directly sampled dual bonds with open probability dual_p
// (params.p is ignored).
EstimateReport estimate_kappa(double dual_p, const SimulationParams& params, int jobs = 0);

// Holes with all members inside B~(n), per dual vertex.
double vertex_density(const Configuration& cfg);
EstimateReport estimate_vertex_density(const SimulationParams& params, int jobs = 0);

// Mean hole size. Throws std::domain_error when cfg has no hole.
double average_hole_size(const Configuration& cfg);
// Also reports the limit formula (1 - theta_bond(1-p)) / kappa(1-p), assembled
// from independent estimators, in extras "rhs" and "rhs_std_error".
EstimateReport estimate_average_hole_size(const SimulationParams& params, int jobs = 0);

// x* and y* lie in holes of the same hole cluster.
EstimateReport two_point_hole(const SimulationParams& params, const DualVertex& x, const DualVertex& y,
                              int jobs = 0);
// Several targets from one set of configurations.
std::vector<EstimateReport> two_point_hole_profile(const SimulationParams& params, const DualVertex& x,
                                                   const std::vector<DualVertex>& ys, int jobs = 0);

// P(at least two hole clusters span B~(n)); also reports the mean count.
EstimateReport estimate_uniqueness(const SimulationParams& params, int jobs = 0);

// Mean of #trifurcations / |B~(n)|. Throws InvariantViolation if a
// configuration has more trifurcations than |dB~(n)|.
EstimateReport trifurcation_density(const SimulationParams& params, int jobs = 0);

// ---------------------------------------------------------------------------
// Critical-point sweep.

enum class SweepKind { hole, face, bond };
std::string_view sweep_kind_name(SweepKind k);

// Exact per-configuration thresholds on a coupled field: the spanning event
// holds at p exactly when p > threshold (hole, face). For the dual-bond sweep
// bonds are open when X_Q >= 1 - q, and the event holds at dual probability q
// exactly when 1 - q <= threshold.
struct SpanThresholds {
  double hole = 1.0;
  double face = 1.0;
  double bond = 0.0;
};
SpanThresholds span_thresholds(const UniformField& field);

// Direct evaluation at one p (face and hole) or dual probability q (bond).
bool hole_spans(const Configuration& cfg);
bool face_spans(const Configuration& cfg);
bool bond_spans_at(const UniformField& field, double q);

struct Crossing {
  int n_small = 0;
  int n_large = 0;
  double p = 0.0;
  double score = 0.0;
};

struct SweepCurve {
  SweepKind kind = SweepKind::hole;
  // prob[i][k]: spanning probability at n_list[i], p_grid[k].
  std::vector<std::vector<double>> prob;
  std::vector<Crossing> crossings;  // one per successive pair with a crossing
  double pc_estimate = 0.0;         // NaN when the largest pair never crosses
};

struct SweepOptions {
  int d = 2;
  std::vector<int> n_list;
  std::vector<double> p_grid;
  std::int64_t replicates = 100;
  std::uint64_t seed = 1;
  int jobs = 0;
  // Every check_stride-th replicate is also evaluated directly at every grid
  // point and compared with the threshold result (0 disables).
  std::int64_t check_stride = 0;
};

struct SweepResult {
  SweepOptions options;
  SweepCurve hole;
  SweepCurve face;
  SweepCurve bond;  // indexed by dual-bond probability q on the same grid
  std::int64_t checked_replicates = 0;

  const SweepCurve& curve(SweepKind k) const;
};

// Throws std::invalid_argument for a bad grid or window list and
// InvariantViolation when a checked replicate disagrees with its thresholds
// or is not monotone along the grid.
SweepResult sweep_pc(const SweepOptions& options);

// Crossing of P_large - P_small from negative to positive, linearly
// interpolated; the strongest sign change wins. nullopt when none.
std::optional<Crossing> find_crossing(const std::vector<double>& p_grid, const std::vector<double>& small,
                                      const std::vector<double>& large);

std::vector<double> make_grid(double lo, double hi, double step);

}  // namespace holeperc
