#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace holeperc {

// Randomized invariant suite over small windows. Each configuration is
// threshold(coupled_field(window, seed, 0), p), so a failure is reproduced
// by (d, n, p, seed) alone.
struct VerifyOptions {
  std::vector<int> dims{2, 3};
  int max_n = 4;
  // Betti and voxel oracles run for n <= min(max_n, max_n_oracle).
  int max_n_oracle = 3;
  std::int64_t seeds = 500;
  std::uint64_t base_seed = 1;
  std::vector<double> ps{0.1, 0.3, 0.5, 0.7, 0.9};
  int jobs = 0;
  // Negative control: flip one face after the hole labeling is computed and
  // before the oracles see the configuration.
  bool inject_fault = false;
};

struct VerifyFailure {
  std::string check;
  int d = 0;
  int n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::string detail;
};

struct VerifyResult {
  std::map<std::string, std::int64_t> checks_run;
  std::vector<VerifyFailure> failures;  // sorted, smallest (d, n, seed, p) first
  bool ok() const noexcept { return failures.empty(); }
};

// Check names: hole_count, partition, adjacency, boundary_faces,
// monotone_coupling, trifurcation.
VerifyResult run_verify(const VerifyOptions& options);

std::string describe(const VerifyFailure& failure);

}  // namespace holeperc
