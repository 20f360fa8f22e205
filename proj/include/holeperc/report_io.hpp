#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "holeperc/estimators.hpp"

namespace holeperc {

inline constexpr int kReportFormatVersion = 1;

// Run metadata written ahead of the data: command, seed, parameters.
using RunHeader = std::vector<std::pair<std::string, std::string>>;

// CSV: one "# holeperc format_version=1 key=value ..." line, then the header
// quantity,d,n,p,value,std_error,replicates,seed,proxy_notes and one row per report.
void write_csv(std::ostream& out, const RunHeader& header, const std::vector<EstimateReport>& reports);
std::string report_json(const RunHeader& header, const std::vector<EstimateReport>& reports);

// Sweep curves as span_hole / span_face / span_bond rows plus one
// pc_estimate row per kind.
std::vector<EstimateReport> sweep_rows(const SweepResult& result);
std::string sweep_json(const RunHeader& header, const SweepResult& result);

}  // namespace holeperc
