#include "holeperc/report_io.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace holeperc {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

nlohmann::json number_or_null(double v) {
  if (std::isnan(v) || std::isinf(v)) return nullptr;
  return v;
}

nlohmann::json header_json(const RunHeader& header) {
  nlohmann::json j = nlohmann::json::object();
  j["format_version"] = kReportFormatVersion;
  for (const auto& [k, v] : header) j[k] = v;
  return j;
}

}  // namespace

void write_csv(std::ostream& out, const RunHeader& header, const std::vector<EstimateReport>& reports) {
  out << "# holeperc format_version=" << kReportFormatVersion;
  for (const auto& [k, v] : header) out << ' ' << k << '=' << v;
  out << '\n';
  out << "quantity,d,n,p,value,std_error,replicates,seed,proxy_notes\n";
  for (const auto& r : reports) {
    out << quantity_name(r.quantity) << ',' << r.params.d << ',' << r.params.n << ',' << num(r.params.p) << ','
        << num(r.value) << ',' << num(r.std_error) << ',' << r.replicates_used << ',' << r.params.seed << ','
        << csv_field(r.proxy_notes) << '\n';
  }
}

std::string report_json(const RunHeader& header, const std::vector<EstimateReport>& reports) {
  nlohmann::json j;
  j["header"] = header_json(header);
  auto arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json e;
    e["quantity"] = std::string(quantity_name(r.quantity));
    e["params"] = {{"p", r.params.p},
                   {"d", r.params.d},
                   {"n", r.params.n},
                   {"replicates", r.params.replicates},
                   {"seed", r.params.seed}};
    e["value"] = number_or_null(r.value);
    e["std_error"] = number_or_null(r.std_error);
    e["replicates_used"] = r.replicates_used;
    e["skipped"] = r.skipped;
    e["proxy_notes"] = r.proxy_notes;
    nlohmann::json extras = nlohmann::json::object();
    for (const auto& [k, v] : r.extras) extras[k] = number_or_null(v);
    e["extras"] = std::move(extras);
    arr.push_back(std::move(e));
  }
  j["reports"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::vector<EstimateReport> sweep_rows(const SweepResult& result) {
  const auto& o = result.options;
  std::vector<EstimateReport> rows;
  const auto reps = static_cast<double>(o.replicates);
  for (SweepKind kind : {SweepKind::hole, SweepKind::face, SweepKind::bond}) {
    const SweepCurve& c = result.curve(kind);
    const Quantity q = kind == SweepKind::hole   ? Quantity::span_hole
                       : kind == SweepKind::face ? Quantity::span_face
                                                 : Quantity::span_bond;
    for (std::size_t i = 0; i < o.n_list.size(); ++i) {
      for (std::size_t k = 0; k < o.p_grid.size(); ++k) {
        EstimateReport r;
        r.quantity = q;
        r.params = SimulationParams{o.p_grid[k], o.d, o.n_list[i], o.replicates, o.seed};
        r.value = c.prob[i][k];
        r.std_error = o.replicates > 1 ? std::sqrt(r.value * (1.0 - r.value) / (reps - 1.0)) : 0.0;
        r.replicates_used = o.replicates;
        r.proxy_notes = kind == SweepKind::bond ? "p is the dual-bond probability" : "";
        rows.push_back(std::move(r));
      }
    }
  }
  for (SweepKind kind : {SweepKind::hole, SweepKind::face, SweepKind::bond}) {
    const SweepCurve& c = result.curve(kind);
    EstimateReport r;
    r.quantity = Quantity::pc_estimate;
    r.params = SimulationParams{c.pc_estimate, o.d, o.n_list.back(), o.replicates, o.seed};
    r.value = c.pc_estimate;
    r.std_error = std::nan("");
    r.replicates_used = o.replicates;
    r.proxy_notes = std::string(sweep_kind_name(kind)) + ": crossing of spanning curves for n=" +
                    (o.n_list.size() > 1 ? std::to_string(o.n_list[o.n_list.size() - 2]) + "," : "") +
                    std::to_string(o.n_list.back());
    if (kind == SweepKind::bond) r.proxy_notes += " (dual-bond probability)";
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string sweep_json(const RunHeader& header, const SweepResult& result) {
  const auto& o = result.options;
  nlohmann::json j;
  j["header"] = header_json(header);
  j["d"] = o.d;
  j["n_list"] = o.n_list;
  j["p_grid"] = o.p_grid;
  j["replicates"] = o.replicates;
  j["seed"] = o.seed;
  j["checked_replicates"] = result.checked_replicates;
  for (SweepKind kind : {SweepKind::hole, SweepKind::face, SweepKind::bond}) {
    const SweepCurve& c = result.curve(kind);
    nlohmann::json cj;
    cj["prob"] = c.prob;
    cj["pc_estimate"] = number_or_null(c.pc_estimate);
    auto cross = nlohmann::json::array();
    for (const auto& x : c.crossings) {
      cross.push_back({{"n_small", x.n_small}, {"n_large", x.n_large}, {"p", x.p}, {"score", x.score}});
    }
    cj["crossings"] = std::move(cross);
    if (kind == SweepKind::bond) cj["axis"] = "dual-bond probability";
    j[std::string(sweep_kind_name(kind))] = std::move(cj);
  }
  return j.dump(2) + "\n";
}

}  // namespace holeperc
