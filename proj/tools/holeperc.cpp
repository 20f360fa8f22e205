#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "holeperc/config.hpp"
#include "holeperc/errors.hpp"
#include "holeperc/estimators.hpp"
#include "holeperc/holes.hpp"
#include "holeperc/render.hpp"
#include "holeperc/report_io.hpp"
#include "holeperc/verify.hpp"

namespace {

using namespace holeperc;

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    if constexpr (std::is_floating_point_v<T>) {
      os << fmt(values[i]);
    } else {
      os << values[i];
    }
  }
  return os.str();
}

struct Args {
  std::string config_path;

  // shared sampling parameters
  int d = 2;
  int n = 16;
  double p = 0.5;
  std::int64_t reps = 100;
  std::uint64_t seed = 1;
  int jobs = 0;
  std::string out = "-";
  std::string format = "csv";

  // estimate
  std::vector<std::string> quantities;
  std::optional<double> dual_p;
  std::vector<int> x;
  std::vector<int> y;

  // sweep
  std::vector<int> n_list{16, 32, 64};
  double p_min = 0.0;
  double p_max = 1.0;
  double p_step = 0.01;
  std::int64_t check_stride = 0;

  // verify
  std::vector<int> dims{2, 3};
  int max_n = 4;
  int max_n_oracle = 3;
  std::int64_t seeds = 500;
  std::vector<double> ps{0.1, 0.3, 0.5, 0.7, 0.9};
  bool inject_fault = false;

  // render / snapshot
  std::int64_t rep = 0;
  std::string snapshot_in;
  std::string export_kind = "summary";
};

struct Cli {
  CLI::App app{"Hole percolation on random cubical sets"};
  Args args;
  CLI::App* estimate = nullptr;
  CLI::App* sweep = nullptr;
  CLI::App* verify = nullptr;
  CLI::App* render = nullptr;
  CLI::App* snapshot = nullptr;
  CLI::App* snapshot_save = nullptr;
  CLI::App* snapshot_load = nullptr;

  Cli() {
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--config", args.config_path, "key=value file supplying defaults; flags override");

    auto add_jobs = [&](CLI::App* sub) {
      sub->add_option("--jobs", args.jobs, "worker threads (default: HOLEPERC_JOBS, then all cores)")
          ->check(CLI::NonNegativeNumber);
    };
    auto add_sampling = [&](CLI::App* sub) {
      sub->add_option("--d", args.d, "dimension")->check(CLI::Range(2, kMaxDim));
      sub->add_option("--n", args.n, "window size")->check(CLI::PositiveNumber);
      sub->add_option("--p", args.p, "face open probability")->check(CLI::Range(0.0, 1.0));
      sub->add_option("--seed", args.seed, "base seed");
    };
    auto add_output = [&](CLI::App* sub, std::vector<std::string> formats) {
      sub->add_option("--out", args.out, "output path, - for stdout");
      sub->add_option("--format", args.format, "output format")->check(CLI::IsMember(formats));
    };

    estimate = app.add_subcommand("estimate", "Monte Carlo estimates of one or more quantities");
    estimate->add_option("--quantity", args.quantities, "quantity names, comma separated")
        ->required()
        ->delimiter(',');
    add_sampling(estimate);
    estimate->add_option("--reps", args.reps, "replicates")->check(CLI::PositiveNumber);
    estimate->add_option("--dual-p", args.dual_p, "dual-bond probability for kappa and theta_bond (default 1-p)")
        ->check(CLI::Range(0.0, 1.0));
    estimate->add_option("--x", args.x, "first dual vertex for two_point_hole (default origin)")->delimiter(',');
    estimate->add_option("--y", args.y, "second dual vertex for two_point_hole")->delimiter(',');
    add_output(estimate, {"csv", "json"});
    add_jobs(estimate);

    sweep = app.add_subcommand("sweep", "Spanning curves and crossing estimates of the critical points");
    sweep->add_option("--d", args.d, "dimension")->check(CLI::Range(2, kMaxDim));
    sweep->add_option("--n-list", args.n_list, "window sizes, increasing")->delimiter(',');
    sweep->add_option("--p-min", args.p_min)->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--p-max", args.p_max)->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--p-step", args.p_step)->check(CLI::PositiveNumber);
    sweep->add_option("--reps", args.reps, "replicates per window")->check(CLI::PositiveNumber);
    sweep->add_option("--seed", args.seed, "base seed");
    sweep->add_option("--check-stride", args.check_stride,
                      "recheck every k-th replicate directly at every grid point (0 disables)")
        ->check(CLI::NonNegativeNumber);
    add_output(sweep, {"csv", "json"});
    add_jobs(sweep);

    verify = app.add_subcommand("verify", "Randomized invariant and oracle checks on small windows");
    verify->add_option("--d", args.dims, "dimensions")->delimiter(',')->check(CLI::Range(2, kMaxDim));
    verify->add_option("--max-n", args.max_n)->check(CLI::PositiveNumber);
    verify->add_option("--max-n-oracle", args.max_n_oracle, "largest n for the Betti and voxel oracles")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--seeds", args.seeds)->check(CLI::PositiveNumber);
    verify->add_option("--seed", args.seed, "first seed");
    verify->add_option("--p", args.ps, "probabilities")->delimiter(',')->check(CLI::Range(0.0, 1.0));
    verify->add_flag("--inject-fault", args.inject_fault, "flip one face after labeling (negative control)");
    add_jobs(verify);

    render = app.add_subcommand("render", "SVG picture of a d=2 configuration and its hole graph");
    add_sampling(render);
    render->add_option("--rep", args.rep, "replicate index")->check(CLI::NonNegativeNumber);
    render->add_option("--snapshot", args.snapshot_in, "render a saved configuration instead of sampling");
    render->add_option("--out", args.out, "output path, - for stdout");

    snapshot = app.add_subcommand("snapshot", "Save or inspect configuration files");
    snapshot->require_subcommand(1);
    snapshot_save = snapshot->add_subcommand("save", "Sample a configuration and write it");
    add_sampling(snapshot_save);
    snapshot_save->add_option("--rep", args.rep, "replicate index")->check(CLI::NonNegativeNumber);
    snapshot_save->add_option("--out", args.out, "snapshot path")->required();
    snapshot_load = snapshot->add_subcommand("load", "Read a configuration and export its hole graph");
    snapshot_load->add_option("--in", args.snapshot_in, "snapshot path")->required();
    snapshot_load->add_option("--export", args.export_kind, "summary, adjacency or json")
        ->check(CLI::IsMember({"summary", "adjacency", "json"}));
    snapshot_load->add_option("--out", args.out, "output path, - for stdout");
  }

  Cli(const Cli&) = delete;
  Cli& operator=(const Cli&) = delete;

  CLI::App* leaf() {
    CLI::App* cur = &app;
    while (true) {
      const auto subs = cur->get_subcommands();
      if (subs.empty()) return cur;
      cur = subs.front();
    }
  }
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// key=value lines; '#' starts a comment. Keys are long option names with or
// without the leading dashes.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    entries.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return entries;
}

// Parses argv; when --config is present, reparses with the file's entries
// appended for every option the command line did not set.
void parse(std::unique_ptr<Cli>& cli, int argc, char** argv) {
  std::vector<std::string> tokens(argv + 1, argv + argc);
  std::vector<std::string> rev(tokens.rbegin(), tokens.rend());
  cli->app.parse(rev);
  if (cli->args.config_path.empty()) return;

  CLI::App* leaf = cli->leaf();
  std::vector<std::string> merged = tokens;
  for (const auto& [key, value] : read_config(cli->args.config_path)) {
    if (key == "config") throw UsageError("config files cannot include other config files");
    const CLI::Option* opt = leaf->get_option_no_throw("--" + key);
    if (opt == nullptr) throw UsageError("config key '" + key + "' is not an option of " + leaf->get_name());
    if (opt->count() > 0) continue;
    if (opt->get_type_size() == 0) {
      if (value == "true" || value == "1") merged.push_back("--" + key);
      continue;
    }
    merged.push_back("--" + key + "=" + value);
  }
  cli = std::make_unique<Cli>();
  std::vector<std::string> rev_merged(merged.rbegin(), merged.rend());
  cli->app.parse(rev_merged);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

DualVertex parse_vertex(const std::vector<int>& coords, int d, const char* flag) {
  if (static_cast<int>(coords.size()) != d) {
    throw UsageError(std::string(flag) + " needs " + std::to_string(d) + " coordinates");
  }
  return DualVertex{coords};
}

int cmd_estimate(const Cli& cli) {
  const Args& a = cli.args;
  std::vector<Quantity> quantities;
  for (const auto& name : a.quantities) {
    try {
      quantities.push_back(parse_quantity(name));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  auto wants = [&](Quantity q) { return std::find(quantities.begin(), quantities.end(), q) != quantities.end(); };
  for (Quantity q : quantities) {
    if (q == Quantity::pc_estimate || q == Quantity::span_hole || q == Quantity::span_face ||
        q == Quantity::span_bond) {
      throw UsageError(std::string(quantity_name(q)) + " comes from the sweep command");
    }
  }
  if (a.dual_p && !wants(Quantity::kappa) && !wants(Quantity::theta_bond)) {
    throw UsageError("--dual-p applies only to kappa and theta_bond");
  }
  const bool two_point = wants(Quantity::two_point_hole);
  if (!two_point && (!a.x.empty() || !a.y.empty())) throw UsageError("--x/--y apply only to two_point_hole");
  if (two_point && a.y.empty()) throw UsageError("two_point_hole needs --y");

  const SimulationParams params{a.p, a.d, a.n, a.reps, a.seed};
  params.validate();
  const double dual_p = a.dual_p.value_or(1.0 - a.p);

  std::vector<EstimateReport> reports;
  for (Quantity q : quantities) {
    switch (q) {
      case Quantity::theta_hole:
        reports.push_back(estimate_theta_hole(params, a.jobs));
        break;
      case Quantity::theta_bond: {
        SimulationParams bond = params;
        bond.p = dual_p;
        reports.push_back(estimate_theta_bond(bond, a.jobs));
        break;
      }
      case Quantity::theta_face:
        reports.push_back(estimate_theta_face(params, a.jobs));
        break;
      case Quantity::kappa:
        reports.push_back(estimate_kappa(dual_p, params, a.jobs));
        break;
      case Quantity::vertex_density:
        reports.push_back(estimate_vertex_density(params, a.jobs));
        break;
      case Quantity::avg_hole_size:
        reports.push_back(estimate_average_hole_size(params, a.jobs));
        break;
      case Quantity::two_point_hole: {
        const DualVertex x = a.x.empty() ? DualVertex{std::vector<int>(static_cast<std::size_t>(a.d), 0)}
                                         : parse_vertex(a.x, a.d, "--x");
        reports.push_back(two_point_hole(params, x, parse_vertex(a.y, a.d, "--y"), a.jobs));
        break;
      }
      case Quantity::spanning_hole_clusters:
        reports.push_back(estimate_uniqueness(params, a.jobs));
        break;
      case Quantity::trifurcation_density:
        reports.push_back(trifurcation_density(params, a.jobs));
        break;
      default:
        break;
    }
  }

  RunHeader header{{"command", "estimate"}, {"quantity", join(a.quantities)}, {"d", std::to_string(a.d)},
                   {"n", std::to_string(a.n)},  {"p", fmt(a.p)},                  {"reps", std::to_string(a.reps)},
                   {"seed", std::to_string(a.seed)}};
  if (a.dual_p) header.emplace_back("dual_p", fmt(*a.dual_p));
  if (two_point) {
    header.emplace_back("x", a.x.empty() ? "origin" : join(a.x));
    header.emplace_back("y", join(a.y));
  }
  Output out(a.out);
  if (a.format == "json") {
    out.stream() << report_json(header, reports);
  } else {
    write_csv(out.stream(), header, reports);
  }
  return kExitOk;
}

int cmd_sweep(const Cli& cli) {
  const Args& a = cli.args;
  SweepOptions o;
  o.d = a.d;
  o.n_list = a.n_list;
  o.p_grid = make_grid(a.p_min, a.p_max, a.p_step);
  o.replicates = a.reps;
  o.seed = a.seed;
  o.jobs = a.jobs;
  o.check_stride = a.check_stride;
  const SweepResult result = sweep_pc(o);

  const RunHeader header{{"command", "sweep"},
                         {"d", std::to_string(a.d)},
                         {"n_list", join(a.n_list)},
                         {"p_min", fmt(a.p_min)},
                         {"p_max", fmt(a.p_max)},
                         {"p_step", fmt(a.p_step)},
                         {"reps", std::to_string(a.reps)},
                         {"seed", std::to_string(a.seed)},
                         {"check_stride", std::to_string(a.check_stride)}};
  Output out(a.out);
  if (a.format == "json") {
    out.stream() << sweep_json(header, result);
  } else {
    write_csv(out.stream(), header, sweep_rows(result));
  }
  for (SweepKind k : {SweepKind::hole, SweepKind::face, SweepKind::bond}) {
    std::cerr << "pc_" << sweep_kind_name(k) << " = " << fmt(result.curve(k).pc_estimate) << '\n';
  }
  return kExitOk;
}

int cmd_verify(const Cli& cli) {
  const Args& a = cli.args;
  VerifyOptions o;
  o.dims = a.dims;
  o.max_n = a.max_n;
  o.max_n_oracle = a.max_n_oracle;
  o.seeds = a.seeds;
  o.base_seed = a.seed;
  o.ps = a.ps;
  o.jobs = a.jobs;
  o.inject_fault = a.inject_fault;
  const VerifyResult result = run_verify(o);
  for (const auto& [name, count] : result.checks_run) std::cout << name << ": " << count << " checks\n";
  if (result.ok()) {
    std::cout << "all checks passed\n";
    return kExitOk;
  }
  std::cout << result.failures.size() << " failures\n";
  const std::size_t shown = std::min<std::size_t>(result.failures.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) std::cout << "FAIL " << describe(result.failures[i]) << '\n';
  const VerifyFailure& f = result.failures.front();
  std::cout << "reproduce: holeperc verify --d " << f.d << " --max-n " << f.n << " --seeds 1 --seed " << f.seed
            << " --p " << join(a.ps) << (a.inject_fault ? " --inject-fault" : "") << '\n';
  return kExitInvariant;
}

Configuration sampled_or_loaded(const Args& a) {
  if (!a.snapshot_in.empty()) return load_snapshot(a.snapshot_in);
  SimulationParams params{a.p, a.d, a.n, a.rep + 1, a.seed};
  params.validate();
  return sample_configuration(params, a.rep);
}

int cmd_render(const Cli& cli) {
  const Args& a = cli.args;
  const Configuration cfg = sampled_or_loaded(a);
  if (cfg.window.d() != 2) throw UsageError("render supports d = 2 only");
  RunHeader header{{"command", "render"}};
  if (!a.snapshot_in.empty()) {
    header.emplace_back("snapshot", a.snapshot_in);
  } else {
    header.insert(header.end(), {{"d", "2"},
                                 {"n", std::to_string(a.n)},
                                 {"p", fmt(a.p)},
                                 {"seed", std::to_string(a.seed)},
                                 {"rep", std::to_string(a.rep)}});
  }
  Output out(a.out);
  out.stream() << render_svg(cfg, header);
  return kExitOk;
}

int cmd_snapshot_save(const Cli& cli) {
  save_snapshot(sampled_or_loaded(cli.args), cli.args.out);
  return kExitOk;
}

int cmd_snapshot_load(const Cli& cli) {
  const Args& a = cli.args;
  const Configuration cfg = load_snapshot(a.snapshot_in);
  const HoleGraph graph = build_hole_graph(cfg);
  Output out(a.out);
  std::ostream& os = out.stream();
  if (a.export_kind == "adjacency") {
    write_hole_adjacency(graph, os);
  } else if (a.export_kind == "json") {
    os << hole_graph_summary_json(graph);
  } else {
    os << "d " << cfg.window.d() << "\nn " << cfg.window.n() << '\n';
    os << "p " << (cfg.p_label ? fmt(*cfg.p_label) : "unknown") << '\n';
    os << "seed " << (cfg.seed ? std::to_string(*cfg.seed) : "unknown") << '\n';
    os << "faces " << cfg.window.num_faces() << "\nopen_faces " << cfg.open_count() << '\n';
    os << "holes " << graph.hole_count() << "\nhole_graph_edges " << graph.edges.size() << '\n';
    os << "hole_clusters " << graph.cluster_count() << '\n';
    os << "spanning_hole_clusters " << count_spanning_hole_clusters(graph) << '\n';
  }
  return kExitOk;
}

int dispatch(const Cli& cli) {
  if (cli.estimate->parsed()) return cmd_estimate(cli);
  if (cli.sweep->parsed()) return cmd_sweep(cli);
  if (cli.verify->parsed()) return cmd_verify(cli);
  if (cli.render->parsed()) return cmd_render(cli);
  if (cli.snapshot_save->parsed()) return cmd_snapshot_save(cli);
  if (cli.snapshot_load->parsed()) return cmd_snapshot_load(cli);
  throw UsageError("no command given");
}

}  // namespace

int main(int argc, char** argv) {
  auto cli = std::make_unique<Cli>();
  try {
    parse(cli, argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli->app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    return dispatch(*cli);
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    // bad parameters, unreadable files
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
