#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "holeperc/config.hpp"
#include "holeperc/estimators.hpp"
#include "holeperc/holes.hpp"
#include "holeperc/homology.hpp"
#include "holeperc/render.hpp"
#include "holeperc/verify.hpp"

namespace py = pybind11;
using namespace holeperc;

namespace {

py::dict to_dict(const EstimateReport& r) {
  py::dict out;
  out["quantity"] = std::string(quantity_name(r.quantity));
  out["d"] = r.params.d;
  out["n"] = r.params.n;
  out["p"] = r.params.p;
  out["value"] = r.value;
  out["std_error"] = r.std_error;
  out["replicates"] = r.replicates_used;
  out["seed"] = r.params.seed;
  out["proxy_notes"] = r.proxy_notes;
  out["skipped"] = r.skipped;
  py::dict extras;
  for (const auto& [k, v] : r.extras) extras[py::str(k)] = v;
  out["extras"] = extras;
  return out;
}

DualVertex vertex_or_origin(const std::optional<std::vector<int>>& coords, int d) {
  if (!coords) return DualVertex{std::vector<int>(static_cast<std::size_t>(d), 0)};
  if (static_cast<int>(coords->size()) != d) throw std::invalid_argument("vertex needs d coordinates");
  return DualVertex{*coords};
}

py::dict estimate(const std::string& quantity, int d, int n, double p, std::int64_t reps, std::uint64_t seed,
                  std::optional<double> dual_p, std::optional<std::vector<int>> x,
                  std::optional<std::vector<int>> y, int jobs) {
  const SimulationParams params{p, d, n, reps, seed};
  params.validate();
  const double q = dual_p.value_or(1.0 - p);
  py::gil_scoped_release release;
  EstimateReport r;
  switch (parse_quantity(quantity)) {
    case Quantity::theta_hole:
      r = estimate_theta_hole(params, jobs);
      break;
    case Quantity::theta_bond: {
      SimulationParams bond = params;
      bond.p = q;
      r = estimate_theta_bond(bond, jobs);
      break;
    }
    case Quantity::theta_face:
      r = estimate_theta_face(params, jobs);
      break;
    case Quantity::kappa:
      r = estimate_kappa(q, params, jobs);
      break;
    case Quantity::vertex_density:
      r = estimate_vertex_density(params, jobs);
      break;
    case Quantity::avg_hole_size:
      r = estimate_average_hole_size(params, jobs);
      break;
    case Quantity::two_point_hole:
      if (!y) throw std::invalid_argument("two_point_hole needs y");
      r = two_point_hole(params, vertex_or_origin(x, d), vertex_or_origin(y, d), jobs);
      break;
    case Quantity::spanning_hole_clusters:
      r = estimate_uniqueness(params, jobs);
      break;
    case Quantity::trifurcation_density:
      r = trifurcation_density(params, jobs);
      break;
    default:
      throw std::invalid_argument(quantity + " comes from sweep()");
  }
  py::gil_scoped_acquire acquire;
  return to_dict(r);
}

py::dict sweep(int d, const std::vector<int>& n_list, double p_min, double p_max, double p_step, std::int64_t reps,
               std::uint64_t seed, std::int64_t check_stride, int jobs) {
  SweepOptions o;
  o.d = d;
  o.n_list = n_list;
  o.p_grid = make_grid(p_min, p_max, p_step);
  o.replicates = reps;
  o.seed = seed;
  o.check_stride = check_stride;
  o.jobs = jobs;
  SweepResult r;
  {
    py::gil_scoped_release release;
    r = sweep_pc(o);
  }
  py::dict out;
  out["d"] = d;
  out["n_list"] = n_list;
  out["p_grid"] = o.p_grid;
  out["checked_replicates"] = r.checked_replicates;
  for (SweepKind k : {SweepKind::hole, SweepKind::face, SweepKind::bond}) {
    const SweepCurve& c = r.curve(k);
    py::dict cd;
    cd["prob"] = c.prob;
    cd["pc_estimate"] = c.pc_estimate;
    out[py::str(std::string(sweep_kind_name(k)))] = cd;
  }
  return out;
}

py::dict verify(const std::vector<int>& dims, int max_n, int max_n_oracle, std::int64_t seeds,
                std::uint64_t base_seed, const std::vector<double>& ps, bool inject_fault, int jobs) {
  VerifyOptions o;
  o.dims = dims;
  o.max_n = max_n;
  o.max_n_oracle = max_n_oracle;
  o.seeds = seeds;
  o.base_seed = base_seed;
  o.ps = ps;
  o.inject_fault = inject_fault;
  o.jobs = jobs;
  VerifyResult r;
  {
    py::gil_scoped_release release;
    r = run_verify(o);
  }
  py::dict out;
  out["ok"] = r.ok();
  out["checks_run"] = r.checks_run;
  std::vector<std::string> failures;
  for (const auto& f : r.failures) failures.push_back(describe(f));
  out["failures"] = failures;
  return out;
}

}  // namespace

PYBIND11_MODULE(_holeperc, m) {
  m.doc() = "Hole percolation on random cubical sets";

  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  py::class_<Window>(m, "Window")
      .def(py::init<int, int>(), py::arg("d"), py::arg("n"))
      .def_property_readonly("d", &Window::d)
      .def_property_readonly("n", &Window::n)
      .def_property_readonly("num_faces", &Window::num_faces)
      .def_property_readonly("num_dual_vertices", &Window::num_dual_vertices)
      .def_property_readonly("num_boundary_vertices", &Window::num_boundary_vertices)
      .def("__repr__", [](const Window& w) {
        return "Window(d=" + std::to_string(w.d()) + ", n=" + std::to_string(w.n()) + ")";
      });

  py::class_<Configuration>(m, "Configuration")
      .def_property_readonly("window", [](const Configuration& c) { return c.window; })
      .def_property_readonly("open_count", [](const Configuration& c) { return c.open_count(); })
      .def_property_readonly("p", [](const Configuration& c) { return c.p_label; })
      .def_property_readonly("seed", [](const Configuration& c) { return c.seed; })
      .def("open_faces", [](const Configuration& c) {
        std::vector<bool> bits(c.open_faces.size());
        for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = c.open_faces.test(i);
        return bits;
      })
      .def("holes", [](const Configuration& c) {
        std::vector<std::vector<std::int32_t>> out;
        for (const Hole& h : extract_holes(c)) out.push_back(h.members);
        return out;
      }, "member vertex indices of every hole, ordered by smallest member")
      .def("hole_graph_edges", [](const Configuration& c) { return build_hole_graph(c).edges; })
      .def("hole_graph_summary", [](const Configuration& c) { return hole_graph_summary_json(build_hole_graph(c)); })
      .def("spanning_hole_clusters", [](const Configuration& c) { return count_spanning_hole_clusters(c); })
      .def("betti", [](const Configuration& c) { return betti_codim1(c); }, "rank of H_{d-1} over GF(2)")
      .def("render_svg", [](const Configuration& c) { return render_svg(c); })
      .def("save", [](const Configuration& c, const std::string& path) { save_snapshot(c, path); })
      .def("to_bytes", [](const Configuration& c) {
        const auto bytes = encode_snapshot(c);
        return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
      })
      .def(py::self == py::self);

  m.def("sample_configuration",
        [](int d, int n, double p, std::uint64_t seed, std::int64_t rep) {
          const SimulationParams params{p, d, n, rep + 1, seed};
          params.validate();
          return sample_configuration(params, rep);
        },
        py::arg("d"), py::arg("n"), py::arg("p"), py::arg("seed") = 1, py::arg("rep") = 0);
  m.def("load_snapshot", &load_snapshot, py::arg("path"));
  m.def("from_bytes", [](const py::bytes& data) {
    const std::string s = data;
    return decode_snapshot(std::vector<std::uint8_t>(s.begin(), s.end()));
  });

  m.def("estimate", &estimate, py::arg("quantity"), py::arg("d") = 2, py::arg("n") = 16, py::arg("p") = 0.5,
        py::arg("reps") = 100, py::arg("seed") = 1, py::arg("dual_p") = py::none(), py::arg("x") = py::none(),
        py::arg("y") = py::none(), py::arg("jobs") = 0);
  m.def("sweep", &sweep, py::arg("d") = 2, py::arg("n_list") = std::vector<int>{16, 32, 64}, py::arg("p_min") = 0.0,
        py::arg("p_max") = 1.0, py::arg("p_step") = 0.01, py::arg("reps") = 100, py::arg("seed") = 1,
        py::arg("check_stride") = 0, py::arg("jobs") = 0);
  m.def("verify", &verify, py::arg("dims") = std::vector<int>{2, 3}, py::arg("max_n") = 4,
        py::arg("max_n_oracle") = 3, py::arg("seeds") = 500, py::arg("base_seed") = 1,
        py::arg("ps") = std::vector<double>{0.1, 0.3, 0.5, 0.7, 0.9}, py::arg("inject_fault") = false,
        py::arg("jobs") = 0);
}
