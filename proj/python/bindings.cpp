#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "obsel/instance_io.hpp"
#include "obsel/lsap.hpp"
#include "obsel/oracle.hpp"
#include "obsel/pipeline.hpp"
#include "obsel/structural.hpp"

namespace py = pybind11;
using namespace obsel;

namespace {

std::vector<Index> one_based(const std::vector<Index>& v) {
  std::vector<Index> out;
  for (Index x : v) out.push_back(x + 1);
  return out;
}

Instance generate_py(const std::string& topology, std::size_t n, std::size_t m, std::size_t parents,
                     std::size_t sccs, std::uint64_t seed, double cost_low, double cost_high,
                     bool integer_costs, double nonrealizable) {
  auto topo = parse_topology(topology);
  if (!topo) throw ValidationError("unknown topology: " + topology);
  GeneratorConfig cfg;
  cfg.topology = *topo;
  cfg.n = n;
  cfg.m = m;
  cfg.parents = parents;
  cfg.scc_count = sccs;
  cfg.seed = seed;
  cfg.cost_low = cost_low;
  cfg.cost_high = cost_high;
  cfg.integer_costs = integer_costs;
  cfg.nonrealizable_prob = nonrealizable;
  return generate(cfg);
}

py::dict verify_py(const Instance& inst, double tolerance, std::size_t max_sensors,
                   std::size_t max_states) {
  OracleLimits limits;
  limits.max_sensors = max_sensors;
  limits.max_states = max_states;
  VerifyResult v = verify_instance(inst, limits, tolerance);
  py::dict d;
  d["match"] = v.match;
  d["solver_cost"] = v.solver_cost;
  d["oracle_cost"] = v.oracle.min_observable_cost;
  d["observable"] = v.oracle.observable.size();
  d["non_observable"] = v.oracle.non_observable.size();
  d["message"] = v.message;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Minimum-cost sensor selection for structural observability";
  mod.attr("__version__") = kSolverVersion;

  static py::exception<Error> error(mod, "ObselError", PyExc_ValueError);
  py::register_exception<InstanceTooLarge>(mod, "InstanceTooLarge", error.ptr());
  py::register_exception<InsufficientSensors>(mod, "InsufficientSensors", error.ptr());
  py::register_exception<ValidationError>(mod, "ValidationError", error.ptr());

  py::class_<Instance>(mod, "Instance")
      .def_property_readonly("n", [](const Instance& i) { return i.system.size(); })
      .def_property_readonly("m", [](const Instance& i) { return i.costs.sensors(); })
      .def_property_readonly("edges",
                             [](const Instance& i) {
                               std::vector<std::pair<Index, Index>> out;
                               for (const Edge& e : i.system.edges()) out.emplace_back(e.from + 1, e.to + 1);
                               return out;
                             })
      .def_property_readonly("costs",
                             [](const Instance& i) {
                               std::vector<std::vector<std::optional<double>>> rows(i.costs.sensors());
                               for (Index r = 0; r < i.costs.sensors(); ++r)
                                 for (Index c = 0; c < i.costs.states(); ++c) rows[r].push_back(i.costs.at(r, c));
                               return rows;
                             })
      .def_property_readonly("digest", [](const Instance& i) { return instance_digest(i); })
      .def("dumps", [](const Instance& i) { return dump_system(i); })
      .def("__repr__", [](const Instance& i) {
        return "<obsel.Instance n=" + std::to_string(i.system.size()) +
               " m=" + std::to_string(i.costs.sensors()) + ">";
      });

  mod.def("loads", &load_system, py::arg("text"));
  mod.def("load", &load_system_file, py::arg("path"));
  mod.def("generate", &generate_py, py::kw_only(), py::arg("topology") = "example1",
          py::arg("n") = 0, py::arg("m") = 0, py::arg("parents") = 0, py::arg("sccs") = 0,
          py::arg("seed") = 0, py::arg("cost_low") = 0.0, py::arg("cost_high") = 10.0,
          py::arg("integer_costs") = false, py::arg("nonrealizable") = 0.5);

  mod.def("structural_rank", [](const Instance& i) { return structural_rank(i.system).size; });
  mod.def("is_structurally_cyclic", [](const Instance& i) { return is_structurally_cyclic(i.system); });
  mod.def("scc_decompose", [](const Instance& i) {
    auto d = scc_decompose(i.system);
    std::vector<std::pair<std::vector<Index>, bool>> out;
    for (std::size_t c = 0; c < d.count(); ++c) out.emplace_back(one_based(d.components[c]), d.parent_flags[c]);
    return out;
  });

  mod.def("_analyze_json", [](const Instance& i) {
    return report_to_json(analyze_instance(i), false).dump();
  });
  mod.def("_solve_json", [](const Instance& i) {
    return report_to_json(solve_instance(i), false).dump();
  });
  mod.def("solve_lsap", [](std::vector<std::vector<double>> matrix) {
    const std::size_t m = matrix.size();
    std::vector<double> flat;
    for (const auto& row : matrix) {
      if (row.size() != m) throw ValidationError("cost matrix must be square");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    auto s = solve_lsap(m, flat);
    return py::make_tuple(s.permutation, s.total_cost);
  }, py::arg("matrix"));
  mod.def("verify", &verify_py, py::arg("instance"), py::kw_only(), py::arg("tolerance") = 1e-9,
          py::arg("max_sensors") = OracleLimits{}.max_sensors,
          py::arg("max_states") = OracleLimits{}.max_states);
}
