#include "obsel/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "obsel/instance_io.hpp"

namespace obsel {

using nlohmann::json;

namespace {

class Stopwatch {
 public:
  double lap_ms() {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json one_based(const std::vector<Index>& v) {
  json out = json::array();
  for (Index x : v) out.push_back(x + 1);
  return out;
}

std::string format_cost(double c) {
  std::ostringstream out;
  out.precision(10);
  out << c;
  return out.str();
}

void run_structure(SolutionReport& r) {
  Stopwatch sw;
  r.digest = instance_digest(r.instance);
  r.rank = structural_rank(r.instance.system);
  r.scc = scc_decompose(r.instance.system);
  r.parent_ids = parent_component_ids(r.scc);
  r.timings.structural_ms = sw.lap_ms();
  if (!r.rank.is_perfect) {
    r.outcome = Outcome::kNotCyclic;
    r.message = "not structurally cyclic: structural rank " + std::to_string(r.rank.size) +
                " < n=" + std::to_string(r.instance.system.size());
  } else {
    r.outcome = Outcome::kCyclic;
    r.message = "structurally cyclic";
  }
}

}  // namespace

ExitCode exit_code_for(Outcome outcome) {
  switch (outcome) {
    case Outcome::kCyclic:
    case Outcome::kFeasible:
      return ExitCode::kOk;
    case Outcome::kNotCyclic:
      return ExitCode::kNotCyclic;
    case Outcome::kInfeasible:
      return ExitCode::kInfeasible;
    case Outcome::kInsufficientSensors:
      return ExitCode::kInsufficientSensors;
  }
  return ExitCode::kInputError;
}

SolutionReport analyze_instance(Instance instance) {
  SolutionReport r;
  r.instance = std::move(instance);
  check_dimensions(r.instance.system, r.instance.costs);
  run_structure(r);
  return r;
}

SolutionReport solve_instance(Instance instance) {
  SolutionReport r = analyze_instance(std::move(instance));
  if (r.outcome == Outcome::kNotCyclic) return r;

  const StructuredSystem& sys = r.instance.system;
  Stopwatch sw;
  try {
    r.reduced = reduce_costs(r.instance.costs, parent_sccs(r.scc));
  } catch (const InsufficientSensors& e) {
    r.outcome = Outcome::kInsufficientSensors;
    r.message = e.what();
    return r;
  }
  r.timings.reduce_ms = sw.lap_ms();

  r.assignment = solve_lsap(*r.reduced);
  r.feasibility = feasibility_verdict(*r.assignment, *r.reduced);
  r.timings.solve_ms = sw.lap_ms();

  if (!r.feasibility->feasible) {
    r.outcome = Outcome::kInfeasible;
    const auto& bad = r.feasibility->uncoverable_parents.empty() ? r.feasibility->hall_violator
                                                                 : r.feasibility->uncoverable_parents;
    std::string names;
    for (Index col : bad) {
      if (!names.empty()) names += ", ";
      names += describe_nodes(sys, r.scc.components[r.parent_ids[col]]);
    }
    r.message = "infeasible: " + r.feasibility->reason + ": " + names;
    return r;
  }
  r.observability = check_structural_observability(sys, r.scc, r.rank.size,
                                                    *r.assignment->measurement);
  r.outcome = Outcome::kFeasible;
  r.message = "feasible: total cost " + format_cost(r.assignment->total_cost);
  return r;
}

json report_to_json(const SolutionReport& r, bool include_timings) {
  const StructuredSystem& sys = r.instance.system;
  json j;
  j["version"] = kSolverVersion;
  j["digest"] = hex64(r.digest);
  j["n"] = sys.size();
  j["m"] = r.instance.costs.sensors();
  j["structurally_cyclic"] = r.rank.is_perfect;
  j["structural_rank"] = r.rank.size;
  json pairs = json::array();
  for (const Edge& e : r.rank.matched_pairs) pairs.push_back({e.from + 1, e.to + 1});
  j["matching"] = pairs;

  json sccs = json::array();
  for (std::size_t c = 0; c < r.scc.count(); ++c) {
    json row;
    row["id"] = c + 1;
    row["members"] = one_based(r.scc.components[c]);
    row["parent"] = static_cast<bool>(r.scc.parent_flags[c]);
    sccs.push_back(row);
  }
  j["sccs"] = sccs;
  json parents = json::array();
  for (std::size_t c : r.parent_ids) parents.push_back(c + 1);
  j["parent_sccs"] = parents;

  if (r.reduced) {
    const ReducedCostMatrix& red = *r.reduced;
    json values = json::array(), argmin = json::array(), pseudo = json::array();
    for (Index i = 0; i < red.sensors(); ++i) {
      json vr = json::array(), ar = json::array(), pr = json::array();
      for (Index c = 0; c < red.columns(); ++c) {
        vr.push_back(red.value(i, c));
        auto a = red.argmin_state(i, c);
        ar.push_back(a ? json(*a + 1) : json(nullptr));
        pr.push_back(red.is_pseudo(i, c));
      }
      values.push_back(vr);
      argmin.push_back(ar);
      pseudo.push_back(pr);
    }
    j["reduced_costs"] = {{"parents", red.parents()},
                          {"dummy_columns", red.columns() - red.parents()},
                          {"pseudo_cost", red.pseudo_cost()},
                          {"values", values},
                          {"argmin_state", argmin},
                          {"is_pseudo", pseudo}};
  }

  if (r.assignment) {
    const AssignmentSolution& a = *r.assignment;
    json rows = json::array();
    for (Index i = 0; i < a.permutation.size(); ++i) {
      Index col = a.permutation[i];
      json row;
      row["sensor"] = i + 1;
      bool dummy = r.reduced->is_dummy(col);
      row["parent_scc"] = dummy ? json(nullptr) : json(r.parent_ids[col] + 1);
      auto state = r.reduced->argmin_state(i, col);
      row["state"] = state && !dummy ? json(*state + 1) : json(nullptr);
      row["cost"] = r.reduced->value(i, col);
      row["pseudo"] = r.reduced->is_pseudo(i, col);
      rows.push_back(row);
    }
    j["assignment"] = rows;
    j["total_cost"] = a.total_cost;
    j["feasible"] = a.feasible;
    j["duals"] = {{"u", a.row_duals}, {"v", a.col_duals}};
  }
  if (r.feasibility && !r.feasibility->feasible) {
    json unc = json::array(), hall = json::array();
    for (Index col : r.feasibility->uncoverable_parents) unc.push_back(r.parent_ids[col] + 1);
    for (Index col : r.feasibility->hall_violator) hall.push_back(r.parent_ids[col] + 1);
    j["infeasibility"] = {{"reason", r.feasibility->reason},
                          {"uncoverable_parent_sccs", unc},
                          {"hall_violator_sccs", hall}};
  }
  if (r.observability) {
    j["observability"] = {{"observable", r.observability->observable()},
                          {"reason", r.observability->reason}};
  }
  j["outcome"] = r.message;
  j["exit_code"] = static_cast<int>(exit_code_for(r.outcome));
  if (include_timings) {
    j["timings_ms"] = {{"structural", r.timings.structural_ms},
                       {"reduce", r.timings.reduce_ms},
                       {"solve", r.timings.solve_ms}};
  }
  return j;
}

std::string report_to_table(const SolutionReport& r) {
  const StructuredSystem& sys = r.instance.system;
  std::ostringstream out;
  out << "instance " << hex64(r.digest) << ": n=" << sys.size()
      << ", m=" << r.instance.costs.sensors() << ", edges=" << sys.edge_count() << '\n';
  out << "structural rank: " << r.rank.size << " / " << sys.size()
      << (r.rank.is_perfect ? " (structurally cyclic)" : " (not structurally cyclic)") << '\n';
  out << "\nSCC  kind    members\n";
  for (std::size_t c = 0; c < r.scc.count(); ++c) {
    char line[32];
    std::snprintf(line, sizeof line, "%-4zu %-7s ", c + 1,
                  r.scc.parent_flags[c] ? "parent" : "child");
    out << line << describe_nodes(sys, r.scc.components[c]) << '\n';
  }
  out << r.parent_ids.size() << " parent SCC(s), " << r.scc.count() - r.parent_ids.size()
      << " child SCC(s)\n";

  if (r.assignment) {
    out << "\nsensor  parent SCC  state   cost\n";
    for (Index i = 0; i < r.assignment->permutation.size(); ++i) {
      Index col = r.assignment->permutation[i];
      char line[96];
      if (r.reduced->is_dummy(col)) {
        std::snprintf(line, sizeof line, "%-7zu %-11s %-7s %s", i + 1, "-", "-", "0 (idle)");
      } else {
        auto state = r.reduced->argmin_state(i, col);
        std::string st = state ? sys.label(*state) : std::string("-");
        std::string cost = r.reduced->is_pseudo(i, col)
                               ? format_cost(r.reduced->value(i, col)) + " (pseudo)"
                               : format_cost(r.reduced->value(i, col));
        std::snprintf(line, sizeof line, "%-7zu %-11zu %-7s %s", i + 1, r.parent_ids[col] + 1,
                      st.c_str(), cost.c_str());
      }
      out << line << '\n';
    }
    out << "total cost: " << format_cost(r.assignment->total_cost) << '\n';
  }
  out << '\n' << r.message << '\n';
  return out.str();
}

VerifyResult compare_with_oracle(std::optional<double> solver_cost, EnumerationReport oracle,
                                 double tolerance) {
  VerifyResult v;
  v.solver_cost = solver_cost;
  v.oracle = std::move(oracle);
  const auto& best = v.oracle.min_observable_cost;
  if (!solver_cost && !best) {
    v.match = true;
    v.message = "match: both infeasible";
  } else if (solver_cost && best) {
    v.match = std::abs(*solver_cost - *best) <= tolerance;
    v.message = (v.match ? "match: " : "MISMATCH: ") + std::string("solver ") +
                format_cost(*solver_cost) + ", oracle " + format_cost(*best);
  } else {
    v.match = false;
    v.message = solver_cost ? "MISMATCH: solver feasible (" + format_cost(*solver_cost) +
                                  "), oracle found no observable selection"
                            : "MISMATCH: solver infeasible, oracle minimum " + format_cost(*best);
  }
  return v;
}

VerifyResult verify_instance(const Instance& instance, const OracleLimits& limits,
                             double tolerance) {
  EnumerationReport oracle = enumerate_all(instance.system, instance.costs, limits);
  SolutionReport r = solve_instance(instance);
  std::optional<double> cost;
  if (r.outcome == Outcome::kFeasible) cost = r.assignment->total_cost;
  return compare_with_oracle(cost, std::move(oracle), tolerance);
}

std::string enumeration_csv(const EnumerationReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "index,cost,observable,picks\n";
  std::size_t index = 0;
  auto emit = [&](const Selection& s, bool observable) {
    out << ++index << ',' << s.cost << ',' << (observable ? 1 : 0) << ',';
    for (std::size_t k = 0; k < s.picks.size(); ++k) {
      if (k) out << ' ';
      if (s.picks[k]) {
        out << 'x' << *s.picks[k] + 1;
      } else {
        out << '-';
      }
    }
    out << '\n';
  };
  for (const Selection& s : report.observable) emit(s, true);
  for (auto it = report.non_observable.rbegin(); it != report.non_observable.rend(); ++it) {
    emit(*it, false);
  }
  return out.str();
}

}  // namespace obsel
