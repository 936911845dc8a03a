// obsel: minimum-cost sensor selection for structurally cyclic systems.
//
// Exit codes:
//   0  success (analyze: structurally cyclic; solve: feasible; verify: match)
//   2  input error (unreadable/invalid instance, instance over the oracle bound)
//   3  system is not structurally cyclic
//   4  no feasible selection (a parent SCC cannot be covered)
//   5  fewer sensors than parent SCCs
//   6  solver and oracle disagree

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "obsel/instance_io.hpp"
#include "obsel/oracle.hpp"
#include "obsel/pipeline.hpp"

namespace {

using obsel::ExitCode;
using nlohmann::json;

constexpr const char* kExitCodes =
    "Exit codes: 0 ok, 2 input error, 3 not structurally cyclic, 4 infeasible, "
    "5 insufficient sensors, 6 solver/oracle mismatch.";

int code(ExitCode c) { return static_cast<int>(c); }

int input_error(const std::string& where, const std::string& what) {
  std::cerr << "obsel: " << where << ": " << what << '\n';
  return code(ExitCode::kInputError);
}

struct GenOptions {
  std::string topology = "example1";
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t parents = 0;
  std::size_t sccs = 0;
  std::uint64_t seed = 0;
  double nonrealizable = 0.5;
  double cost_low = 0.0;
  double cost_high = 10.0;
  bool integer_costs = false;

  obsel::GeneratorConfig config() const {
    auto t = obsel::parse_topology(topology);
    if (!t) throw obsel::ValidationError("unknown topology '" + topology + "'");
    obsel::GeneratorConfig c;
    c.topology = *t;
    c.n = n;
    c.m = m;
    c.parents = parents;
    c.scc_count = sccs;
    c.seed = seed;
    c.nonrealizable_prob = nonrealizable;
    c.cost_low = cost_low;
    c.cost_high = cost_high;
    c.integer_costs = integer_costs;
    return c;
  }
};

void add_gen_options(CLI::App* cmd, GenOptions& g) {
  cmd->add_option("--topology", g.topology, "example1 | parent-chain | random-cyclic")
      ->capture_default_str();
  cmd->add_option("--n", g.n, "number of states (parent-chain, random-cyclic)");
  cmd->add_option("--m", g.m, "number of sensors (default: parent count)");
  cmd->add_option("--parents", g.parents, "parent SCC count (parent-chain)");
  cmd->add_option("--sccs", g.sccs, "SCC count (random-cyclic)");
  cmd->add_option("--seed", g.seed, "random seed")->envname("OBSEL_SEED");
  cmd->add_option("--nonrealizable", g.nonrealizable, "per-entry non-realizable probability")
      ->capture_default_str();
  cmd->add_option("--cost-low", g.cost_low, "lower cost bound")->capture_default_str();
  cmd->add_option("--cost-high", g.cost_high, "upper cost bound")->capture_default_str();
  cmd->add_flag("--integer-costs", g.integer_costs, "draw integer costs in [low, high]");
}

int run_analyze(const std::string& path, bool as_json) {
  obsel::SolutionReport r;
  try {
    r = obsel::analyze_instance(obsel::load_system_file(path));
  } catch (const obsel::Error& e) {
    return input_error(path, e.what());
  }
  if (as_json) {
    std::cout << obsel::report_to_json(r).dump(2) << '\n';
  } else {
    std::cout << obsel::report_to_table(r);
  }
  return code(obsel::exit_code_for(r.outcome));
}

int run_solve(const std::string& path, bool as_json) {
  obsel::SolutionReport r;
  try {
    r = obsel::solve_instance(obsel::load_system_file(path));
  } catch (const obsel::Error& e) {
    return input_error(path, e.what());
  }
  if (as_json) {
    std::cout << obsel::report_to_json(r).dump(2) << '\n';
  } else {
    std::cout << obsel::report_to_table(r);
  }
  if (r.outcome != obsel::Outcome::kFeasible) std::cerr << "obsel: " << r.message << '\n';
  return code(obsel::exit_code_for(r.outcome));
}

struct VerifyOptions {
  std::string instance;
  std::string solution;
  std::string csv;
  double tolerance = obsel::kDefaultTolerance;
  std::size_t oracle_cap = 8;
  std::size_t oracle_max_states = 16;
  std::size_t batch = 0;
  bool as_json = false;
  GenOptions gen;
};

json verify_json(const obsel::VerifyResult& v) {
  json j;
  j["solver_cost"] = v.solver_cost ? json(*v.solver_cost) : json(nullptr);
  j["oracle_min_cost"] =
      v.oracle.min_observable_cost ? json(*v.oracle.min_observable_cost) : json(nullptr);
  j["observable_selections"] = v.oracle.observable.size();
  j["non_observable_selections"] = v.oracle.non_observable.size();
  j["match"] = v.match;
  j["message"] = v.message;
  return j;
}

int run_verify_one(const VerifyOptions& o) {
  obsel::OracleLimits limits;
  limits.max_sensors = o.oracle_cap;
  limits.max_states = o.oracle_max_states;
  obsel::Instance instance;
  try {
    instance = obsel::load_system_file(o.instance);
  } catch (const obsel::Error& e) {
    return input_error(o.instance, e.what());
  }

  obsel::SolutionReport solved = obsel::solve_instance(instance);
  if (solved.outcome == obsel::Outcome::kNotCyclic) {
    std::cerr << "obsel: " << solved.message << '\n';
    return code(ExitCode::kNotCyclic);
  }
  std::optional<double> solver_cost;
  if (solved.outcome == obsel::Outcome::kFeasible) solver_cost = solved.assignment->total_cost;

  if (!o.solution.empty()) {
    // Check a previously written `solve --json` report instead.
    try {
      std::ifstream in(o.solution);
      if (!in) throw obsel::Error("cannot open " + o.solution);
      json saved = json::parse(in);
      if (saved.value("digest", "") != report_to_json(solved, false)["digest"]) {
        throw obsel::Error("report digest does not match the instance");
      }
      solver_cost.reset();
      if (saved.value("feasible", false)) solver_cost = saved.at("total_cost").get<double>();
    } catch (const std::exception& e) {
      return input_error(o.solution, e.what());
    }
  }

  obsel::VerifyResult v;
  try {
    v = obsel::compare_with_oracle(
        solver_cost, obsel::enumerate_all(instance.system, instance.costs, limits), o.tolerance);
  } catch (const obsel::InstanceTooLarge& e) {
    return input_error(o.instance, e.what());
  }

  if (!o.csv.empty()) {
    std::ofstream out(o.csv);
    if (!out) return input_error(o.csv, "cannot write CSV");
    out << obsel::enumeration_csv(v.oracle);
  }
  if (o.as_json) {
    std::cout << verify_json(v).dump(2) << '\n';
  } else {
    std::cout << v.message << " (" << v.oracle.observable.size() << " observable, "
              << v.oracle.non_observable.size() << " non-observable selections)\n";
  }
  return code(v.match ? ExitCode::kOk : ExitCode::kMismatch);
}

int run_verify_batch(const VerifyOptions& o) {
  obsel::OracleLimits limits;
  limits.max_sensors = o.oracle_cap;
  limits.max_states = o.oracle_max_states;
  // Seeds are verified in waves of at most hardware_concurrency() jobs.
  const std::size_t wave = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<obsel::VerifyResult>> jobs;
  std::vector<std::optional<obsel::VerifyResult>> results(o.batch);
  std::vector<std::string> errors(o.batch);
  for (std::size_t start = 0; start < o.batch; start += wave) {
    jobs.clear();
    std::size_t stop = std::min(o.batch, start + wave);
    for (std::size_t k = start; k < stop; ++k) {
      GenOptions g = o.gen;
      g.seed = o.gen.seed + k;
      jobs.push_back(std::async(std::launch::async, [g, limits, tol = o.tolerance] {
        return obsel::verify_instance(obsel::generate(g.config()), limits, tol);
      }));
    }
    for (std::size_t k = start; k < stop; ++k) {
      try {
        results[k] = jobs[k - start].get();
      } catch (const obsel::Error& e) {
        errors[k] = e.what();
      }
    }
  }
  std::size_t matched = 0;
  json all = json::array();
  for (std::size_t k = 0; k < o.batch; ++k) {
    if (!results[k]) return input_error("seed " + std::to_string(o.gen.seed + k), errors[k]);
    const obsel::VerifyResult& v = *results[k];
    matched += v.match ? 1 : 0;
    if (o.as_json) {
      json j = verify_json(v);
      j["seed"] = o.gen.seed + k;
      all.push_back(j);
    } else {
      std::cout << "seed " << o.gen.seed + k << ": " << v.message << '\n';
    }
  }
  if (o.as_json) {
    std::cout << json{{"instances", all}, {"matched", matched}, {"total", o.batch}}.dump(2)
              << '\n';
  } else {
    std::cout << matched << "/" << o.batch << " instances match\n";
  }
  return code(matched == o.batch ? ExitCode::kOk : ExitCode::kMismatch);
}

int run_gen(const GenOptions& g, const std::string& output) {
  obsel::Instance instance;
  try {
    instance = obsel::generate(g.config());
  } catch (const obsel::Error& e) {
    return input_error("gen", e.what());
  }
  std::string text = obsel::dump_system(instance);
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) return input_error(output, "cannot write instance");
    out << text;
  }
  return code(ExitCode::kOk);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-cost sensor selection for structurally cyclic systems"};
  app.footer(kExitCodes);
  app.require_subcommand(1);
  app.set_version_flag("--version", obsel::kSolverVersion);

  bool as_json = false;
  std::string instance_path;

  auto* analyze = app.add_subcommand("analyze", "structural rank, SCCs and parent classification");
  analyze->add_option("instance", instance_path, "instance JSON file")->required();
  analyze->add_flag("--json", as_json, "print the machine-readable report");

  auto* solve = app.add_subcommand("solve", "optimal sensor-to-state assignment");
  solve->add_option("instance", instance_path, "instance JSON file")->required();
  solve->add_flag("--json", as_json, "print the machine-readable report");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "compare the solver against brute-force enumeration");
  verify->add_option("instance", vo.instance, "instance JSON file");
  verify->add_option("--solution", vo.solution, "check this `solve --json` report instead");
  verify->add_option("--csv", vo.csv, "write every enumerated selection as CSV");
  verify->add_option("--tolerance", vo.tolerance, "cost tolerance")->capture_default_str();
  verify->add_option("--oracle-cap", vo.oracle_cap, "largest sensor count to enumerate")
      ->capture_default_str();
  verify->add_option("--oracle-max-states", vo.oracle_max_states,
                     "largest state count to enumerate")
      ->capture_default_str();
  verify->add_option("--batch", vo.batch, "verify this many generated instances concurrently");
  verify->add_flag("--json", vo.as_json, "print the machine-readable comparison");
  add_gen_options(verify, vo.gen);

  GenOptions go;
  std::string output;
  auto* gen = app.add_subcommand("gen", "generate a seeded random instance");
  add_gen_options(gen, go);
  gen->add_option("-o,--output", output, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : code(ExitCode::kInputError);
  }

  if (analyze->parsed()) return run_analyze(instance_path, as_json);
  if (solve->parsed()) return run_solve(instance_path, as_json);
  if (verify->parsed()) {
    if (vo.batch > 0) return run_verify_batch(vo);
    if (vo.instance.empty()) return input_error("verify", "an instance path or --batch is required");
    return run_verify_one(vo);
  }
  if (gen->parsed()) return run_gen(go, output);
  return code(ExitCode::kInputError);
}
