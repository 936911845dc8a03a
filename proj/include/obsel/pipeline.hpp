#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "obsel/cost_model.hpp"
#include "obsel/digraph.hpp"
#include "obsel/lsap.hpp"
#include "obsel/oracle.hpp"
#include "obsel/structural.hpp"

namespace obsel {

inline constexpr const char* kSolverVersion = "1.0.0";

// Process exit codes of the CLI; each pipeline outcome maps to exactly one.
enum class ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kNotCyclic = 3,
  kInfeasible = 4,
  kInsufficientSensors = 5,
  kMismatch = 6,
};

enum class Outcome { kCyclic, kFeasible, kNotCyclic, kInfeasible, kInsufficientSensors };

ExitCode exit_code_for(Outcome outcome);

struct StageTimings {
  double structural_ms = 0.0;
  double reduce_ms = 0.0;
  double solve_ms = 0.0;
};

/// Everything one `analyze` or `solve` run produces.
struct SolutionReport {
  Instance instance;
  std::uint64_t digest = 0;
  MatchingResult rank;
  SccDecomposition scc;
  std::vector<std::size_t> parent_ids;
  std::optional<ReducedCostMatrix> reduced;
  std::optional<AssignmentSolution> assignment;
  std::optional<FeasibilityVerdict> feasibility;
  std::optional<ObservabilityVerdict> observability;
  Outcome outcome = Outcome::kCyclic;
  std::string message;
  StageTimings timings;
};

/// Structure only: rank, SCC table, parent classification.
SolutionReport analyze_instance(Instance instance);

/// Full pipeline: structure, cost reduction, assignment, verdicts.
SolutionReport solve_instance(Instance instance);

nlohmann::json report_to_json(const SolutionReport& report, bool include_timings = true);
std::string report_to_table(const SolutionReport& report);

struct VerifyResult {
  std::optional<double> solver_cost;  // empty when the solver reports infeasible
  EnumerationReport oracle;
  bool match = false;
  std::string message;
};

/// Compares a solver outcome (cost, or infeasible) against the oracle.
VerifyResult compare_with_oracle(std::optional<double> solver_cost, EnumerationReport oracle,
                                 double tolerance);

/// Runs the solver and the oracle on one instance.
VerifyResult verify_instance(const Instance& instance, const OracleLimits& limits,
                             double tolerance);

/// One line per selection: observable selections by ascending cost, then
/// non-observable selections by descending cost.
std::string enumeration_csv(const EnumerationReport& report);

}  // namespace obsel
