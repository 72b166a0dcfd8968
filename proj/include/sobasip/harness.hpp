#pragma once

#include "sobasip/oracles.hpp"
#include "sobasip/problems.hpp"
#include "sobasip/solver.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sobasip {
namespace harness {

enum class OutputFormat { table, csv, json };
enum class TraceVerbosity { summary, per_iter };

/// Exit codes shared by run and verify.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSolveFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::vector<std::string> problems;  // names, or the single entry "all"
  std::optional<Eigen::Index> n;
  SolverParams params;
  OutputFormat format = OutputFormat::table;
  std::string out_path;  // empty = stdout only
  TraceVerbosity trace = TraceVerbosity::summary;
  unsigned long seed = 0;
  std::optional<std::string> problem_file;  // overrides `problems` when set
};

struct RunRow {
  std::string problem;
  Eigen::Index n = 0;
  long n_it = 0;
  long n_f = 0;
  long n_g = 0;
  double gbar_norm = 0.0;
  double lambda1_bbar = 0.0;
  std::string termination;
  double cpu_s = 0.0;
};

struct RunOutput {
  std::vector<RunRow> rows;
  std::vector<SolveReport> reports;  // aligned with rows
  int exit_code = kExitOk;
};

/// Solves each selected problem (concurrently for independent problems)
/// and collects rows in registry order. Exit code 0 iff every run ended
/// sosp-positive.
RunOutput run_problems(const RunConfig& config);

/// Executes run_problems and emits per `config.format` / `out_path`.
/// Per-iteration traces go to `out` when requested.
int run(const RunConfig& config, std::ostream& out);

/// Oracle suite: finite-difference derivative checks for every registry
/// problem, lemma-conclusion replays on fresh traces, and the randomized
/// bordered-eigenvalue property suite. Prints one line per check.
int verify(const RunConfig& config, std::ostream& out);

std::string to_table(const std::vector<RunRow>& rows);
std::string to_csv(const std::vector<RunRow>& rows);
std::string to_json(const std::vector<RunRow>& rows,
                    const std::vector<SolveReport>* reports = nullptr,
                    TraceVerbosity trace = TraceVerbosity::summary);

std::vector<RunRow> parse_csv(const std::string& text);
std::vector<RunRow> parse_json(const std::string& text);

/// One randomized bordered-matrix instance for the eigen property suites.
struct RandomInstance {
  Matrix b_bar;
  Vector g_bar;
  double delta = 0.0;
};

std::vector<RandomInstance> random_instances(int count, unsigned long seed,
                                             Eigen::Index max_n,
                                             const std::vector<double>& deltas);

}  // namespace harness
}  // namespace sobasip
