#pragma once

#include "sobasip/ohm.hpp"
#include "sobasip/scaling.hpp"

#include <optional>
#include <vector>

namespace sobasip {

/// Algorithm parameters. Defaults follow the reference configuration:
/// eps 1e-6, delta 1e-6, big_delta 0.1, nu 0.01, beta 0.5, gamma 0.1,
/// tau 0.995. The remaining fields are caps the configuration leaves open.
struct SolverParams {
  double eps = 1e-6;         // stationarity target
  double delta = 1e-6;       // homogenization perturbation (global phase)
  double big_delta = 0.1;    // step-regime threshold on ||d_bar||
  double nu = 0.01;          // small-|t| cutoff, in (0, 1/2)
  double beta = 0.5;         // backtracking shrink factor
  double gamma = 0.1;        // cubic sufficient-decrease coefficient
  double tau = 0.995;        // fraction-to-boundary factor
  int max_iter = 500;
  int max_backtracks = 60;
  bool local_phase_enabled = false;
  double local_trigger = 1e-3;  // ||g_bar|| level that switches delta to 0

  void validate() const;
};

enum class StepCase { terminal_small_value, ratio_direction, truncated_direction, none };

const char* to_string(StepCase c);

/// Direction selection plus line-search outcome for one iteration.
struct StepOutcome {
  StepCase step_case = StepCase::none;
  Vector d_bar;
  Vector d;  // D^{-1} d_bar
  double d_bar_norm = 0.0;
  double alpha_max = 0.0;
  double alpha0 = 0.0;
  double alpha = 0.0;
  int backtracks = 0;
};

enum class Termination { sosp_terminal, sosp_check, max_iter, line_search_fail };

const char* to_string(Termination t);

/// One row of the solve trace. Rows are recorded at every visited iterate;
/// the final row has step_case none. Enough state is kept for the lemma
/// checkers to replay the iteration.
struct IterateRecord {
  Vector x;
  double f = 0.0;
  double gbar_norm = 0.0;
  double lambda1_bbar = 0.0;
  double theta = 0.0;
  double t = 0.0;
  Vector s;
  double delta_used = 0.0;
  StepCase step_case = StepCase::none;
  Vector d_bar;
  Vector d;
  double alpha_max = 0.0;
  double alpha0 = 0.0;
  double alpha = 0.0;
  int backtracks = 0;
};

struct SolveReport {
  std::vector<IterateRecord> iterates;
  EvalCounters counters;
  int n_it = 0;
  Termination termination = Termination::max_iter;
  double wall_seconds = 0.0;

  const IterateRecord& final_iterate() const { return iterates.back(); }
  bool sosp_positive() const {
    return termination == Termination::sosp_terminal ||
           termination == Termination::sosp_check;
  }
};

/// Splits the eigenpair into a direction by the |t| regime: |t| above
/// 1/sqrt(1 + big_delta^2) is the terminal (small value) case with
/// d_bar = s/t; |t| >= nu keeps s/t; otherwise the truncated direction
/// sign(-g_bar^T s) * s. The zero-dot tie takes the + sign.
StepOutcome select_direction(const OhmSolution& sol, const ScaledModel& model,
                             const SolverParams& params);

/// Exact step to the nearest bound along d from a strictly interior x;
/// +inf when no finite bound is approached (including d = 0).
double alpha_max(const Vector& x, const Vector& d, const Bounds& bounds);

struct LineSearchResult {
  bool accepted = false;
  double alpha = 0.0;
  Vector x_new;
  double f_new = 0.0;
  int backtracks = 0;
  double best_alpha = 0.0;     // on failure: last stepsize tried
  double best_decrease = 0.0;  // on failure: best f decrease achieved
};

/// Backtracks alpha0 * beta^j until f(x + alpha d) - f(x) <=
/// -(gamma/6) alpha^3 ||d_bar||^3 with the trial strictly interior.
LineSearchResult backtrack(Evaluator& eval, const Vector& x, double f_x,
                           const StepOutcome& outcome, const SolverParams& params);

/// eps-approximate second-order stationarity test: ||g_bar|| <= eps and
/// lambda_1(b_bar) >= -sqrt(eps).
bool sosp_check(const ScaledModel& model, const SolverParams& params);

SolveReport solve(const BoxProblem& problem, const SolverParams& params = {});

}  // namespace sobasip
