#include "sobasip/solver.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <limits>

namespace sobasip {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double sign_nonneg(double z) { return z >= 0.0 ? 1.0 : -1.0; }
}  // namespace

void SolverParams::validate() const {
  if (!(eps > 0.0)) throw std::invalid_argument("params: eps must be positive");
  if (!(delta >= 0.0)) throw std::invalid_argument("params: delta must be nonnegative");
  if (!(big_delta > 0.0)) throw std::invalid_argument("params: big_delta must be positive");
  if (!(nu > 0.0 && nu < 0.5)) throw std::invalid_argument("params: nu must lie in (0, 1/2)");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("params: beta must lie in (0, 1)");
  if (!(gamma > 0.0)) throw std::invalid_argument("params: gamma must be positive");
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("params: tau must lie in (0, 1)");
  if (max_iter <= 0) throw std::invalid_argument("params: max_iter must be positive");
  if (max_backtracks <= 0) throw std::invalid_argument("params: max_backtracks must be positive");
  if (!(local_trigger > 0.0)) throw std::invalid_argument("params: local_trigger must be positive");
}

const char* to_string(StepCase c) {
  switch (c) {
    case StepCase::terminal_small_value: return "terminal";
    case StepCase::ratio_direction: return "ratio";
    case StepCase::truncated_direction: return "truncated";
    case StepCase::none: return "none";
  }
  return "?";
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::sosp_terminal: return "sosp_terminal";
    case Termination::sosp_check: return "sosp_check";
    case Termination::max_iter: return "max_iter";
    case Termination::line_search_fail: return "line_search_fail";
  }
  return "?";
}

StepOutcome select_direction(const OhmSolution& sol, const ScaledModel& model,
                             const SolverParams& params) {
  StepOutcome out;
  const double abs_t = std::abs(sol.t);
  const double threshold = 1.0 / std::sqrt(1.0 + params.big_delta * params.big_delta);
  if (abs_t > threshold) {
    out.step_case = StepCase::terminal_small_value;
    out.d_bar = sol.s / sol.t;
  } else if (abs_t >= params.nu) {
    if (sol.t == 0.0) throw std::logic_error("select_direction: t == 0 in ratio case");
    out.step_case = StepCase::ratio_direction;
    out.d_bar = sol.s / sol.t;
  } else {
    out.step_case = StepCase::truncated_direction;
    out.d_bar = sign_nonneg(-model.g_bar.dot(sol.s)) * sol.s;
  }
  out.d = model.d_inv.cwiseProduct(out.d_bar);
  out.d_bar_norm = out.d_bar.norm();
  return out;
}

double alpha_max(const Vector& x, const Vector& d, const Bounds& bounds) {
  if (x.size() != d.size() || x.size() != bounds.dim())
    throw std::invalid_argument("alpha_max: dimension mismatch");
  double amax = kInf;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (d[i] == 0.0) continue;
    const double target = d[i] > 0.0 ? bounds.upper[i] : bounds.lower[i];
    if (!std::isfinite(target)) continue;
    amax = std::min(amax, (target - x[i]) / d[i]);
  }
  return amax;
}

LineSearchResult backtrack(Evaluator& eval, const Vector& x, double f_x,
                           const StepOutcome& outcome, const SolverParams& params) {
  if (outcome.step_case == StepCase::terminal_small_value ||
      outcome.step_case == StepCase::none)
    throw std::logic_error("backtrack: only ratio/truncated steps are line searched");
  if (!(outcome.d_bar_norm > 0.0))
    throw std::logic_error("backtrack: zero direction");

  const Bounds& bounds = eval.problem().bounds;
  const double cube = outcome.d_bar_norm * outcome.d_bar_norm * outcome.d_bar_norm;
  LineSearchResult res;
  res.best_decrease = kInf;
  double alpha = outcome.alpha0;
  for (int j = 0; j <= params.max_backtracks; ++j, alpha *= params.beta) {
    const Vector x_trial = x + alpha * outcome.d;
    const double f_trial = eval.value(x_trial);
    const double decrease = f_trial - f_x;
    if (decrease < res.best_decrease) {
      res.best_decrease = decrease;
      res.best_alpha = alpha;
    }
    if (decrease <= -(params.gamma / 6.0) * alpha * alpha * alpha * cube &&
        is_strictly_interior(x_trial, bounds)) {
      res.accepted = true;
      res.alpha = alpha;
      res.x_new = x_trial;
      res.f_new = f_trial;
      res.backtracks = j;
      return res;
    }
    res.backtracks = j;
  }
  res.best_alpha = alpha / params.beta;
  return res;
}

bool sosp_check(const ScaledModel& model, const SolverParams& params) {
  if (model.g_bar.norm() > params.eps) return false;
  return smallest_eigenvalue(model.b_bar) >= -std::sqrt(params.eps);
}

SolveReport solve(const BoxProblem& problem, const SolverParams& params) {
  params.validate();
  problem.validate();
  const auto t_start = std::chrono::steady_clock::now();

  SolveReport report;
  Evaluator eval(problem);
  const Bounds& bounds = problem.bounds;

  Vector x = repair_start(problem.start, bounds);
  double f_x = eval.value(x);
  bool local_active = false;
  StepCase last_case = StepCase::none;
  report.termination = Termination::max_iter;

  for (int k = 0;; ++k) {
    const Vector g = eval.gradient(x);
    const Matrix H = eval.hessian(x);
    ScaledModel model = build_scaled_model(x, g, H, bounds);
    const double gbar_norm = model.g_bar.norm();
    const double lambda1 = smallest_eigenvalue(model.b_bar);

    IterateRecord row;
    row.x = x;
    row.f = f_x;
    row.gbar_norm = gbar_norm;
    row.lambda1_bbar = lambda1;
    report.iterates.push_back(std::move(row));
    report.n_it = k;

    if (gbar_norm <= params.eps && lambda1 >= -std::sqrt(params.eps)) {
      report.termination = last_case == StepCase::terminal_small_value
                               ? Termination::sosp_terminal
                               : Termination::sosp_check;
      break;
    }
    if (k == params.max_iter) {
      report.termination = Termination::max_iter;
      break;
    }

    if (params.local_phase_enabled && gbar_norm <= params.local_trigger)
      local_active = true;  // stays on for the rest of the solve
    const double delta_k = local_active ? 0.0 : params.delta;

    HomogenizedMatrix F = assemble_f(model.b_bar, model.g_bar, delta_k);
    OhmSolution sol;
    try {
      sol = leftmost_eigenpair(F);
    } catch (const EigenSolveError&) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(F.dense());
      Vector y = es.eigenvectors().col(0);
      sol.s = y.head(F.g_bar.size());
      sol.t = y[F.g_bar.size()];
      sol.theta = -es.eigenvalues()[0];
      if (std::abs(sol.t) > kDefaultEigTol && sol.t < 0.0) {
        sol.s = -sol.s;
        sol.t = -sol.t;
      }
    }

    StepOutcome out = select_direction(sol, model, params);
    IterateRecord& cur = report.iterates.back();
    cur.theta = sol.theta;
    cur.t = sol.t;
    cur.s = sol.s;
    cur.delta_used = delta_k;
    cur.step_case = out.step_case;

    if (out.step_case == StepCase::terminal_small_value) {
      // Unit step; scale back by tau * alpha_max only if it would leave
      // the strict interior.
      Vector x_new = x + out.d;
      out.alpha_max = alpha_max(x, out.d, bounds);
      out.alpha0 = 1.0;
      out.alpha = 1.0;
      if (!is_strictly_interior(x_new, bounds)) {
        out.d *= params.tau * out.alpha_max;
        x_new = x + out.d;
      }
      cur.d_bar = out.d_bar;
      cur.d = out.d;
      cur.alpha_max = out.alpha_max;
      cur.alpha0 = out.alpha0;
      cur.alpha = out.alpha;
      cur.backtracks = 0;
      x = x_new;
      f_x = eval.value(x);
      last_case = out.step_case;
      continue;
    }

    out.alpha_max = alpha_max(x, out.d, bounds);
    out.alpha0 = local_active
                     ? std::min(1.0, params.tau * out.alpha_max)
                     : params.tau * std::min(1.0, out.alpha_max);
    LineSearchResult ls = backtrack(eval, x, f_x, out, params);
    out.alpha = ls.accepted ? ls.alpha : ls.best_alpha;
    out.backtracks = ls.backtracks;

    cur.d_bar = out.d_bar;
    cur.d = out.d;
    cur.alpha_max = out.alpha_max;
    cur.alpha0 = out.alpha0;
    cur.alpha = out.alpha;
    cur.backtracks = out.backtracks;

    if (!ls.accepted) {
      report.termination = Termination::line_search_fail;
      break;
    }
    x = ls.x_new;
    f_x = ls.f_new;
    last_case = out.step_case;
  }

  report.counters = eval.counters();
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return report;
}

}  // namespace sobasip
