#include "sobasip/harness.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>

namespace sobasip {
namespace harness {

namespace {

using nlohmann::json;

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string sci4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4e", v);
  return buf;
}

std::vector<std::string> select_problems(const RunConfig& config) {
  if (config.problems.size() == 1 && config.problems[0] == "all")
    return problems::list();
  if (config.problems.empty())
    throw std::invalid_argument("no problem selected");
  const auto known = problems::list();
  for (const auto& name : config.problems)
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw std::invalid_argument("unknown problem: " + name);
  return config.problems;
}

RunRow make_row(const std::string& name, const BoxProblem& problem,
                const SolveReport& report) {
  RunRow row;
  row.problem = name;
  row.n = problem.dim;
  row.n_it = report.n_it;
  row.n_f = report.counters.n_f;
  row.n_g = report.counters.n_g;
  row.gbar_norm = report.final_iterate().gbar_norm;
  row.lambda1_bbar = report.final_iterate().lambda1_bbar;
  row.termination = to_string(report.termination);
  row.cpu_s = report.wall_seconds;
  return row;
}

void print_trace(const SolveReport& report, std::ostream& out) {
  out << "  iter            f        |gbar|   lambda1(Bbar)       theta           t  case        alpha  j\n";
  for (size_t k = 0; k < report.iterates.size(); ++k) {
    const IterateRecord& r = report.iterates[k];
    char buf[256];
    if (r.step_case == StepCase::none) {
      std::snprintf(buf, sizeof(buf), "  %4zu %12.5e  %12.5e  %12.5e %11s %11s  %-9s %11s  -\n",
                    k, r.f, r.gbar_norm, r.lambda1_bbar, "-", "-", to_string(r.step_case), "-");
    } else {
      std::snprintf(buf, sizeof(buf),
                    "  %4zu %12.5e  %12.5e  %12.5e %11.4e %11.4e  %-9s %11.4e %2d\n",
                    k, r.f, r.gbar_norm, r.lambda1_bbar, r.theta, r.t,
                    to_string(r.step_case), r.alpha, r.backtracks);
    }
    out << buf;
  }
}

}  // namespace

RunOutput run_problems(const RunConfig& config) {
  RunOutput out;
  if (config.problem_file) {
    BoxProblem problem = problems::load_problem_file(*config.problem_file);
    SolveReport report = solve(problem, config.params);
    out.rows.push_back(make_row(*config.problem_file, problem, report));
    if (!report.sosp_positive()) out.exit_code = kExitSolveFailure;
    out.reports.push_back(std::move(report));
    return out;
  }

  const auto names = select_problems(config);
  std::vector<BoxProblem> probs;
  probs.reserve(names.size());
  for (const auto& name : names) probs.push_back(problems::get(name, config.n));

  // Independent solves; rows are collected in selection order regardless of
  // completion order.
  std::vector<std::future<SolveReport>> futures;
  futures.reserve(names.size());
  for (size_t i = 0; i < names.size(); ++i) {
    const BoxProblem& p = probs[i];
    const SolverParams params = config.params;
    futures.push_back(std::async(std::launch::async, [&p, params] { return solve(p, params); }));
  }
  for (size_t i = 0; i < names.size(); ++i) {
    SolveReport report = futures[i].get();
    out.rows.push_back(make_row(names[i], probs[i], report));
    if (!report.sosp_positive()) out.exit_code = kExitSolveFailure;
    out.reports.push_back(std::move(report));
  }
  return out;
}

std::string to_table(const std::vector<RunRow>& rows) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-18s %5s %6s %6s %6s  %-11s %-12s %-16s %s\n",
                "Problem", "n", "N_it", "N_f", "N_g", "||gbar||", "lambda1(B)",
                "termination", "cpu-time");
  os << buf;
  for (const RunRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%-18s %5lld %6ld %6ld %6ld  %-11s %-12s %-16s %s\n",
                  r.problem.c_str(), static_cast<long long>(r.n), r.n_it, r.n_f, r.n_g,
                  sci4(r.gbar_norm).c_str(), sci4(r.lambda1_bbar).c_str(),
                  r.termination.c_str(), sci4(r.cpu_s).c_str());
    os << buf;
  }
  return os.str();
}

std::string to_csv(const std::vector<RunRow>& rows) {
  std::ostringstream os;
  os << "problem,n,n_it,n_f,n_g,gbar_norm,lambda1_bbar,termination,cpu_s\n";
  for (const RunRow& r : rows) {
    os << r.problem << ',' << r.n << ',' << r.n_it << ',' << r.n_f << ',' << r.n_g
       << ',' << num17(r.gbar_norm) << ',' << num17(r.lambda1_bbar) << ','
       << r.termination << ',' << num17(r.cpu_s) << '\n';
  }
  return os.str();
}

std::string to_json(const std::vector<RunRow>& rows,
                    const std::vector<SolveReport>* reports,
                    TraceVerbosity trace) {
  json arr = json::array();
  for (size_t i = 0; i < rows.size(); ++i) {
    const RunRow& r = rows[i];
    json obj{{"problem", r.problem},     {"n", r.n},
             {"n_it", r.n_it},           {"n_f", r.n_f},
             {"n_g", r.n_g},             {"gbar_norm", r.gbar_norm},
             {"lambda1_bbar", r.lambda1_bbar}, {"termination", r.termination},
             {"cpu_s", r.cpu_s}};
    if (reports && trace == TraceVerbosity::per_iter) {
      json rows_json = json::array();
      for (const IterateRecord& it : (*reports)[i].iterates) {
        rows_json.push_back(json{{"f", it.f},
                                 {"gbar_norm", it.gbar_norm},
                                 {"lambda1_bbar", it.lambda1_bbar},
                                 {"theta", it.theta},
                                 {"t", it.t},
                                 {"case", to_string(it.step_case)},
                                 {"alpha", it.alpha},
                                 {"backtracks", it.backtracks}});
      }
      obj["trace"] = std::move(rows_json);
    }
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::vector<RunRow> parse_csv(const std::string& text) {
  std::vector<RunRow> rows;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream ls(line);
    std::string tok;
    RunRow r;
    std::getline(ls, r.problem, ',');
    std::getline(ls, tok, ',');
    r.n = std::stoll(tok);
    std::getline(ls, tok, ',');
    r.n_it = std::stol(tok);
    std::getline(ls, tok, ',');
    r.n_f = std::stol(tok);
    std::getline(ls, tok, ',');
    r.n_g = std::stol(tok);
    std::getline(ls, tok, ',');
    r.gbar_norm = std::strtod(tok.c_str(), nullptr);
    std::getline(ls, tok, ',');
    r.lambda1_bbar = std::strtod(tok.c_str(), nullptr);
    std::getline(ls, r.termination, ',');
    std::getline(ls, tok, ',');
    r.cpu_s = std::strtod(tok.c_str(), nullptr);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<RunRow> parse_json(const std::string& text) {
  std::vector<RunRow> rows;
  for (const auto& obj : json::parse(text)) {
    RunRow r;
    r.problem = obj.at("problem").get<std::string>();
    r.n = obj.at("n").get<long long>();
    r.n_it = obj.at("n_it").get<long>();
    r.n_f = obj.at("n_f").get<long>();
    r.n_g = obj.at("n_g").get<long>();
    r.gbar_norm = obj.at("gbar_norm").get<double>();
    r.lambda1_bbar = obj.at("lambda1_bbar").get<double>();
    r.termination = obj.at("termination").get<std::string>();
    r.cpu_s = obj.at("cpu_s").get<double>();
    rows.push_back(std::move(r));
  }
  return rows;
}

int run(const RunConfig& config, std::ostream& out) {
  RunOutput result;
  try {
    result = run_problems(config);
  } catch (const std::invalid_argument& e) {
    out << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string payload;
  switch (config.format) {
    case OutputFormat::table: payload = to_table(result.rows); break;
    case OutputFormat::csv: payload = to_csv(result.rows); break;
    case OutputFormat::json:
      payload = to_json(result.rows, &result.reports, config.trace);
      break;
  }
  out << payload;
  if (config.trace == TraceVerbosity::per_iter && config.format != OutputFormat::json) {
    for (size_t i = 0; i < result.rows.size(); ++i) {
      out << result.rows[i].problem << " trace:\n";
      print_trace(result.reports[i], out);
    }
  }
  if (!config.out_path.empty()) {
    std::ofstream f(config.out_path);
    if (!f) {
      out << "error: cannot write " << config.out_path << "\n";
      return kExitUsage;
    }
    f << payload;
  }
  return result.exit_code;
}

std::vector<RandomInstance> random_instances(int count, unsigned long seed,
                                             Eigen::Index max_n,
                                             const std::vector<double>& deltas) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<Eigen::Index> dim(2, max_n);
  std::uniform_int_distribution<size_t> which_delta(0, deltas.size() - 1);
  std::vector<RandomInstance> out;
  out.reserve(count);
  for (int c = 0; c < count; ++c) {
    const Eigen::Index n = dim(rng);
    Matrix A(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i) A(i, j) = gauss(rng);
    RandomInstance inst;
    inst.b_bar = 0.5 * (A + A.transpose());
    inst.g_bar.resize(n);
    double norm = 0.0;
    while (norm == 0.0) {
      for (Eigen::Index i = 0; i < n; ++i) inst.g_bar[i] = gauss(rng);
      norm = inst.g_bar.norm();
    }
    inst.delta = deltas[which_delta(rng)];
    out.push_back(std::move(inst));
  }
  return out;
}

int verify(const RunConfig& config, std::ostream& out) {
  bool all_ok = true;
  auto report_check = [&out, &all_ok](const std::string& name, bool ok,
                                      const std::string& detail = "") {
    out << (ok ? "PASS " : "FAIL ") << name;
    if (!ok && !detail.empty()) out << "  (" << detail << ")";
    out << "\n";
    all_ok = all_ok && ok;
  };

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> frac(0.1, 0.9);

  // 1. finite-difference derivative checks on every registry problem
  for (const auto& name : problems::list()) {
    BoxProblem p = problems::get(name);
    double worst_g = 0.0, worst_h = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      Vector x(p.dim);
      for (Eigen::Index i = 0; i < p.dim; ++i) {
        const double lo = std::isfinite(p.bounds.lower[i]) ? p.bounds.lower[i]
                                                           : p.start[i] - 2.0;
        const double hi = std::isfinite(p.bounds.upper[i]) ? p.bounds.upper[i]
                                                           : p.start[i] + 2.0;
        x[i] = lo + frac(rng) * (hi - lo);
      }
      const Vector ga = p.gradient(x);
      const Vector gf = oracles::fd_gradient(p, x);
      worst_g = std::max(worst_g, (ga - gf).lpNorm<Eigen::Infinity>() /
                                      (1.0 + ga.lpNorm<Eigen::Infinity>()));
      const Matrix Ha = p.hessian(x);
      const Matrix Hf = oracles::fd_hessian(p, x);
      worst_h = std::max(worst_h, (Ha - Hf).lpNorm<Eigen::Infinity>() /
                                      (1.0 + Ha.lpNorm<Eigen::Infinity>()));
    }
    report_check("fd_gradient " + name, worst_g <= 1e-4, "rel " + num17(worst_g));
    report_check("fd_hessian " + name, worst_h <= 1e-3, "rel " + num17(worst_h));
  }

  // 2. lemma-conclusion replays on fresh traces
  for (const auto& name : problems::list()) {
    BoxProblem p = problems::get(name);
    SolveReport rep = solve(p, config.params);
    const auto findings = oracles::check_lemma_conclusions(rep, p, config.params);
    std::string detail;
    for (const auto& f : findings)
      detail += "[it " + std::to_string(f.iteration) + " " + f.check + ": " + f.detail + "]";
    report_check("lemma_trace " + name, findings.empty(), detail);
  }

  // 3. randomized bordered-eigenvalue properties via the Jacobi oracle
  const auto instances = random_instances(500, config.seed, 30, {0.0, 1e-6, 1e-2});
  int lemma1_bad = 0, residual_bad = 0, sign_bad = 0;
  for (const auto& inst : instances) {
    HomogenizedMatrix F = assemble_f(inst.b_bar, inst.g_bar, inst.delta);
    const auto spec_f = oracles::dense_spectrum(F.dense());
    const auto spec_b = oracles::dense_spectrum(inst.b_bar);
    if (!(spec_f.values[0] < -inst.delta)) ++lemma1_bad;
    if (!(spec_f.values[0] <= spec_b.values[0])) ++lemma1_bad;
    const OhmSolution sol = leftmost_eigenpair(F);
    const double tol = 1e-8 * (1.0 + sol.theta);
    if (sol.residual_stationarity > tol || sol.residual_coupling > tol ||
        sol.norm_err > 1e-10)
      ++residual_bad;
    if (std::abs(sol.t) > 1e-10) {
      const double lhs = -inst.g_bar.dot(sol.s);
      if ((lhs >= 0.0 ? 1.0 : -1.0) != (sol.t >= 0.0 ? 1.0 : -1.0)) ++sign_bad;
    }
  }
  report_check("lemma1_random_500", lemma1_bad == 0, std::to_string(lemma1_bad) + " violations");
  report_check("optimality_residuals_random", residual_bad == 0,
               std::to_string(residual_bad) + " violations");
  report_check("sign_identity_random", sign_bad == 0, std::to_string(sign_bad) + " violations");

  return all_ok ? kExitOk : kExitSolveFailure;
}

}  // namespace harness
}  // namespace sobasip
