// Acceptance suite: one test case per criterion, each printing a
// CRITERION <k> ... PASS/FAIL line in addition to the usual assertions.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sobasip/harness.hpp"
#include "sobasip/oracles.hpp"
#include "sobasip/problems.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <cstdio>
#include <map>
#include <random>

using namespace sobasip;

namespace {

const std::vector<std::string>& core_set() {
  static const std::vector<std::string> names = problems::list();
  return names;
}

// Soft iteration targets from the published result table (shared names).
const std::map<std::string, int>& iteration_targets() {
  static const std::map<std::string, int> t = {{"camel6", 6},  {"hs38", 36},
                                               {"hatflda", 10}, {"bdexp", 30},
                                               {"nonscomp", 27}, {"hs25", 16}};
  return t;
}

struct CoreRuns {
  std::vector<std::string> names;
  std::vector<BoxProblem> problems;
  std::vector<SolveReport> reports;
  double total_wall = 0.0;
};

const CoreRuns& core_runs() {
  static const CoreRuns runs = [] {
    CoreRuns r;
    const SolverParams params;  // reference configuration
    for (const auto& name : core_set()) {
      r.names.push_back(name);
      r.problems.push_back(problems::get(name));
      r.reports.push_back(solve(r.problems.back(), params));
      r.total_wall += r.reports.back().wall_seconds;
    }
    return r;
  }();
  return runs;
}

void print_line(int id, const char* label, bool pass) {
  std::printf("CRITERION %2d %-52s %s\n", id, label, pass ? "PASS" : "FAIL");
  std::fflush(stdout);
}

const SolveReport* report_for(const std::string& name) {
  const CoreRuns& runs = core_runs();
  for (size_t i = 0; i < runs.names.size(); ++i)
    if (runs.names[i] == name) return &runs.reports[i];
  return nullptr;
}

Matrix haar_rotation(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix A(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) A(i, j) = gauss(rng);
  const Eigen::HouseholderQR<Matrix> qr(A);
  return qr.householderQ();
}

}  // namespace

TEST_CASE("criterion 1: convergence reproduction on the core set") {
  const CoreRuns& runs = core_runs();
  bool pass = true;
  for (size_t i = 0; i < runs.names.size(); ++i) {
    const SolveReport& rep = runs.reports[i];
    CAPTURE(runs.names[i]);
    const bool converged = rep.sosp_positive() && rep.final_iterate().gbar_norm <= 1e-6;
    CHECK(converged);
    pass = pass && converged;
    const auto target = iteration_targets().find(runs.names[i]);
    if (target != iteration_targets().end()) {
      const bool window_ok = rep.n_it <= 5 * target->second &&
                             5 * rep.n_it >= target->second;
      CHECK(window_ok);
      pass = pass && window_ok;
    }
  }
  CHECK(runs.total_wall < 10.0);
  pass = pass && runs.total_wall < 10.0;
  print_line(1, "core-set convergence and iteration windows", pass);
}

TEST_CASE("criterion 2: final curvature certificates") {
  const SolveReport* camel = report_for("camel6");
  const SolveReport* colville = report_for("hs38");
  REQUIRE(camel != nullptr);
  REQUIRE(colville != nullptr);
  const double lc = camel->final_iterate().lambda1_bbar;
  const double lh = colville->final_iterate().lambda1_bbar;
  const bool pass = lc >= 15.0 && lc <= 30.0 && lh >= 4.0 && lh <= 12.0;
  CHECK(lc >= 15.0);
  CHECK(lc <= 30.0);
  CHECK(lh >= 4.0);
  CHECK(lh <= 12.0);
  print_line(2, "camel6/hs38 final lambda1 windows", pass);
}

TEST_CASE("criterion 3: bordered eigenvalue ordering, 500 instances") {
  const auto instances = harness::random_instances(500, 2024, 30, {0.0, 1e-6, 1e-2});
  int violations = 0;
  for (const auto& inst : instances) {
    HomogenizedMatrix F = assemble_f(inst.b_bar, inst.g_bar, inst.delta);
    const auto spec_f = oracles::dense_spectrum(F.dense());
    const auto spec_b = oracles::dense_spectrum(inst.b_bar);
    if (!(spec_f.values[0] < -inst.delta)) ++violations;
    if (!(spec_f.values[0] <= spec_b.values[0])) ++violations;
  }
  CHECK(violations == 0);
  print_line(3, "lambda1(F) < -delta and <= lambda1(Bbar)", violations == 0);
}

TEST_CASE("criterion 4: optimality-system residuals on those instances") {
  const auto instances = harness::random_instances(500, 2024, 30, {0.0, 1e-6, 1e-2});
  int violations = 0;
  for (const auto& inst : instances) {
    const OhmSolution sol = leftmost_eigenpair(assemble_f(inst.b_bar, inst.g_bar, inst.delta));
    const double tol = 1e-8 * (1.0 + sol.theta);
    if (sol.residual_stationarity > tol) ++violations;
    if (sol.residual_coupling > tol) ++violations;
    if (sol.norm_err > 1e-10) ++violations;
  }
  CHECK(violations == 0);
  print_line(4, "stationarity/coupling/unit-norm residuals", violations == 0);
}

TEST_CASE("criterion 5: sign identity") {
  const auto instances = harness::random_instances(500, 2024, 30, {0.0, 1e-6, 1e-2});
  int violations = 0;
  for (const auto& inst : instances) {
    const OhmSolution sol = leftmost_eigenpair(assemble_f(inst.b_bar, inst.g_bar, inst.delta));
    if (std::abs(sol.t) <= 1e-10) continue;
    const double lhs = -inst.g_bar.dot(sol.s);
    if ((lhs >= 0.0 ? 1.0 : -1.0) != (sol.t >= 0.0 ? 1.0 : -1.0)) ++violations;
  }
  CHECK(violations == 0);
  print_line(5, "sign(-gbar.s) * t = |t| whenever |t| > 1e-10", violations == 0);
}

TEST_CASE("criterion 6: zero-gradient split") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<Eigen::Index> dims(2, 20);
  int violations = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const Eigen::Index n = dims(rng);
    const double delta = (rep % 3 == 0) ? 0.0 : (rep % 3 == 1 ? 1e-6 : 1e-2);
    const Matrix Q = haar_rotation(rng, n);
    Vector evals(n);
    for (Eigen::Index i = 0; i < n; ++i) evals[i] = 0.5 + i;

    // lambda1 safely above -delta
    Vector above = evals;
    above[0] = -delta + 0.3;
    Matrix B = Q * above.asDiagonal() * Q.transpose();
    OhmSolution sol = leftmost_eigenpair(assemble_f(0.5 * (B + B.transpose()), Vector::Zero(n), delta));
    if (std::abs(sol.t - 1.0) > 1e-10) ++violations;

    // lambda1 safely below -delta
    Vector below = evals;
    below[0] = -delta - 0.3;
    B = Q * below.asDiagonal() * Q.transpose();
    sol = leftmost_eigenpair(assemble_f(0.5 * (B + B.transpose()), Vector::Zero(n), delta));
    if (std::abs(sol.t) > 1e-10) ++violations;
  }
  CHECK(violations == 0);
  print_line(6, "g_bar = 0 instances split by lambda1 vs -delta", violations == 0);
}

TEST_CASE("criterion 7: feasibility and descent invariants over traces") {
  const CoreRuns& runs = core_runs();
  const SolverParams params;
  size_t total_findings = 0;
  for (size_t i = 0; i < runs.names.size(); ++i) {
    CAPTURE(runs.names[i]);
    const auto findings =
        oracles::check_lemma_conclusions(runs.reports[i], runs.problems[i], params);
    for (const auto& f : findings)
      MESSAGE(runs.names[i], " it ", f.iteration, " ", f.check, ": ", f.detail);
    CHECK(findings.empty());
    total_findings += findings.size();
    for (const auto& row : runs.reports[i].iterates)
      CHECK(is_strictly_interior(row.x, runs.problems[i].bounds));
  }
  print_line(7, "lemma replay over every core trace, zero findings", total_findings == 0);
}

TEST_CASE("criterion 8: derivative oracle equivalence") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> frac(0.1, 0.9);
  bool pass = true;
  for (const auto& name : core_set()) {
    const BoxProblem p = problems::get(name);
    CAPTURE(name);
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
    CHECK(worst_g <= 1e-4);
    CHECK(worst_h <= 1e-3);
    pass = pass && worst_g <= 1e-4 && worst_h <= 1e-3;
  }
  print_line(8, "FD gradient 1e-4 / FD Hessian 1e-3, 20 points each", pass);
}

TEST_CASE("criterion 9: eigensolver path equivalence") {
  std::mt19937_64 rng(909);
  std::uniform_int_distribution<Eigen::Index> dims(3, 49);
  std::uniform_real_distribution<double> spread(0.2, 2.0);
  bool pass = true;
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::Index m = dims(rng);  // order of F = m (so n = m - 1)
    // constructed spectrum with a guaranteed leftmost gap
    Vector evals(m);
    evals[0] = -3.0;
    evals[1] = evals[0] + 0.05 + spread(rng);
    for (Eigen::Index i = 2; i < m; ++i) evals[i] = evals[i - 1] + spread(rng);
    const Matrix Q = haar_rotation(rng, m);
    Matrix S = Q * evals.asDiagonal() * Q.transpose();
    S = 0.5 * (S + S.transpose());

    // present S as a bordered matrix; shifting by the corner value keeps
    // delta nonnegative without touching eigenvectors or gaps
    const double shift = std::max(0.0, S(m - 1, m - 1));
    const Matrix S_shift = S - shift * Matrix::Identity(m, m);
    HomogenizedMatrix F;
    F.b_bar = S_shift.topLeftCorner(m - 1, m - 1);
    F.g_bar = S_shift.topRightCorner(m - 1, 1);
    F.delta = -S_shift(m - 1, m - 1);
    if (F.g_bar.lpNorm<Eigen::Infinity>() == 0.0) F.g_bar[0] = 1e-3;

    Eigen::SelfAdjointEigenSolver<Matrix> dense(F.dense());
    const double theta_dense = -dense.eigenvalues()[0];
    const double gap = dense.eigenvalues()[1] - dense.eigenvalues()[0];
    if (gap < 1e-8) continue;  // outside the criterion's eligibility filter
    Vector y_dense = dense.eigenvectors().col(0);

    const OhmSolution lz = leftmost_eigenpair_lanczos(F);
    Vector y_lz(m);
    y_lz << lz.s, lz.t;

    const bool theta_ok =
        std::abs(lz.theta - theta_dense) <= 1e-8 * (1.0 + std::abs(theta_dense));
    const double cosang = std::min(1.0, std::abs(y_dense.dot(y_lz)));
    const bool angle_ok = std::acos(cosang) <= 1e-6;
    CHECK(theta_ok);
    CHECK(angle_ok);
    pass = pass && theta_ok && angle_ok;
  }
  print_line(9, "lanczos vs dense: theta 1e-8 rel, angle 1e-6 rad", pass);
}

TEST_CASE("criterion 10: superlinear tail on camel6 and hs38") {
  bool pass = true;
  for (const char* name : {"camel6", "hs38"}) {
    const SolveReport* rep = report_for(name);
    REQUIRE(rep != nullptr);
    const auto spec = problems::get_spec(name);
    REQUIRE(spec.reference.has_value());
    CAPTURE(name);

    // reference minimizers are sign-symmetric for camel6; take the closer one
    const Vector& xf = rep->final_iterate().x;
    Vector ref = spec.reference->x;
    if ((xf + ref).norm() < (xf - ref).norm()) ref = -ref;

    const auto& rows = rep->iterates;
    REQUIRE(rows.size() >= 4);
    const double eK = (rows[rows.size() - 1].x - ref).norm();
    const double eK1 = (rows[rows.size() - 2].x - ref).norm();
    const double eK2 = (rows[rows.size() - 3].x - ref).norm();
    const bool tail_ok = (eK / eK1 <= 0.2 * (eK1 / eK2)) || eK <= 1e-10;
    CHECK(tail_ok);

    bool no_backtracks = true;
    size_t steps_seen = 0;
    for (size_t k = rows.size(); k-- > 0 && steps_seen < 3;) {
      if (rows[k].step_case == StepCase::none) continue;
      ++steps_seen;
      if (rows[k].backtracks != 0) no_backtracks = false;
    }
    CHECK(no_backtracks);
    pass = pass && tail_ok && no_backtracks;
  }
  print_line(10, "last-three error contraction, final j = 0", pass);
}

TEST_CASE("criterion 11: iteration counts sweep monotonically in 1/eps") {
  bool pass = true;
  for (const auto& name : core_set()) {
    CAPTURE(name);
    const BoxProblem p = problems::get(name);
    std::vector<int> nits;
    for (const double eps : {1e-4, 1e-5, 1e-6}) {
      SolverParams params;
      params.eps = eps;
      const SolveReport rep = solve(p, params);
      nits.push_back(rep.n_it);
    }
    const bool mono = nits[0] <= nits[1] && nits[1] <= nits[2];
    const bool capped = nits[2] <= 200;
    CHECK(mono);
    CHECK(capped);
    pass = pass && mono && capped;
  }
  print_line(11, "N_it non-decreasing in 1/eps, never above 200", pass);
}
