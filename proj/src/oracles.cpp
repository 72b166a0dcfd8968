#include "sobasip/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sobasip {
namespace oracles {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Shrink the FD step so x +- h e_i stays strictly interior.
double safe_step(double h, double x, double lo, double hi) {
  double room = kInf;
  if (std::isfinite(lo)) room = std::min(room, x - lo);
  if (std::isfinite(hi)) room = std::min(room, hi - x);
  return std::min(h, 0.49 * room);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}
}  // namespace

Vector fd_gradient(const BoxProblem& problem, const Vector& x, const FdConfig& cfg) {
  const Eigen::Index n = x.size();
  Vector g(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double h = safe_step(cfg.step, x[i], problem.bounds.lower[i], problem.bounds.upper[i]);
    Vector xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (problem.value(xp) - problem.value(xm)) / (2.0 * h);
  }
  return g;
}

Matrix fd_hessian(const BoxProblem& problem, const Vector& x, const FdConfig& cfg) {
  const Eigen::Index n = x.size();
  Matrix H(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double h = safe_step(cfg.step, x[i], problem.bounds.lower[i], problem.bounds.upper[i]);
    Vector xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    H.col(i) = (problem.gradient(xp) - problem.gradient(xm)) / (2.0 * h);
  }
  return 0.5 * (H + H.transpose()).eval();
}

Spectrum dense_spectrum(const Matrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("dense_spectrum: not square");
  const Eigen::Index n = M.rows();
  Matrix A = 0.5 * (M + M.transpose());
  Matrix Q = Matrix::Identity(n, n);
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
    if (std::sqrt(off) <= 1e-15 * scale * n) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double phi = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (phi >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(phi) + std::sqrt(phi * phi + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double qkp = Q(k, p), qkq = Q(k, q);
          Q(k, p) = c * qkp - s * qkq;
          Q(k, q) = s * qkp + c * qkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(n);
  for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&A](Eigen::Index a, Eigen::Index b) { return A(a, a) < A(b, b); });
  Spectrum out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values[i] = A(order[i], order[i]);
    out.vectors.col(i) = Q.col(order[i]);
  }
  return out;
}

namespace {

double golden_section(const std::function<double(double)>& f, double a, double b,
                      int iters) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < iters; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

}  // namespace

GridResult grid_minimize(const BoxProblem& problem, int resolution) {
  const Eigen::Index n = problem.dim;
  if (n > 3) throw std::invalid_argument("grid_minimize: n must be at most 3");
  if (resolution < 2) throw std::invalid_argument("grid_minimize: resolution too small");

  Vector lo(n), hi(n), h(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    lo[i] = std::isfinite(problem.bounds.lower[i]) ? problem.bounds.lower[i]
                                                   : problem.start[i] - 10.0;
    hi[i] = std::isfinite(problem.bounds.upper[i]) ? problem.bounds.upper[i]
                                                   : problem.start[i] + 10.0;
    h[i] = (hi[i] - lo[i]) / (resolution + 1);
  }

  GridResult best;
  best.f = kInf;
  Vector x(n);
  std::vector<int> idx(n, 1);
  while (true) {
    for (Eigen::Index i = 0; i < n; ++i) x[i] = lo[i] + idx[i] * h[i];
    const double f = problem.value(x);
    if (f < best.f) {
      best.f = f;
      best.x = x;
    }
    Eigen::Index carry = 0;
    while (carry < n && ++idx[carry] > resolution) idx[carry++] = 1;
    if (carry == n) break;
  }

  // Coordinate-descent polish inside a shrinking window, projected onto the
  // interior grid margin [lo + h, hi - h].
  Vector w = 2.0 * h;
  for (int sweep = 0; sweep < 20; ++sweep) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double a = std::max(lo[i] + h[i], best.x[i] - w[i]);
      const double b = std::min(hi[i] - h[i], best.x[i] + w[i]);
      if (!(a < b)) continue;
      Vector probe = best.x;
      const double xi = golden_section(
          [&](double v) {
            probe[i] = v;
            return problem.value(probe);
          },
          a, b, 40);
      probe[i] = xi;
      const double f = problem.value(probe);
      if (f <= best.f) {
        best.f = f;
        best.x = probe;
      }
    }
    w *= 0.7;
  }
  return best;
}

std::vector<Finding> check_lemma_conclusions(const SolveReport& report,
                                             const BoxProblem& problem,
                                             const SolverParams& params) {
  std::vector<Finding> findings;
  auto flag = [&findings](int it, const char* check, std::string detail) {
    findings.push_back(Finding{it, check, std::move(detail)});
  };

  const auto& rows = report.iterates;
  for (size_t k = 0; k < rows.size(); ++k) {
    const IterateRecord& row = rows[k];
    const int it = int(k);

    if (!is_strictly_interior(row.x, problem.bounds))
      flag(it, "strict_interior", "iterate leaves the open box");

    if (row.step_case == StepCase::none) continue;

    const Vector g = problem.gradient(row.x);
    Matrix H = problem.hessian(row.x);
    H = 0.5 * (H + H.transpose()).eval();
    const ScaledModel model = build_scaled_model(row.x, g, H, problem.bounds);
    const double fnorm = std::max(model.b_bar.cwiseAbs().maxCoeff(),
                                  model.g_bar.cwiseAbs().maxCoeff());
    const double res_tol = 1e-8 * (1.0 + row.theta) + 1e-12 * fnorm;

    if (row.gbar_norm > 0.0 && row.theta < row.delta_used - 1e-9 * (1.0 + row.theta))
      flag(it, "theta_above_delta",
           "theta=" + fmt(row.theta) + " delta=" + fmt(row.delta_used));

    const double stat =
        (model.b_bar * row.s + row.theta * row.s + row.t * model.g_bar).norm();
    if (stat > res_tol)
      flag(it, "stationarity_residual", fmt(stat) + " > " + fmt(res_tol));
    const double coup =
        std::abs(model.g_bar.dot(row.s) - row.t * (row.delta_used - row.theta));
    if (coup > res_tol)
      flag(it, "coupling_residual", fmt(coup) + " > " + fmt(res_tol));

    if (std::abs(row.t) > 1e-10) {
      const double lhs = -model.g_bar.dot(row.s);
      const double sign_lhs = lhs >= 0.0 ? 1.0 : -1.0;
      const double sign_t = row.t >= 0.0 ? 1.0 : -1.0;
      if (sign_lhs != sign_t)
        flag(it, "sign_identity", "sign(-gbar.s) != sign(t)");
    }

    // Decrease condition at the accepted stepsize; the failing row of a
    // line_search_fail run never produced a next iterate and is exempt.
    const bool accepted_step = k + 1 < rows.size();
    if (accepted_step && row.step_case != StepCase::terminal_small_value) {
      const double f_here = problem.value(row.x);
      const double f_next = problem.value(rows[k + 1].x);
      const double ndbar = row.d_bar.norm();
      const double need =
          -(params.gamma / 6.0) * std::pow(row.alpha, 3) * std::pow(ndbar, 3);
      if (!(f_next - f_here <= need))
        flag(it, "sufficient_decrease",
             "df=" + fmt(f_next - f_here) + " need<=" + fmt(need));
    }
    if (accepted_step) {
      const Vector predicted = row.x + row.alpha * row.d;
      if ((predicted - rows[k + 1].x).lpNorm<Eigen::Infinity>() != 0.0)
        flag(it, "step_consistency", "x_next != x + alpha*d");
    }
  }
  return findings;
}

}  // namespace oracles
}  // namespace sobasip
