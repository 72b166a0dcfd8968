#include "sobasip/ohm.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

namespace sobasip {

Matrix HomogenizedMatrix::dense() const {
  const Eigen::Index n = g_bar.size();
  Matrix F(n + 1, n + 1);
  F.topLeftCorner(n, n) = b_bar;
  F.topRightCorner(n, 1) = g_bar;
  F.bottomLeftCorner(1, n) = g_bar.transpose();
  F(n, n) = -delta;
  return F;
}

Vector HomogenizedMatrix::apply(const Vector& st) const {
  const Eigen::Index n = g_bar.size();
  Vector out(n + 1);
  out.head(n) = b_bar * st.head(n) + st[n] * g_bar;
  out[n] = g_bar.dot(st.head(n)) - delta * st[n];
  return out;
}

double HomogenizedMatrix::norm_inf() const {
  const Eigen::Index n = g_bar.size();
  double m = g_bar.cwiseAbs().sum() + std::abs(delta);
  for (Eigen::Index i = 0; i < n; ++i)
    m = std::max(m, b_bar.row(i).cwiseAbs().sum() + std::abs(g_bar[i]));
  return m;
}

HomogenizedMatrix assemble_f(const Matrix& b_bar, const Vector& g_bar, double delta) {
  if (b_bar.rows() != b_bar.cols() || b_bar.rows() != g_bar.size())
    throw std::invalid_argument("assemble_f: dimension mismatch");
  if (!(delta >= 0.0))
    throw std::invalid_argument("assemble_f: delta must be nonnegative");
  return HomogenizedMatrix{b_bar, g_bar, delta};
}

namespace {

void fill_residuals(const HomogenizedMatrix& F, OhmSolution& sol) {
  sol.residual_stationarity =
      (F.b_bar * sol.s + sol.theta * sol.s + sol.t * F.g_bar).norm();
  sol.residual_coupling =
      std::abs(F.g_bar.dot(sol.s) - sol.t * (F.delta - sol.theta));
  Vector st(sol.s.size() + 1);
  st << sol.s, sol.t;
  sol.norm_err = std::abs(st.norm() - 1.0);
}

OhmSolution from_eigvec(const HomogenizedMatrix& F, const Vector& y,
                        double lambda1, double tol_eig) {
  const Eigen::Index n = F.g_bar.size();
  OhmSolution sol;
  sol.s = y.head(n);
  sol.t = y[n];
  sol.theta = -lambda1;
  if (std::abs(sol.t) > tol_eig && sol.t < 0.0) {
    sol.s = -sol.s;
    sol.t = -sol.t;
  }
  fill_residuals(F, sol);
  return sol;
}

// Exact g_bar = 0 bypasses the bordered solve: F is block diagonal and the
// split is decided by lambda_1(b_bar) against -delta.
OhmSolution trivial_case(const HomogenizedMatrix& F, double tol_eig) {
  const Eigen::Index n = F.g_bar.size();
  OhmSolution sol;
  if (n + 1 <= kDenseEigenMax) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(F.b_bar);
    if (es.eigenvalues()[0] >= -F.delta) {
      sol.s = Vector::Zero(n);
      sol.t = 1.0;
      sol.theta = F.delta;
    } else {
      sol.s = es.eigenvectors().col(0);
      sol.t = 0.0;
      sol.theta = -es.eigenvalues()[0];
    }
  } else {
    auto apply = [&F](const Vector& z) { return Vector(F.b_bar * z); };
    const double nrm = F.b_bar.cwiseAbs().rowwise().sum().maxCoeff();
    LanczosResult lr = lanczos_smallest(apply, n, nrm, tol_eig, 10 * int(n + 1));
    if (lr.value >= -F.delta) {
      sol.s = Vector::Zero(n);
      sol.t = 1.0;
      sol.theta = F.delta;
    } else {
      sol.s = lr.vector;
      sol.t = 0.0;
      sol.theta = -lr.value;
    }
  }
  fill_residuals(F, sol);
  return sol;
}

}  // namespace

LanczosResult lanczos_smallest(const std::function<Vector(const Vector&)>& apply,
                               Eigen::Index dim, double norm_inf, double tol,
                               int max_iterations) {
  if (dim == 1) {
    Vector e1 = Vector::Ones(1);
    const double a = apply(e1)[0];
    return LanczosResult{a, e1, 0.0, 1};
  }
  std::mt19937_64 rng(0x5eed5eedULL);  // fixed seed keeps results reproducible
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double tol_abs = tol * (1.0 + norm_inf);
  LanczosResult best;
  best.residual = std::numeric_limits<double>::infinity();
  int used = 0;
  // A handful of restarts guards against a start vector that is (numerically)
  // orthogonal to the leftmost eigenvector.
  for (int restart = 0; restart < 4 && used < max_iterations; ++restart) {
    const Eigen::Index m_max = std::min<Eigen::Index>(dim, max_iterations - used);
    Matrix Q(dim, m_max);
    std::vector<double> alpha, beta;
    Vector q(dim);
    for (Eigen::Index i = 0; i < dim; ++i) q[i] = gauss(rng);
    q.normalize();
    Q.col(0) = q;
    Vector w;
    for (Eigen::Index j = 0; j < m_max; ++j, ++used) {
      w = apply(Q.col(j));
      const double a = Q.col(j).dot(w);
      alpha.push_back(a);
      w -= a * Q.col(j);
      if (j > 0) w -= beta[j - 1] * Q.col(j - 1);
      // full reorthogonalization, twice
      for (int pass = 0; pass < 2; ++pass)
        w -= Q.leftCols(j + 1) * (Q.leftCols(j + 1).transpose() * w);

      // Rayleigh-Ritz on the tridiagonal section
      Matrix T = Matrix::Zero(j + 1, j + 1);
      for (Eigen::Index i = 0; i <= j; ++i) {
        T(i, i) = alpha[i];
        if (i > 0) {
          T(i, i - 1) = beta[i - 1];
          T(i - 1, i) = beta[i - 1];
        }
      }
      Eigen::SelfAdjointEigenSolver<Matrix> es(T);
      Vector y = Q.leftCols(j + 1) * es.eigenvectors().col(0);
      y.normalize();
      const double ritz = es.eigenvalues()[0];
      const double res = (apply(y) - ritz * y).norm();
      if (res < best.residual) {
        best.value = ritz;
        best.vector = y;
        best.residual = res;
        best.iterations = used + 1;
      }
      if (res <= tol_abs) return best;

      const double b = w.norm();
      if (b <= 1e-14 * (1.0 + norm_inf)) break;  // invariant subspace exhausted
      beta.push_back(b);
      if (j + 1 < m_max) Q.col(j + 1) = w / b;
    }
  }
  if (best.residual <= tol_abs) return best;
  throw EigenSolveError("lanczos_smallest: residual " + std::to_string(best.residual) +
                            " did not reach tolerance within iteration cap",
                        best.residual);
}

OhmSolution leftmost_eigenpair(const HomogenizedMatrix& F, double tol_eig) {
  if (tol_eig <= 0.0) throw std::invalid_argument("leftmost_eigenpair: tol_eig must be positive");
  if (F.g_bar.lpNorm<Eigen::Infinity>() == 0.0) return trivial_case(F, tol_eig);
  if (F.order() <= kDenseEigenMax) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(F.dense());
    return from_eigvec(F, es.eigenvectors().col(0), es.eigenvalues()[0], tol_eig);
  }
  return leftmost_eigenpair_lanczos(F, tol_eig);
}

OhmSolution leftmost_eigenpair_lanczos(const HomogenizedMatrix& F, double tol_eig) {
  if (tol_eig <= 0.0) throw std::invalid_argument("leftmost_eigenpair: tol_eig must be positive");
  if (F.g_bar.lpNorm<Eigen::Infinity>() == 0.0) return trivial_case(F, tol_eig);
  auto apply = [&F](const Vector& st) { return F.apply(st); };
  LanczosResult lr =
      lanczos_smallest(apply, F.order(), F.norm_inf(), tol_eig, 10 * int(F.order()));
  return from_eigvec(F, lr.vector, lr.value, tol_eig);
}

OptimalityReport verify_optimality(const HomogenizedMatrix& F,
                                   const OhmSolution& sol, double tol) {
  OptimalityReport rep;
  rep.residual_stationarity =
      (F.b_bar * sol.s + sol.theta * sol.s + sol.t * F.g_bar).norm();
  rep.residual_coupling =
      std::abs(F.g_bar.dot(sol.s) - sol.t * (F.delta - sol.theta));
  Vector st(sol.s.size() + 1);
  st << sol.s, sol.t;
  rep.norm_err = std::abs(st.norm() - 1.0);
  rep.psd_margin = smallest_eigenvalue(F.dense()) + sol.theta;
  rep.pass = rep.psd_margin >= -tol && rep.residual_stationarity <= tol &&
             rep.residual_coupling <= tol && rep.norm_err <= tol;
  return rep;
}

double smallest_eigenvalue(const Matrix& M, double tol_eig) {
  if (M.rows() != M.cols()) throw std::invalid_argument("smallest_eigenvalue: not square");
  if (M.rows() <= kDenseEigenMax) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(M, Eigen::EigenvaluesOnly);
    return es.eigenvalues()[0];
  }
  auto apply = [&M](const Vector& z) { return Vector(M * z); };
  const double nrm = M.cwiseAbs().rowwise().sum().maxCoeff();
  return lanczos_smallest(apply, M.rows(), nrm, tol_eig, 10 * int(M.rows() + 1)).value;
}

}  // namespace sobasip
