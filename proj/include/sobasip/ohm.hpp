#pragma once

#include "sobasip/model.hpp"

namespace sobasip {

/// Bordered matrix F = [[B_bar, g_bar], [g_bar^T, -delta]] of order n+1.
/// Kept in block form; dense() materializes it for the direct eigenpath.
struct HomogenizedMatrix {
  Matrix b_bar;
  Vector g_bar;
  double delta = 0.0;

  Eigen::Index order() const { return g_bar.size() + 1; }
  Matrix dense() const;
  /// y = F * [s; t] without forming F.
  Vector apply(const Vector& st) const;
  double norm_inf() const;
};

HomogenizedMatrix assemble_f(const Matrix& b_bar, const Vector& g_bar, double delta);

/// Leftmost eigenpair of F split as [s; t], with theta = -lambda_1(F) and
/// the residuals of the optimality system it certifies.
struct OhmSolution {
  Vector s;
  double t = 0.0;
  double theta = 0.0;
  double residual_stationarity = 0.0;  // ||(B_bar + theta I) s + t g_bar||
  double residual_coupling = 0.0;      // |g_bar^T s - t (delta - theta)|
  double norm_err = 0.0;               // | ||[s;t]|| - 1 |
};

class EigenSolveError : public std::runtime_error {
 public:
  EigenSolveError(std::string what, double best_residual)
      : std::runtime_error(std::move(what)), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

/// Dimension above which leftmost_eigenpair switches from the dense
/// decomposition to Lanczos.
inline constexpr Eigen::Index kDenseEigenMax = 512;
inline constexpr double kDefaultEigTol = 1e-10;

/// Solves min over the unit sphere of [s;t]^T F [s;t] as an eigenvalue
/// problem. Sign-normalized so t >= 0 whenever |t| > tol_eig. A g_bar that
/// is exactly zero short-circuits to the block-diagonal split: t = 1 when
/// lambda_1(b_bar) >= -delta, else t = 0 with s the leftmost eigenvector
/// of b_bar. Throws EigenSolveError if the iterative path fails to reach
/// tol_eig within its cap (callers may fall back to the dense path).
OhmSolution leftmost_eigenpair(const HomogenizedMatrix& F,
                               double tol_eig = kDefaultEigTol);

/// Forces the Lanczos path regardless of order (exposed for equivalence
/// tests against the dense path).
OhmSolution leftmost_eigenpair_lanczos(const HomogenizedMatrix& F,
                                       double tol_eig = kDefaultEigTol);

struct OptimalityReport {
  double psd_margin = 0.0;  // lambda_1(F + theta I), >= -tol at an optimum
  double residual_stationarity = 0.0;
  double residual_coupling = 0.0;
  double norm_err = 0.0;
  bool pass = false;
};

/// Recomputes the optimality-system residuals of `sol` against F.
OptimalityReport verify_optimality(const HomogenizedMatrix& F,
                                   const OhmSolution& sol, double tol);

/// Smallest eigenvalue of a symmetric matrix; dense up to kDenseEigenMax,
/// Lanczos above.
double smallest_eigenvalue(const Matrix& M, double tol_eig = kDefaultEigTol);

/// Lanczos with full reorthogonalization on a matrix-free operator.
/// Deterministic (internally seeded). Returns the leftmost eigenpair.
struct LanczosResult {
  double value = 0.0;
  Vector vector;
  double residual = 0.0;
  int iterations = 0;
};

LanczosResult lanczos_smallest(const std::function<Vector(const Vector&)>& apply,
                               Eigen::Index dim, double norm_inf, double tol,
                               int max_iterations);

}  // namespace sobasip
