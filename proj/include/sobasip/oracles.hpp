#pragma once

#include "sobasip/solver.hpp"

#include <string>
#include <vector>

namespace sobasip {
namespace oracles {

/// Central finite differences. Steps shrink automatically when x +- h e_i
/// would leave the strict interior.
struct FdConfig {
  double step = 1e-6;
  double rel_tol = 1e-4;
};

Vector fd_gradient(const BoxProblem& problem, const Vector& x, const FdConfig& cfg = {});

/// Central differences of the analytic gradient, symmetrized.
Matrix fd_hessian(const BoxProblem& problem, const Vector& x,
                  const FdConfig& cfg = {1e-4, 1e-3});

/// Full symmetric eigendecomposition by cyclic Jacobi rotations.
/// Deliberately independent of the solver's eigenpath.
struct Spectrum {
  Vector values;   // ascending
  Matrix vectors;  // orthonormal columns, matching order
};

Spectrum dense_spectrum(const Matrix& M);

/// Brute-force reference minimizer for n <= 3: best point of a uniform
/// interior grid, refined by 20 sweeps of coordinate descent projected onto
/// the interior grid margin. Infinite bounds are windowed around the start.
struct GridResult {
  Vector x;
  double f = 0.0;
};

GridResult grid_minimize(const BoxProblem& problem, int resolution);

struct Finding {
  int iteration = -1;
  std::string check;
  std::string detail;
};

/// Replays a solve trace and re-verifies, per iteration: strict
/// interiority, theta > delta when g_bar != 0, the stationarity/coupling
/// residuals of the eigen step, the sign identity of the truncated
/// direction, and the cubic decrease at the accepted stepsize. Empty
/// result means the trace is clean.
std::vector<Finding> check_lemma_conclusions(const SolveReport& report,
                                             const BoxProblem& problem,
                                             const SolverParams& params);

}  // namespace oracles
}  // namespace sobasip
