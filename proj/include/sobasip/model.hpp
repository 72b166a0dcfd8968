#pragma once

#include <Eigen/Core>
#include <functional>
#include <stdexcept>
#include <string>

namespace sobasip {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using IntVector = Eigen::VectorXi;

/// Raised when a problem oracle returns a non-finite value or violates
/// its symmetry contract. Carries the first offending coordinate.
class OracleError : public std::runtime_error {
 public:
  OracleError(std::string what, Eigen::Index coordinate)
      : std::runtime_error(std::move(what)), coordinate_(coordinate) {}
  Eigen::Index coordinate() const { return coordinate_; }

 private:
  Eigen::Index coordinate_;
};

/// Per-coordinate lower/upper bounds. Entries may be -inf / +inf; a
/// coordinate with both infinite is unconstrained. lower < upper strictly.
struct Bounds {
  Vector lower;
  Vector upper;

  Eigen::Index dim() const { return lower.size(); }
  void validate() const;

  static Bounds box(Eigen::Index n, double lo, double hi);
  static Bounds free(Eigen::Index n);
};

/// A bound-constrained minimization problem with analytic derivatives.
/// Oracles are only ever evaluated at strictly interior points; behaviour
/// outside [l, u] is unspecified and never exercised.
struct BoxProblem {
  Eigen::Index dim = 0;
  Bounds bounds;
  Vector start;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  std::function<Matrix(const Vector&)> hessian;

  void validate() const;
};

struct EvalCounters {
  long n_f = 0;
  long n_g = 0;
  long n_h = 0;
};

bool is_strictly_interior(const Vector& x, const Bounds& bounds);

/// Nudges coordinates that sit on (or beyond) a finite bound to
/// lower + 1e-2 * min(1, u - l) inside, mirrored at the upper bound.
Vector repair_start(const Vector& start, const Bounds& bounds);

/// Counting front-end for a problem's oracles. Checks output for
/// non-finite entries and enforces the Hessian symmetry contract,
/// returning the symmetrized (H + H^T)/2. Counters are solve-local;
/// distinct Evaluators over one problem may run concurrently.
class Evaluator {
 public:
  explicit Evaluator(const BoxProblem& problem) : problem_(problem) {}

  double value(const Vector& x);
  Vector gradient(const Vector& x);
  Matrix hessian(const Vector& x);

  const EvalCounters& counters() const { return counters_; }
  const BoxProblem& problem() const { return problem_; }

 private:
  void check_point(const Vector& x) const;

  const BoxProblem& problem_;
  EvalCounters counters_;
};

}  // namespace sobasip
