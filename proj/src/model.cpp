#include "sobasip/model.hpp"

#include <cmath>
#include <limits>

namespace sobasip {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void Bounds::validate() const {
  if (lower.size() != upper.size())
    throw std::invalid_argument("Bounds: lower/upper length mismatch");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (std::isnan(lower[i]) || std::isnan(upper[i]))
      throw std::invalid_argument("Bounds: NaN bound at coordinate " + std::to_string(i));
    if (!(lower[i] < upper[i]))
      throw std::invalid_argument("Bounds: lower >= upper at coordinate " + std::to_string(i));
  }
}

Bounds Bounds::box(Eigen::Index n, double lo, double hi) {
  Bounds b;
  b.lower = Vector::Constant(n, lo);
  b.upper = Vector::Constant(n, hi);
  return b;
}

Bounds Bounds::free(Eigen::Index n) { return box(n, -kInf, kInf); }

void BoxProblem::validate() const {
  if (dim <= 0) throw std::invalid_argument("BoxProblem: dim must be positive");
  bounds.validate();
  if (bounds.dim() != dim || start.size() != dim)
    throw std::invalid_argument("BoxProblem: dimension mismatch");
  if (!value || !gradient || !hessian)
    throw std::invalid_argument("BoxProblem: missing oracle");
  if (!is_strictly_interior(start, bounds))
    throw std::invalid_argument("BoxProblem: start is not strictly interior");
}

bool is_strictly_interior(const Vector& x, const Bounds& bounds) {
  if (x.size() != bounds.dim())
    throw std::invalid_argument("is_strictly_interior: dimension mismatch");
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    // NaN compares false and is correctly rejected.
    if (!(bounds.lower[i] < x[i] && x[i] < bounds.upper[i])) return false;
  }
  return true;
}

Vector repair_start(const Vector& start, const Bounds& bounds) {
  if (start.size() != bounds.dim())
    throw std::invalid_argument("repair_start: dimension mismatch");
  Vector x = start;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double lo = bounds.lower[i], hi = bounds.upper[i];
    const double width = hi - lo;  // +inf when either side is infinite
    const double margin = 1e-2 * std::min(1.0, width);
    if (std::isfinite(lo) && x[i] <= lo) x[i] = lo + margin;
    if (std::isfinite(hi) && x[i] >= hi) x[i] = hi - margin;
  }
  return x;
}

void Evaluator::check_point(const Vector& x) const {
  if (x.size() != problem_.dim)
    throw std::invalid_argument("Evaluator: point has wrong dimension");
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!std::isfinite(x[i]))
      throw OracleError("Evaluator: non-finite input at coordinate " + std::to_string(i), i);
}

double Evaluator::value(const Vector& x) {
  check_point(x);
  const double f = problem_.value(x);
  ++counters_.n_f;
  if (!std::isfinite(f)) throw OracleError("objective returned non-finite value", -1);
  return f;
}

Vector Evaluator::gradient(const Vector& x) {
  check_point(x);
  Vector g = problem_.gradient(x);
  ++counters_.n_g;
  if (g.size() != problem_.dim)
    throw OracleError("gradient has wrong dimension", -1);
  for (Eigen::Index i = 0; i < g.size(); ++i)
    if (!std::isfinite(g[i]))
      throw OracleError("gradient non-finite at coordinate " + std::to_string(i), i);
  return g;
}

Matrix Evaluator::hessian(const Vector& x) {
  check_point(x);
  Matrix h = problem_.hessian(x);
  ++counters_.n_h;
  if (h.rows() != problem_.dim || h.cols() != problem_.dim)
    throw OracleError("hessian has wrong shape", -1);
  double scale = 0.0, asym = 0.0;
  for (Eigen::Index j = 0; j < h.cols(); ++j) {
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
      if (!std::isfinite(h(i, j)))
        throw OracleError("hessian non-finite at coordinate " + std::to_string(i), i);
      scale = std::max(scale, std::abs(h(i, j)));
      asym = std::max(asym, std::abs(h(i, j) - h(j, i)));
    }
  }
  if (asym > 1e-12 * (1.0 + scale))
    throw OracleError("hessian violates symmetry contract", -1);
  h = 0.5 * (h + h.transpose()).eval();
  return h;
}

}  // namespace sobasip
