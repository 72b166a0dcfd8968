#include "sobasip/scaling.hpp"

#include <cmath>

namespace sobasip {

namespace {
// Iterates close enough to a bound would zero out |v|; flooring keeps
// d_inv usable while v itself stays exact.
constexpr double kVFloor = 1e-16;

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* where) {
  if (a != b) throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}
}  // namespace

Vector compute_v(const Vector& x, const Vector& g, const Bounds& bounds) {
  require_same_dim(x.size(), bounds.dim(), "compute_v");
  require_same_dim(g.size(), bounds.dim(), "compute_v");
  Vector v(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double lo = bounds.lower[i], hi = bounds.upper[i];
    if (g[i] < 0.0) {
      v[i] = std::isfinite(hi) ? x[i] - hi : -1.0;
    } else {
      v[i] = std::isfinite(lo) ? x[i] - lo : 1.0;
    }
    if (v[i] == 0.0 || (std::isfinite(lo) && x[i] < lo) || (std::isfinite(hi) && x[i] > hi))
      throw std::domain_error("compute_v: x on or outside a finite bound at coordinate " +
                              std::to_string(i));
  }
  return v;
}

IntVector compute_jv(const Vector& g, const Bounds& bounds) {
  require_same_dim(g.size(), bounds.dim(), "compute_jv");
  IntVector jv = IntVector::Zero(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (g[i] >= 0.0 && std::isfinite(bounds.lower[i]))
      jv[i] = 1;
    else if (g[i] < 0.0 && std::isfinite(bounds.upper[i]))
      jv[i] = -1;
  }
  return jv;
}

ScaledModel build_scaled_model(const Vector& x, const Vector& g,
                               const Matrix& H, const Bounds& bounds) {
  require_same_dim(H.rows(), x.size(), "build_scaled_model");
  require_same_dim(H.cols(), x.size(), "build_scaled_model");
  ScaledModel m;
  m.v = compute_v(x, g, bounds);
  m.jv = compute_jv(g, bounds);
  const Eigen::Index n = x.size();
  m.d_minus2 = m.v.cwiseAbs();
  m.d_inv.resize(n);
  for (Eigen::Index i = 0; i < n; ++i)
    m.d_inv[i] = std::sqrt(std::max(m.d_minus2[i], kVFloor));
  m.g_bar = m.d_inv.cwiseProduct(g);
  m.c_bar.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) m.c_bar[i] = m.jv[i] * g[i];
  // Mirror the upper triangle so b_bar is bitwise symmetric.
  m.b_bar.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      const double val = m.d_inv[i] * H(i, j) * m.d_inv[j];
      m.b_bar(i, j) = val;
      m.b_bar(j, i) = val;
    }
    m.b_bar(j, j) += m.c_bar[j];
  }
  return m;
}

double kkt_residual(const Vector& x, const Vector& g, const Bounds& bounds) {
  const Vector v = compute_v(x, g, bounds);
  return v.cwiseAbs().cwiseProduct(g).norm();
}

}  // namespace sobasip
