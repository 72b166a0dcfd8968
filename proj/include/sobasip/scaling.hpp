#pragma once

#include "sobasip/model.hpp"

namespace sobasip {

/// Affine-scaling state at one iterate. With v from the sign/bound case
/// split, D = diag(|v|^{-1/2}) so that d_inv holds diag(D^{-1}) and
/// d_minus2 holds diag(D^{-2}) = |v|. b_bar = D^{-1} H D^{-1} + diag(c_bar).
struct ScaledModel {
  Vector v;
  Vector d_inv;     // sqrt(|v|), floored at sqrt(1e-16)
  Vector d_minus2;  // |v| exactly
  IntVector jv;     // entries in {-1, 0, 1}
  Vector g_bar;     // D^{-1} g
  Vector c_bar;     // jv[i] * g[i] >= 0
  Matrix b_bar;     // symmetric
};

/// Per-coordinate bound selector: the signed distance to the bound the
/// negative gradient points away from, or +-1 when that bound is infinite.
Vector compute_v(const Vector& x, const Vector& g, const Bounds& bounds);

/// Diagonal of the Jacobian of |v(x)| where it exists.
IntVector compute_jv(const Vector& g, const Bounds& bounds);

ScaledModel build_scaled_model(const Vector& x, const Vector& g,
                               const Matrix& H, const Bounds& bounds);

/// ||D^{-2} g||_2 = ||diag(|v|) g||_2; zero exactly at scaled first-order
/// stationary points.
double kkt_residual(const Vector& x, const Vector& g, const Bounds& bounds);

}  // namespace sobasip
