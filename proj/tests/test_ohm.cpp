#include "sobasip/ohm.hpp"
#include "sobasip/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sobasip;

namespace {

Matrix random_symmetric(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix A(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) A(i, j) = gauss(rng);
  return 0.5 * (A + A.transpose());
}

Vector random_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = gauss(rng);
  return v;
}

}  // namespace

TEST_CASE("assemble_f") {
  const Matrix B = Matrix::Constant(1, 1, 2.0);
  const Vector g = Vector::Constant(1, 1.0);
  HomogenizedMatrix F = assemble_f(B, g, 0.1);
  Matrix expect(2, 2);
  expect << 2.0, 1.0, 1.0, -0.1;
  CHECK((F.dense() - expect).lpNorm<Eigen::Infinity>() == 0.0);

  SUBCASE("zero border is block diagonal") {
    HomogenizedMatrix F0 = assemble_f(B, Vector::Zero(1), 0.0);
    CHECK(F0.dense()(0, 1) == 0.0);
    CHECK(F0.dense()(1, 1) == 0.0);
  }
  SUBCASE("identity block with delta 1 has eigenvalues {-1, 1, 1}") {
    HomogenizedMatrix Fi = assemble_f(Matrix::Identity(2, 2), Vector::Zero(2), 1.0);
    const auto spec = oracles::dense_spectrum(Fi.dense());
    CHECK(spec.values[0] == doctest::Approx(-1.0));
    CHECK(spec.values[1] == doctest::Approx(1.0));
    CHECK(spec.values[2] == doctest::Approx(1.0));
  }
  SUBCASE("negative delta rejected") {
    CHECK_THROWS_AS(assemble_f(B, g, -1e-9), std::invalid_argument);
  }
}

TEST_CASE("leftmost eigenpair of the 2x2 instance") {
  // closed form: lambda = (tr +- sqrt(tr^2 - 4 det)) / 2 gives -0.5 and 2.4,
  // eigenvector for -0.5 proportional to (1, -2.5)
  HomogenizedMatrix F =
      assemble_f(Matrix::Constant(1, 1, 2.0), Vector::Constant(1, 1.0), 0.1);
  const OhmSolution sol = leftmost_eigenpair(F);
  CHECK(sol.theta == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sol.t == doctest::Approx(0.92847669088525919).epsilon(1e-12));
  CHECK(sol.s[0] == doctest::Approx(-0.37139067635410372).epsilon(1e-12));
  CHECK(sol.norm_err <= 1e-10);
  CHECK(sol.residual_stationarity <= 1e-12);
  CHECK(sol.residual_coupling <= 1e-12);
}

TEST_CASE("trivial case with zero g_bar") {
  SUBCASE("lambda1 above -delta picks t = 1") {
    HomogenizedMatrix F = assemble_f(Matrix::Constant(1, 1, 3.0), Vector::Zero(1), 1.0);
    const OhmSolution sol = leftmost_eigenpair(F);
    CHECK(sol.t == 1.0);
    CHECK(sol.s.norm() == 0.0);
    CHECK(sol.theta == doctest::Approx(1.0));
  }
  SUBCASE("lambda1 below -delta picks t = 0") {
    HomogenizedMatrix F = assemble_f(Matrix::Constant(1, 1, -3.0), Vector::Zero(1), 1.0);
    const OhmSolution sol = leftmost_eigenpair(F);
    CHECK(sol.t == 0.0);
    CHECK(std::abs(sol.s[0]) == doctest::Approx(1.0));
    CHECK(sol.theta == doctest::Approx(3.0));
  }
}

TEST_CASE("verify_optimality") {
  HomogenizedMatrix F =
      assemble_f(Matrix::Constant(1, 1, 2.0), Vector::Constant(1, 1.0), 0.1);
  OhmSolution sol = leftmost_eigenpair(F);

  OptimalityReport rep = verify_optimality(F, sol, 1e-10);
  CHECK(rep.pass);
  CHECK(rep.residual_stationarity <= 1e-12);
  CHECK(rep.residual_coupling <= 1e-12);
  CHECK(rep.psd_margin >= -1e-12);

  SUBCASE("perturbed vector fails loudly") {
    OhmSolution bad = sol;
    bad.s[0] += 0.05;
    OptimalityReport br = verify_optimality(F, bad, 1e-10);
    CHECK(br.residual_stationarity > 1e-3);
    CHECK_FALSE(br.pass);
  }
  SUBCASE("theta exceeds delta on random instances with g_bar != 0") {
    std::mt19937_64 rng(7);
    for (int rep_i = 0; rep_i < 50; ++rep_i) {
      const Eigen::Index n = 2 + Eigen::Index(rng() % 8);
      HomogenizedMatrix Fr = assemble_f(random_symmetric(rng, n),
                                        random_vector(rng, n), 1e-3);
      CHECK(leftmost_eigenpair(Fr).theta > Fr.delta);
    }
  }
}

TEST_CASE("bordered eigenvalue ordering against the Jacobi oracle") {
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<Eigen::Index> dims(2, 30);
  const double deltas[3] = {0.0, 1e-6, 1e-2};
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::Index n = dims(rng);
    const Matrix B = random_symmetric(rng, n);
    Vector g = random_vector(rng, n);
    if (g.norm() == 0.0) g[0] = 1.0;
    const double delta = deltas[rep % 3];
    HomogenizedMatrix F = assemble_f(B, g, delta);

    const auto spec_f = oracles::dense_spectrum(F.dense());
    const auto spec_b = oracles::dense_spectrum(B);
    CHECK(spec_f.values[0] < -delta);
    CHECK(spec_f.values[0] <= spec_b.values[0]);
    // Cauchy interlacing
    CHECK(spec_b.values[0] <= spec_f.values[1] + 1e-12);

    const OhmSolution sol = leftmost_eigenpair(F);
    CHECK(sol.norm_err <= 1e-10);
    const double tol = 1e-8 * (1.0 + sol.theta);
    CHECK(sol.residual_stationarity <= tol);
    CHECK(sol.residual_coupling <= tol);
    if (std::abs(sol.t) > 1e-10) {
      const double lhs = -g.dot(sol.s);
      CHECK((lhs >= 0.0 ? 1.0 : -1.0) == (sol.t >= 0.0 ? 1.0 : -1.0));
    }
  }
}

TEST_CASE("lanczos path matches the dense path") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<Eigen::Index> dims(3, 49);
  for (int rep = 0; rep < 25; ++rep) {
    const Eigen::Index n = dims(rng);
    const Matrix B = random_symmetric(rng, n - 1);
    const Vector g = random_vector(rng, n - 1);
    HomogenizedMatrix F = assemble_f(B, g, 1e-6);

    const OhmSolution dense = leftmost_eigenpair(F);
    const OhmSolution lz = leftmost_eigenpair_lanczos(F);
    CHECK(std::abs(lz.theta - dense.theta) <= 1e-8 * (1.0 + std::abs(dense.theta)));

    Vector yd(n), yl(n);
    yd << dense.s, dense.t;
    yl << lz.s, lz.t;
    const double cosang = std::min(1.0, std::abs(yd.dot(yl)));
    CHECK(std::acos(cosang) <= 1e-6);
  }
}

TEST_CASE("lanczos error path carries the best residual") {
  std::mt19937_64 rng(5);
  const Matrix B = random_symmetric(rng, 60);
  auto apply = [&B](const Vector& v) { return Vector(B * v); };
  // a 2-iteration cap cannot reach 1e-10
  CHECK_THROWS_AS(lanczos_smallest(apply, 60, B.cwiseAbs().rowwise().sum().maxCoeff(),
                                   1e-10, 2),
                  EigenSolveError);
  try {
    lanczos_smallest(apply, 60, B.cwiseAbs().rowwise().sum().maxCoeff(), 1e-10, 2);
  } catch (const EigenSolveError& e) {
    CHECK(e.best_residual() > 0.0);
  }
}

TEST_CASE("smallest_eigenvalue helper") {
  Matrix D = Matrix::Zero(3, 3);
  D(0, 0) = 3.0;
  D(1, 1) = 1.0;
  D(2, 2) = 2.0;
  CHECK(smallest_eigenvalue(D) == doctest::Approx(1.0));
}
