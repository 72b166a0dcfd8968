#include "sobasip/problems.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace sobasip {
namespace problems {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

struct Entry {
  Eigen::Index default_dim;
  bool scalable;
  Eigen::Index min_dim;
  ProblemFamily family;
  ProblemSpec (*make)(Eigen::Index n);
};

ProblemSpec base_spec(const std::string& name, Bounds bounds, Vector start,
                      ProblemFamily family) {
  ProblemSpec s;
  s.name = name;
  s.dim = start.size();
  s.bounds = std::move(bounds);
  s.start = std::move(start);
  s.family = family;
  return s;
}

// ---------------------------------------------------------------------------
// bdexp: banded exponential chain, terms (x_i + x_{i+1}) exp(-(x_i + x_{i+1}) x_{i+2})

ProblemSpec make_bdexp(Eigen::Index n) {
  ProblemSpec s = base_spec("bdexp", Bounds::box(n, 0.0, kInf),
                            Vector::Constant(n, 0.25), ProblemFamily::cute_misc);
  return s;
}

void bdexp_oracles(Eigen::Index n, BoxProblem& p) {
  p.value = [n](const Vector& x) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i + 2 < n; ++i) {
      const double a = x[i] + x[i + 1];
      sum += a * std::exp(-a * x[i + 2]);
    }
    return sum;
  };
  p.gradient = [n](const Vector& x) {
    Vector g = Vector::Zero(n);
    for (Eigen::Index i = 0; i + 2 < n; ++i) {
      const double a = x[i] + x[i + 1], b = x[i + 2];
      const double e = std::exp(-a * b);
      const double da = e * (1.0 - a * b);
      g[i] += da;
      g[i + 1] += da;
      g[i + 2] += -a * a * e;
    }
    return g;
  };
  p.hessian = [n](const Vector& x) {
    Matrix H = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i + 2 < n; ++i) {
      const double a = x[i] + x[i + 1], b = x[i + 2];
      const double e = std::exp(-a * b);
      const double daa = -b * e * (2.0 - a * b);
      const double dab = -a * e * (2.0 - a * b);
      const double dbb = a * a * a * e;
      for (Eigen::Index pp : {i, i + 1}) {
        for (Eigen::Index q : {i, i + 1}) H(pp, q) += daa;
        H(pp, i + 2) += dab;
        H(i + 2, pp) += dab;
      }
      H(i + 2, i + 2) += dbb;
    }
    return H;
  };
}

// ---------------------------------------------------------------------------
// camel6: six-hump camel on [-3,3] x [-1.5,1.5]

ProblemSpec make_camel6(Eigen::Index) {
  Bounds b;
  b.lower = Vector{{-3.0, -1.5}};
  b.upper = Vector{{3.0, 1.5}};
  ProblemSpec s = base_spec("camel6", std::move(b), Vector{{1.1, 1.1}},
                            ProblemFamily::cute_misc);
  ReferenceSolution ref;
  ref.x = Vector{{-0.089842013100318072, 0.71265640302073963}};
  ref.f = -1.0316284534898776;
  ref.note = "polished stationary point; the mirrored point (-x) is the twin global minimum";
  s.reference = ref;
  return s;
}

void camel6_oracles(Eigen::Index, BoxProblem& p) {
  p.value = [](const Vector& x) {
    const double a = x[0], b = x[1];
    return 4 * a * a - 2.1 * std::pow(a, 4) + std::pow(a, 6) / 3.0 + a * b -
           4 * b * b + 4 * std::pow(b, 4);
  };
  p.gradient = [](const Vector& x) {
    const double a = x[0], b = x[1];
    return Vector{{8 * a - 8.4 * a * a * a + 2 * std::pow(a, 5) + b,
                   a - 8 * b + 16 * b * b * b}};
  };
  p.hessian = [](const Vector& x) {
    const double a = x[0], b = x[1];
    Matrix H(2, 2);
    H << 8 - 25.2 * a * a + 10 * std::pow(a, 4), 1.0, 1.0, -8 + 48 * b * b;
    return H;
  };
}

// ---------------------------------------------------------------------------
// hatflda: (x1-1)^2 + sum (x_{i-1} - sqrt(x_i))^2, x >= 1e-7

ProblemSpec make_hatflda(Eigen::Index) {
  const Eigen::Index n = 4;
  ProblemSpec s = base_spec("hatflda", Bounds::box(n, 1e-7, kInf),
                            Vector::Constant(n, 0.1), ProblemFamily::cute_misc);
  ReferenceSolution ref;
  ref.x = Vector::Ones(n);
  ref.f = 0.0;
  ref.note = "all residuals vanish at the all-ones point";
  s.reference = ref;
  return s;
}

void hatflda_oracles(Eigen::Index n, BoxProblem& p) {
  p.value = [n](const Vector& x) {
    double sum = (x[0] - 1.0) * (x[0] - 1.0);
    for (Eigen::Index i = 1; i < n; ++i) {
      const double r = x[i - 1] - std::sqrt(x[i]);
      sum += r * r;
    }
    return sum;
  };
  p.gradient = [n](const Vector& x) {
    Vector g = Vector::Zero(n);
    g[0] = 2.0 * (x[0] - 1.0);
    for (Eigen::Index i = 1; i < n; ++i) {
      const double sq = std::sqrt(x[i]);
      const double r = x[i - 1] - sq;
      g[i - 1] += 2.0 * r;
      g[i] += -r / sq;
    }
    return g;
  };
  p.hessian = [n](const Vector& x) {
    Matrix H = Matrix::Zero(n, n);
    H(0, 0) = 2.0;
    for (Eigen::Index i = 1; i < n; ++i) {
      const double sq = std::sqrt(x[i]);
      const double r = x[i - 1] - sq;
      const double dri = -0.5 / sq;
      H(i - 1, i - 1) += 2.0;
      H(i - 1, i) += 2.0 * dri;
      H(i, i - 1) += 2.0 * dri;
      H(i, i) += 2.0 * dri * dri + 0.5 * r / (x[i] * sq);
    }
    return H;
  };
}

// ---------------------------------------------------------------------------
// hatfldc: (x1-1)^2 + sum_{i=2}^{n-1} (x_{i+1} - x_i^2)^2 + (x_n-1)^2 on [0,10]

ProblemSpec make_hatfldc(Eigen::Index n) {
  ProblemSpec s = base_spec("hatfldc", Bounds::box(n, 0.0, 10.0),
                            Vector::Constant(n, 0.9), ProblemFamily::cute_misc);
  ReferenceSolution ref;
  ref.x = Vector::Ones(n);
  ref.f = 0.0;
  ref.note = "all residuals vanish at the all-ones point";
  s.reference = ref;
  return s;
}

void hatfldc_oracles(Eigen::Index n, BoxProblem& p) {
  p.value = [n](const Vector& x) {
    double sum = (x[0] - 1.0) * (x[0] - 1.0);
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
      const double r = x[i + 1] - x[i] * x[i];
      sum += r * r;
    }
    sum += (x[n - 1] - 1.0) * (x[n - 1] - 1.0);
    return sum;
  };
  p.gradient = [n](const Vector& x) {
    Vector g = Vector::Zero(n);
    g[0] += 2.0 * (x[0] - 1.0);
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
      const double r = x[i + 1] - x[i] * x[i];
      g[i + 1] += 2.0 * r;
      g[i] += -4.0 * x[i] * r;
    }
    g[n - 1] += 2.0 * (x[n - 1] - 1.0);
    return g;
  };
  p.hessian = [n](const Vector& x) {
    Matrix H = Matrix::Zero(n, n);
    H(0, 0) += 2.0;
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
      const double r = x[i + 1] - x[i] * x[i];
      H(i + 1, i + 1) += 2.0;
      H(i + 1, i) += -4.0 * x[i];
      H(i, i + 1) += -4.0 * x[i];
      H(i, i) += -4.0 * r + 8.0 * x[i] * x[i];
    }
    H(n - 1, n - 1) += 2.0;
    return H;
  };
}

// ---------------------------------------------------------------------------
// hs3mod: x2 + (x2 - x1)^2, x2 >= 0

ProblemSpec make_hs3mod(Eigen::Index) {
  Bounds b;
  b.lower = Vector{{-kInf, 0.0}};
  b.upper = Vector{{kInf, kInf}};
  return base_spec("hs3mod", std::move(b), Vector{{10.0, 1.0}},
                   ProblemFamily::hock_schittkowski);
}

void hs3mod_oracles(Eigen::Index, BoxProblem& p) {
  p.value = [](const Vector& x) {
    const double r = x[1] - x[0];
    return x[1] + r * r;
  };
  p.gradient = [](const Vector& x) {
    const double r = x[1] - x[0];
    return Vector{{-2.0 * r, 1.0 + 2.0 * r}};
  };
  p.hessian = [](const Vector&) {
    Matrix H(2, 2);
    H << 2.0, -2.0, -2.0, 2.0;
    return H;
  };
}

// ---------------------------------------------------------------------------
// hs05: sin(x1+x2) + (x1-x2)^2 - 1.5 x1 + 2.5 x2 + 1

ProblemSpec make_hs05(Eigen::Index) {
  Bounds b;
  b.lower = Vector{{-1.5, -3.0}};
  b.upper = Vector{{4.0, 3.0}};
  ProblemSpec s = base_spec("hs05", std::move(b), Vector{{0.0, 0.0}},
                            ProblemFamily::hock_schittkowski);
  ReferenceSolution ref;
  ref.x = Vector{{0.5 - kPi / 3.0, -0.5 - kPi / 3.0}};
  ref.f = -std::sqrt(3.0) / 2.0 - kPi / 3.0;
  ref.note = "closed form: x1 - x2 = 1, x1 + x2 = -2*pi/3";
  s.reference = ref;
  return s;
}

void hs05_oracles(Eigen::Index, BoxProblem& p) {
  p.value = [](const Vector& x) {
    const double d = x[0] - x[1];
    return std::sin(x[0] + x[1]) + d * d - 1.5 * x[0] + 2.5 * x[1] + 1.0;
  };
  p.gradient = [](const Vector& x) {
    const double c = std::cos(x[0] + x[1]);
    const double d = x[0] - x[1];
    return Vector{{c + 2.0 * d - 1.5, c - 2.0 * d + 2.5}};
  };
  p.hessian = [](const Vector& x) {
    const double s = -std::sin(x[0] + x[1]);
    Matrix H(2, 2);
    H << s + 2.0, s - 2.0, s - 2.0, s + 2.0;
    return H;
  };
}

// ---------------------------------------------------------------------------
// hs25: sum of 99 exponential-fit residuals over [0.1,100]x[0,25.6]x[0,5].
// The catalog start (100, 12.5, 3) lies in a region where the objective is
// numerically flat (gradient ~1e-9), so the registry starts from the box
// midpoint instead.

struct Hs25Terms {
  Vector u;
  Hs25Terms() : u(99) {
    for (int i = 1; i <= 99; ++i)
      u[i - 1] = 25.0 + std::pow(-50.0 * std::log(0.01 * i), 2.0 / 3.0);
  }
};

const Hs25Terms& hs25_terms() {
  static const Hs25Terms t;
  return t;
}

ProblemSpec make_hs25(Eigen::Index) {
  Bounds b;
  b.lower = Vector{{0.1, 0.0, 0.0}};
  b.upper = Vector{{100.0, 25.6, 5.0}};
  ProblemSpec s = base_spec("hs25", std::move(b), Vector{{50.05, 12.8, 2.5}},
                            ProblemFamily::hock_schittkowski);
  ReferenceSolution ref;
  ref.x = Vector{{50.0, 25.0, 1.5}};
  ref.f = 0.0;
  ref.note = "every residual vanishes at (50, 25, 1.5)";
  s.reference = ref;
  return s;
}

void hs25_oracles(Eigen::Index, BoxProblem& p) {
  p.value = [](const Vector& x) {
    const Vector& u = hs25_terms().u;
    double sum = 0.0;
    for (int i = 0; i < 99; ++i) {
      const double a = u[i] - x[1];
      const double r = -0.01 * (i + 1) + std::exp(-std::pow(a, x[2]) / x[0]);
      sum += r * r;
    }
    return sum;
  };
  p.gradient = [](const Vector& x) {
    const Vector& u = hs25_terms().u;
    Vector g = Vector::Zero(3);
    for (int i = 0; i < 99; ++i) {
      const double a = u[i] - x[1];
      const double t = std::pow(a, x[2]);
      const double e = std::exp(-t / x[0]);
      const double r = -0.01 * (i + 1) + e;
      g[0] += 2.0 * r * e * t / (x[0] * x[0]);
      g[1] += 2.0 * r * e * x[2] * std::pow(a, x[2] - 1.0) / x[0];
      g[2] += 2.0 * r * (-e * t * std::log(a) / x[0]);
    }
    return g;
  };
  p.hessian = [](const Vector& x) {
    const Vector& u = hs25_terms().u;
    Matrix H = Matrix::Zero(3, 3);
    for (int i = 0; i < 99; ++i) {
      const double a = u[i] - x[1];
      const double la = std::log(a);
      const double t = std::pow(a, x[2]);
      const double e = std::exp(-t / x[0]);
      const double r = -0.01 * (i + 1) + e;
      // phi = -t/x1; residual = const + exp(phi)
      const double p1 = t / (x[0] * x[0]);
      const double p2 = x[2] * std::pow(a, x[2] - 1.0) / x[0];
      const double p3 = -t * la / x[0];
      const double p11 = -2.0 * t / (x[0] * x[0] * x[0]);
      const double p12 = -x[2] * std::pow(a, x[2] - 1.0) / (x[0] * x[0]);
      const double p13 = t * la / (x[0] * x[0]);
      const double p22 = -x[2] * (x[2] - 1.0) * std::pow(a, x[2] - 2.0) / x[0];
      const double p23 = std::pow(a, x[2] - 1.0) * (1.0 + x[2] * la) / x[0];
      const double p33 = -t * la * la / x[0];
      const double P[3] = {p1, p2, p3};
      const double PP[3][3] = {{p11, p12, p13}, {p12, p22, p23}, {p13, p23, p33}};
      for (int a_i = 0; a_i < 3; ++a_i)
        for (int b_i = 0; b_i < 3; ++b_i)
          H(a_i, b_i) += 2.0 * ((e * P[a_i]) * (e * P[b_i]) +
                                r * e * (P[a_i] * P[b_i] + PP[a_i][b_i]));
    }
    return H;
  };
}

// ---------------------------------------------------------------------------
// hs38: Colville quartic on [-10, 10]^4

ProblemSpec make_hs38(Eigen::Index) {
  const Eigen::Index n = 4;
  ProblemSpec s = base_spec("hs38", Bounds::box(n, -10.0, 10.0),
                            Vector{{-3.0, -1.0, -3.0, -1.0}},
                            ProblemFamily::hock_schittkowski);
  ReferenceSolution ref;
  ref.x = Vector::Ones(n);
  ref.f = 0.0;
  ref.note = "unique global minimum at the all-ones point";
  s.reference = ref;
  return s;
}

void hs38_oracles(Eigen::Index, BoxProblem& p) {
  p.value = [](const Vector& x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2) +
           90.0 * std::pow(x[3] - x[2] * x[2], 2) + std::pow(1.0 - x[2], 2) +
           10.1 * (std::pow(x[1] - 1.0, 2) + std::pow(x[3] - 1.0, 2)) +
           19.8 * (x[1] - 1.0) * (x[3] - 1.0);
  };
  p.gradient = [](const Vector& x) {
    return Vector{{-400.0 * x[0] * (x[1] - x[0] * x[0]) - 2.0 * (1.0 - x[0]),
                   200.0 * (x[1] - x[0] * x[0]) + 20.2 * (x[1] - 1.0) + 19.8 * (x[3] - 1.0),
                   -360.0 * x[2] * (x[3] - x[2] * x[2]) - 2.0 * (1.0 - x[2]),
                   180.0 * (x[3] - x[2] * x[2]) + 20.2 * (x[3] - 1.0) + 19.8 * (x[1] - 1.0)}};
  };
  p.hessian = [](const Vector& x) {
    Matrix H = Matrix::Zero(4, 4);
    H(0, 0) = -400.0 * x[1] + 1200.0 * x[0] * x[0] + 2.0;
    H(0, 1) = H(1, 0) = -400.0 * x[0];
    H(1, 1) = 220.2;
    H(1, 3) = H(3, 1) = 19.8;
    H(2, 2) = -360.0 * x[3] + 1080.0 * x[2] * x[2] + 2.0;
    H(2, 3) = H(3, 2) = -360.0 * x[2];
    H(3, 3) = 200.2;
    return H;
  };
}

// ---------------------------------------------------------------------------
// mccormck: chained McCormick on [-1.5, 3]^n

ProblemSpec make_mccormck(Eigen::Index n) {
  return base_spec("mccormck", Bounds::box(n, -1.5, 3.0), Vector::Ones(n),
                   ProblemFamily::cute_misc);
}

void mccormck_oracles(Eigen::Index n, BoxProblem& p) {
  p.value = [n](const Vector& x) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      const double d = x[i] - x[i + 1];
      sum += -1.5 * x[i] + 2.5 * x[i + 1] + 1.0 + d * d + std::sin(x[i] + x[i + 1]);
    }
    return sum;
  };
  p.gradient = [n](const Vector& x) {
    Vector g = Vector::Zero(n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      const double c = std::cos(x[i] + x[i + 1]);
      const double d = 2.0 * (x[i] - x[i + 1]);
      g[i] += -1.5 + d + c;
      g[i + 1] += 2.5 - d + c;
    }
    return g;
  };
  p.hessian = [n](const Vector& x) {
    Matrix H = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      const double s = -std::sin(x[i] + x[i + 1]);
      H(i, i) += 2.0 + s;
      H(i + 1, i + 1) += 2.0 + s;
      H(i, i + 1) += -2.0 + s;
      H(i + 1, i) += -2.0 + s;
    }
    return H;
  };
}

// ---------------------------------------------------------------------------
// nonscomp: (x1-1)^2 + sum 4 (x_i - x_{i-1}^2)^2 on [0, 100]^n

ProblemSpec make_nonscomp(Eigen::Index n) {
  ProblemSpec s = base_spec("nonscomp", Bounds::box(n, 0.0, 100.0),
                            Vector::Constant(n, 3.0), ProblemFamily::cute_misc);
  ReferenceSolution ref;
  ref.x = Vector::Ones(n);
  ref.f = 0.0;
  ref.note = "all residuals vanish at the all-ones point";
  s.reference = ref;
  return s;
}

void nonscomp_oracles(Eigen::Index n, BoxProblem& p) {
  p.value = [n](const Vector& x) {
    double sum = (x[0] - 1.0) * (x[0] - 1.0);
    for (Eigen::Index i = 1; i < n; ++i) {
      const double r = x[i] - x[i - 1] * x[i - 1];
      sum += 4.0 * r * r;
    }
    return sum;
  };
  p.gradient = [n](const Vector& x) {
    Vector g = Vector::Zero(n);
    g[0] = 2.0 * (x[0] - 1.0);
    for (Eigen::Index i = 1; i < n; ++i) {
      const double r = x[i] - x[i - 1] * x[i - 1];
      g[i] += 8.0 * r;
      g[i - 1] += -16.0 * x[i - 1] * r;
    }
    return g;
  };
  p.hessian = [n](const Vector& x) {
    Matrix H = Matrix::Zero(n, n);
    H(0, 0) = 2.0;
    for (Eigen::Index i = 1; i < n; ++i) {
      const double r = x[i] - x[i - 1] * x[i - 1];
      H(i, i) += 8.0;
      H(i, i - 1) += -16.0 * x[i - 1];
      H(i - 1, i) += -16.0 * x[i - 1];
      H(i - 1, i - 1) += -16.0 * r + 32.0 * x[i - 1] * x[i - 1];
    }
    return H;
  };
}

// ---------------------------------------------------------------------------
// simbqp: separable bound QP whose minimizer sits on the box corner (1, 0)

ProblemSpec make_simbqp(Eigen::Index) {
  return base_spec("simbqp", Bounds::box(2, 0.0, 1.0), Vector{{0.5, 0.5}},
                   ProblemFamily::cute_misc);
}

void simbqp_oracles(Eigen::Index, BoxProblem& p) {
  p.value = [](const Vector& x) {
    return 0.5 * (std::pow(x[0] - 2.0, 2) + std::pow(x[1] + 1.0, 2));
  };
  p.gradient = [](const Vector& x) { return Vector{{x[0] - 2.0, x[1] + 1.0}}; };
  p.hessian = [](const Vector&) { return Matrix(Matrix::Identity(2, 2)); };
}

// ---------------------------------------------------------------------------
// synthetics

ProblemSpec make_synthetic_qp1(Eigen::Index) {
  ProblemSpec s = base_spec("synthetic_qp1", Bounds::box(3, 0.0, 1.0),
                            Vector::Constant(3, 0.9), ProblemFamily::synthetic);
  ReferenceSolution ref;
  ref.x = Vector{{0.25, 0.5, 0.75}};
  ref.f = 0.0;
  ref.note = "interior quadratic: minimizer is the center point c";
  s.reference = ref;
  return s;
}

void synthetic_qp1_oracles(Eigen::Index, BoxProblem& p) {
  const Vector c{{0.25, 0.5, 0.75}};
  p.value = [c](const Vector& x) { return 0.5 * (x - c).squaredNorm(); };
  p.gradient = [c](const Vector& x) { return Vector(x - c); };
  p.hessian = [](const Vector&) { return Matrix(Matrix::Identity(3, 3)); };
}

ProblemSpec make_synthetic_linbox(Eigen::Index) {
  return base_spec("synthetic_linbox", Bounds::box(2, 0.0, 1.0),
                   Vector::Constant(2, 0.5), ProblemFamily::synthetic);
}

void synthetic_linbox_oracles(Eigen::Index, BoxProblem& p) {
  const Vector c{{1.0, 2.0}};
  p.value = [c](const Vector& x) { return c.dot(x); };
  p.gradient = [c](const Vector&) { return c; };
  p.hessian = [](const Vector&) { return Matrix(Matrix::Zero(2, 2)); };
}

ProblemSpec make_synthetic_saddle(Eigen::Index) {
  ProblemSpec s = base_spec("synthetic_saddle", Bounds::box(2, -2.0, 2.0),
                            Vector{{0.5, 0.0}}, ProblemFamily::synthetic);
  ReferenceSolution ref;
  ref.x = Vector{{0.0, 1.0}};
  ref.f = -0.25;
  ref.note = "indefinite at the origin; (0, -1) is the symmetric twin minimum";
  s.reference = ref;
  return s;
}

void synthetic_saddle_oracles(Eigen::Index, BoxProblem& p) {
  p.value = [](const Vector& x) {
    return 0.5 * x[0] * x[0] - 0.5 * x[1] * x[1] + 0.25 * std::pow(x[1], 4);
  };
  p.gradient = [](const Vector& x) {
    return Vector{{x[0], -x[1] + x[1] * x[1] * x[1]}};
  };
  p.hessian = [](const Vector& x) {
    Matrix H = Matrix::Zero(2, 2);
    H(0, 0) = 1.0;
    H(1, 1) = -1.0 + 3.0 * x[1] * x[1];
    return H;
  };
}

// ---------------------------------------------------------------------------

void attach_oracles(const std::string& name, Eigen::Index n, BoxProblem& p) {
  if (name == "bdexp") bdexp_oracles(n, p);
  else if (name == "camel6") camel6_oracles(n, p);
  else if (name == "hatflda") hatflda_oracles(n, p);
  else if (name == "hatfldc") hatfldc_oracles(n, p);
  else if (name == "hs3mod") hs3mod_oracles(n, p);
  else if (name == "hs05") hs05_oracles(n, p);
  else if (name == "hs25") hs25_oracles(n, p);
  else if (name == "hs38") hs38_oracles(n, p);
  else if (name == "mccormck") mccormck_oracles(n, p);
  else if (name == "nonscomp") nonscomp_oracles(n, p);
  else if (name == "simbqp") simbqp_oracles(n, p);
  else if (name == "synthetic_qp1") synthetic_qp1_oracles(n, p);
  else if (name == "synthetic_linbox") synthetic_linbox_oracles(n, p);
  else if (name == "synthetic_saddle") synthetic_saddle_oracles(n, p);
  else throw std::invalid_argument("unknown problem: " + name);
}

// Registry order follows the result-table convention for shared names,
// synthetics last.
const std::vector<std::pair<std::string, Entry>>& registry() {
  static const std::vector<std::pair<std::string, Entry>> reg = {
      {"bdexp", {100, true, 3, ProblemFamily::cute_misc, make_bdexp}},
      {"camel6", {2, false, 2, ProblemFamily::cute_misc, make_camel6}},
      {"hatflda", {4, false, 4, ProblemFamily::cute_misc, make_hatflda}},
      {"hatfldc", {25, true, 3, ProblemFamily::cute_misc, make_hatfldc}},
      {"hs3mod", {2, false, 2, ProblemFamily::hock_schittkowski, make_hs3mod}},
      {"hs05", {2, false, 2, ProblemFamily::hock_schittkowski, make_hs05}},
      {"hs25", {3, false, 3, ProblemFamily::hock_schittkowski, make_hs25}},
      {"hs38", {4, false, 4, ProblemFamily::hock_schittkowski, make_hs38}},
      {"mccormck", {10, true, 2, ProblemFamily::cute_misc, make_mccormck}},
      {"nonscomp", {25, true, 2, ProblemFamily::cute_misc, make_nonscomp}},
      {"simbqp", {2, false, 2, ProblemFamily::cute_misc, make_simbqp}},
      {"synthetic_qp1", {3, false, 3, ProblemFamily::synthetic, make_synthetic_qp1}},
      {"synthetic_linbox", {2, false, 2, ProblemFamily::synthetic, make_synthetic_linbox}},
      {"synthetic_saddle", {2, false, 2, ProblemFamily::synthetic, make_synthetic_saddle}},
  };
  return reg;
}

const Entry& find_entry(const std::string& name) {
  for (const auto& [key, entry] : registry())
    if (key == name) return entry;
  throw std::invalid_argument("unknown problem: " + name);
}

}  // namespace

std::vector<std::string> list() {
  std::vector<std::string> names;
  names.reserve(registry().size());
  for (const auto& [key, entry] : registry()) names.push_back(key);
  return names;
}

bool is_scalable(const std::string& name) { return find_entry(name).scalable; }

ProblemSpec get_spec(const std::string& name, std::optional<Eigen::Index> n) {
  const Entry& e = find_entry(name);
  Eigen::Index dim = e.default_dim;
  if (n) {
    if (!e.scalable && *n != e.default_dim)
      throw std::invalid_argument(name + " is not scalable");
    if (*n < e.min_dim)
      throw std::invalid_argument(name + ": n must be at least " + std::to_string(e.min_dim));
    dim = *n;
  }
  return e.make(dim);
}

BoxProblem get(const std::string& name, std::optional<Eigen::Index> n) {
  ProblemSpec spec = get_spec(name, n);
  BoxProblem p;
  p.dim = spec.dim;
  p.bounds = spec.bounds;
  p.start = repair_start(spec.start, spec.bounds);
  attach_oracles(name, spec.dim, p);
  p.validate();
  return p;
}

BoxProblem load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open problem file: " + path);
  std::string name, objective;
  Eigen::Index n = -1;
  std::map<std::string, std::vector<double>> vecs;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "name") {
      ls >> name;
    } else if (key == "n") {
      ls >> n;
    } else if (key == "objective") {
      ls >> objective;
    } else if (key == "l" || key == "u" || key == "x0") {
      std::vector<double> vals;
      std::string tok;
      while (ls >> tok) {
        if (tok == "inf" || tok == "+inf") vals.push_back(kInf);
        else if (tok == "-inf") vals.push_back(-kInf);
        else vals.push_back(std::stod(tok));
      }
      vecs[key] = vals;
    } else {
      throw std::invalid_argument("problem file: unknown key '" + key + "'");
    }
  }
  if (objective.empty()) throw std::invalid_argument("problem file: missing objective");
  if (n <= 0) throw std::invalid_argument("problem file: missing or invalid n");

  auto expand = [n](const std::vector<double>& vals, const char* what) {
    if (vals.size() == 1) return Vector::Constant(n, vals[0]).eval();
    if (Eigen::Index(vals.size()) != n)
      throw std::invalid_argument(std::string("problem file: ") + what +
                                  " needs 1 or n values");
    return Eigen::Map<const Vector>(vals.data(), n).eval();
  };

  ProblemSpec base = get_spec(objective, is_scalable(objective)
                                              ? std::optional<Eigen::Index>(n)
                                              : std::nullopt);
  if (base.dim != n)
    throw std::invalid_argument("problem file: n does not match objective dimension");

  BoxProblem p;
  p.dim = n;
  p.bounds.lower = vecs.count("l") ? expand(vecs["l"], "l") : base.bounds.lower;
  p.bounds.upper = vecs.count("u") ? expand(vecs["u"], "u") : base.bounds.upper;
  p.bounds.validate();
  Vector start = vecs.count("x0") ? expand(vecs["x0"], "x0") : base.start;
  p.start = repair_start(start, p.bounds);
  attach_oracles(objective, n, p);
  p.validate();
  return p;
}

}  // namespace problems
}  // namespace sobasip
