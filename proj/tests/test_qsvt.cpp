// Copyright 2026 The blockenc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "be/composites.hpp"
#include "be/errors.hpp"
#include "be/primitives.hpp"
#include "be/qsp.hpp"
#include "be/qsvt.hpp"
#include "dag_oracle.hpp"

namespace be {
namespace {

using C2 = Eigen::Matrix2cd;

double chebyshev_t(int d, double x) { return std::cos(d * std::acos(std::clamp(x, -1.0, 1.0))); }

double chebyshev_sum(const std::vector<double>& c, double x) {
  double s = 0;
  for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * chebyshev_t(static_cast<int>(k), x);
  return s;
}

// Top-left entry of e^{i phi_0 Z} prod_j W(x) e^{i phi_j Z}.
std::complex<double> product_oracle(const std::vector<double>& phases, double x) {
  const double s = std::sqrt(1 - x * x);
  C2 w;
  w << x, cplx(0, s), cplx(0, s), x;
  auto rz = [](double phi) {
    C2 r = C2::Zero();
    r(0, 0) = std::polar(1.0, phi);
    r(1, 1) = std::polar(1.0, -phi);
    return r;
  };
  C2 u = rz(phases[0]);
  for (std::size_t j = 1; j < phases.size(); ++j) u = u * w * rz(phases[j]);
  return u(0, 0);
}

std::vector<double> random_target(std::mt19937& rng, int degree, double bound) {
  std::normal_distribution<double> g;
  std::vector<double> c(degree + 1, 0.0);
  for (int k = degree % 2; k <= degree; k += 2) c[k] = g(rng) / (1 + k);
  if (c[degree] == 0) c[degree] = 0.1;
  double sup = 0;
  for (int m = 0; m <= 4000; ++m) sup = std::max(sup, std::abs(chebyshev_sum(c, -1 + m / 2000.0)));
  for (double& x : c) x *= bound / sup;
  return c;
}

Matrix svd_oracle(const Matrix& a, const std::vector<double>& cheb, bool odd) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Matrix& u = svd.matrixU();
  const Matrix& v = svd.matrixV();
  if (odd) {
    Matrix out = Matrix::Zero(a.rows(), a.cols());
    for (Eigen::Index k = 0; k < s.size(); ++k) out += chebyshev_sum(cheb, s[k]) * u.col(k) * v.col(k).adjoint();
    return out;
  }
  // Even polynomials act on the input space, including its kernel at p(0).
  Matrix out = chebyshev_sum(cheb, 0.0) * Matrix::Identity(a.cols(), a.cols());
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    out += (chebyshev_sum(cheb, s[k]) - chebyshev_sum(cheb, 0.0)) * v.col(k) * v.col(k).adjoint();
  }
  return out;
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

TEST(RealizedPoly, ZeroPhasesGiveChebyshev) {
  for (int d = 0; d <= 10; ++d) {
    const std::vector<double> zeros(d + 1, 0.0);
    for (int m = 0; m < 200; ++m) {
      const double x = -1 + 2.0 * m / 199;
      EXPECT_NEAR(realized_poly(zeros, x), chebyshev_t(d, x), 1e-12) << d << " " << x;
    }
  }
  EXPECT_EQ(realized_poly({0.0}, 0.3), 1.0);
}

TEST(RealizedPoly, MatchesProductOracle) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  std::vector<double> phases(7);
  for (double& p : phases) p = u(rng);
  for (int m = 0; m < 100; ++m) {
    const double x = -1 + 2.0 * m / 99;
    const cplx expected = product_oracle(phases, x);
    EXPECT_LE(std::abs(qsp_entry(phases, x) - expected), 1e-12);
    EXPECT_NEAR(realized_poly(phases, x), expected.real(), 1e-12);
  }
}

TEST(TargetPolynomial, Validation) {
  EXPECT_THROW(TargetPolynomial({0.5, 0.5}, Parity::Odd), DomainError);
  EXPECT_NO_THROW(TargetPolynomial({1e-13, 0.5}, Parity::Odd));
  const TargetPolynomial t = TargetPolynomial::from_chebyshev({0, 0, 0, 0.9, 0, 0});
  EXPECT_EQ(t.degree(), 3);
  EXPECT_EQ(t.parity(), Parity::Odd);
  EXPECT_NEAR(t(0.3), 0.9 * chebyshev_t(3, 0.3), 1e-15);
  EXPECT_NEAR(t.sup_norm(), 0.9, 1e-12);
}

TEST(SolvePhases, ChebyshevTargets) {
  const PhaseVector t3 = solve_phases(TargetPolynomial::from_chebyshev({0, 0, 0, 1}));
  EXPECT_LE(t3.residual, 1e-10);
  for (double p : t3.phases) EXPECT_NEAR(p, 0.0, 1e-10);

  const PhaseVector t1 = solve_phases(TargetPolynomial::from_chebyshev({0, 1}));
  EXPECT_EQ(t1.phases.size(), 2u);
  EXPECT_LE(t1.residual, 1e-12);

  const PhaseVector scaled = solve_phases(TargetPolynomial::from_chebyshev({0, 0, 0, 0.9}));
  for (int m = 0; m < 50; ++m) {
    const double x = -1 + 2.0 * m / 49;
    EXPECT_NEAR(product_oracle(scaled.phases, x).real(), 0.9 * chebyshev_t(3, x), 1e-7);
  }
}

TEST(SolvePhases, RandomTargets) {
  std::mt19937 rng(17);
  for (int degree = 1; degree <= 30; ++degree) {
    const std::vector<double> c = random_target(rng, degree, 0.9);
    const PhaseVector pv = solve_phases(TargetPolynomial::from_chebyshev(c));
    EXPECT_EQ(pv.degree(), degree);
    double worst = 0;
    for (int m = 0; m <= 300; ++m) {
      const double x = -1 + m / 150.0;
      worst = std::max(worst, std::abs(product_oracle(pv.phases, x).real() - chebyshev_sum(c, x)));
    }
    EXPECT_LE(worst, 1e-6) << "degree " << degree;
    EXPECT_LE(pv.residual, 1e-6);
  }
}

TEST(SolvePhases, Deterministic) {
  const TargetPolynomial t = TargetPolynomial::from_chebyshev({0, 0.3, 0, -0.4, 0, 0.2});
  EXPECT_EQ(solve_phases(t).phases, solve_phases(t).phases);
}

TEST(Qsvt, IdentityPolynomialGivesBlock) {
  testing::DagGenerator gen(2);
  for (int trial = 0; trial < 10; ++trial) {
    const testing::Sample s = gen.generate(1, 4, 4);
    const NodePtr q = qsvt(s.node, TargetPolynomial::from_chebyshev({0, 1}));
    EXPECT_LE(max_abs(toarray(q) * q->normalization() - s.oracle / s.gamma), 1e-10) << s.expr;
    EXPECT_TRUE(verify(q, 1e-9).pass) << s.expr;
  }
}

TEST(Qsvt, EvenTargetOnUnitary) {
  const NodePtr q = qsvt(increment(2), TargetPolynomial::from_chebyshev({0, 0, 1}));
  EXPECT_LE(max_abs(toarray(q) - Matrix::Identity(4, 4)), 1e-10);
  EXPECT_TRUE(verify(q).pass);
}

TEST(Qsvt, RandomBlocksAgainstSvd) {
  std::mt19937 rng(23);
  testing::DagGenerator gen(29);
  for (int trial = 0; trial < 12; ++trial) {
    const testing::Sample s = gen.generate(2, 4, 4);
    const bool odd = trial % 2 == 0;
    const std::vector<double> c = random_target(rng, odd ? 5 : 4, 0.95);
    const NodePtr q = qsvt(s.node, TargetPolynomial::from_chebyshev(c));
    const Matrix oracle = svd_oracle(s.oracle / s.gamma, c, odd);
    EXPECT_LE(max_abs(toarray(q) * q->normalization() - oracle), 1e-9) << s.expr;
    const double residual = qsvt_phases(*q).residual;
    const VerifyReport r = verify(q, std::max(10 * residual, 1e-9));
    EXPECT_TRUE(r.pass) << s.expr << " " << r.max_error;
  }
}

TEST(Qsvt, HalfT3) {
  testing::DagGenerator gen(31);
  const testing::Sample s = gen.generate(2, 4, 4);
  const std::vector<double> c{0, 0, 0, 0.5};
  const NodePtr q = qsvt(s.node, TargetPolynomial::from_chebyshev(c));
  EXPECT_LE(max_abs(toarray(q) * q->normalization() - svd_oracle(s.oracle / s.gamma, c, true)), 1e-9);
  EXPECT_LE(verify(q).max_error, 1e-7);
}

TEST(Qsvt, RectangularBlocks) {
  testing::DagGenerator gen(37);
  for (int trial = 0; trial < 6; ++trial) {
    const testing::Sample s = gen.generate(1, 3, 5);
    const std::vector<double> c{0, 0.6, 0, -0.3};
    const NodePtr q = qsvt(s.node, TargetPolynomial::from_chebyshev(c));
    EXPECT_EQ(q->dim_out(), 5u);
    EXPECT_EQ(q->dim_in(), 3u);
    EXPECT_LE(max_abs(toarray(q) * q->normalization() - svd_oracle(s.oracle / s.gamma, c, true)), 1e-9);
    EXPECT_TRUE(verify(q, 1e-9).pass);
  }
}

TEST(InversePolynomial, MeetsTolerance) {
  for (double delta : {0.5, 0.2, 0.05}) {
    const InverseApproximation approx = inverse_polynomial(delta, 0.01, 1 / delta);
    EXPECT_EQ(approx.polynomial.parity(), Parity::Odd);
    EXPECT_LE(approx.relative_error, 0.005);
    EXPECT_LE(approx.polynomial.sup_norm(), 1.0);
    for (int m = 0; m <= 50; ++m) {
      const double x = delta + (1 - delta) * m / 50.0;
      EXPECT_NEAR(approx.polynomial(x), approx.scale * delta / (2 * x), 0.006 * approx.scale * delta / (2 * x));
    }
  }
}

void check_pseudoinverse(const NodePtr& a, double condition, double eps) {
  const Matrix m = toarray(a);
  const NodePtr p = pseudoinverse(a, condition, eps);
  const Matrix x = toarray(p);
  const Matrix pinv = m.completeOrthogonalDecomposition().pseudoInverse();
  const double na = testing::spectral(m), nx = testing::spectral(x);
  EXPECT_LE(testing::spectral(x - pinv), eps * testing::spectral(pinv));
  EXPECT_LE(testing::spectral(m * x * m - m), 3 * eps * na);
  EXPECT_LE(testing::spectral(x * m * x - x), 3 * eps * nx);
  EXPECT_GE(p->normalization() * (1 + 1e-9), nx);
}

TEST(Pseudoinverse, Identity) {
  const NodePtr p = pseudoinverse(identity(4), 1, 0.01);
  EXPECT_LE(testing::spectral(toarray(p) - Matrix::Identity(4, 4)), 0.01);
  check_pseudoinverse(identity(4), 1, 0.01);
}

TEST(Pseudoinverse, Diagonal) {
  const NodePtr d = identity(1) | scale(0.5, identity(1));
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 1;
  expected(1, 1) = 2;
  const NodePtr p = pseudoinverse(d, 2, 0.01);
  EXPECT_LE(testing::spectral(toarray(p) - expected), 0.01 * 2);
  EXPECT_NEAR(p->normalization(), 2 / 0.5, 0.5);
  check_pseudoinverse(d, 2, 0.01);
  EXPECT_TRUE(verify(p, 1e-8).pass);
}

TEST(Pseudoinverse, RandomMatrices) {
  testing::DagGenerator gen(41);
  int checked = 0;
  for (int trial = 0; trial < 40 && checked < 6; ++trial) {
    const testing::Sample s = gen.generate(1, 3, 3);
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(s.oracle).singularValues();
    double smallest = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
      if (sv[k] > 1e-12 * sv[0]) smallest = sv[k];
    }
    const double kappa = s.gamma / smallest;
    if (kappa > 8) continue;
    ++checked;
    check_pseudoinverse(s.node, kappa, 0.01);
  }
  EXPECT_GE(checked, 3);
}

TEST(Pseudoinverse, Errors) {
  EXPECT_THROW(pseudoinverse(identity(2), 1, 0.0), DomainError);
  const Budget saved = budget();
  set_budget({20, 2});
  EXPECT_THROW(pseudoinverse(increment(3), 1, 0.01), ConfigError);
  EXPECT_NO_THROW(pseudoinverse(increment(3), 1, 0.01, 1.0));
  set_budget(saved);
}

}  // namespace
}  // namespace be
