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

#include "be/composites.hpp"
#include "be/demos.hpp"
#include "be/errors.hpp"
#include "be/primitives.hpp"
#include "dag_oracle.hpp"

namespace be {
namespace {

using testing::DagGenerator;
using testing::kron;
using testing::Sample;
using testing::shift_matrix;
using testing::spectral;

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Matrix pauli_x() {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

TEST(Adjoint, Examples) {
  const NodePtr id = identity(4);
  EXPECT_EQ(adjoint(id), id);
  const NodePtr inc = increment(2);
  EXPECT_LE(max_abs(toarray(adjoint(inc)) - shift_matrix(2, 1).transpose()), 0.0);
  EXPECT_EQ(adjoint(adjoint(inc)), inc);
  EXPECT_EQ(adjoint(inc)->normalization(), 1.0);
  EXPECT_TRUE(verify(adjoint(inc)).pass);

  DagGenerator gen(1);
  for (int trial = 0; trial < 30; ++trial) {
    const Sample s = gen.generate(2);
    const NodePtr a = adjoint(s.node);
    EXPECT_LE(max_abs(toarray(a) - s.oracle.adjoint()), 1e-10) << s.expr;
    EXPECT_EQ(a->normalization(), s.node->normalization());
    EXPECT_TRUE(a->subspace_in() == s.node->subspace_out());
  }
}

TEST(Scale, Examples) {
  const NodePtr inc = increment(2);
  EXPECT_EQ(scale(1.0, inc), inc);
  const NodePtr i2 = scale(cplx(0, 1), identity(2));
  EXPECT_LE(max_abs(toarray(i2) - cplx(0, 1) * Matrix::Identity(2, 2)), 1e-15);
  EXPECT_EQ(i2->normalization(), 1.0);
  EXPECT_NEAR(info_efficiency(*i2), 1.0, 1e-12);
  EXPECT_TRUE(verify(i2).pass);

  EXPECT_EQ(laplace_matrix(3)->normalization() / 4.0, 8.0);

  const NodePtr z = scale(0.0, inc);
  EXPECT_EQ(z->op(), "zero");
  EXPECT_EQ(z->normalization(), 1.0);
  EXPECT_LE(max_abs(toarray(z)), 0.0);
  EXPECT_TRUE(verify(z).pass);

  DagGenerator gen(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Sample s = gen.generate(1);
    const cplx c(-0.7, 1.3);
    const NodePtr n = c * s.node;
    EXPECT_NEAR(n->normalization(), std::abs(c) * s.node->normalization(), 1e-15);
    EXPECT_NEAR(info_efficiency(*n), info_efficiency(*s.node), 1e-12);
    EXPECT_TRUE(verify(n).pass);
  }
}

TEST(Product, Examples) {
  DagGenerator gen(3);
  const Sample s = gen.generate(1, 4, std::nullopt);
  EXPECT_LE(max_abs(toarray(identity(s.node->dim_out()) * s.node) - s.oracle), 1e-12);
  EXPECT_LE(max_abs(toarray(increment(2) * increment(2)) - shift_matrix(2, 2)), 0.0);
  EXPECT_THROW(product(increment(2), increment(3)), ShapeError);
}

TEST(Product, RandomPairs) {
  DagGenerator gen(4);
  int flagged = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t mid = 1 + trial % 7;
    const Sample b = gen.generate(1, std::nullopt, mid);
    const Sample a = gen.generate(1, mid, std::nullopt);
    const NodePtr p = product(a.node, b.node);
    if (!b.node->maps_in_to_out() && !a.node->maps_out_to_in()) ++flagged;
    EXPECT_LE(max_abs(toarray(p) - a.oracle * b.oracle), 1e-10) << a.expr << " @ " << b.expr;
    EXPECT_NEAR(p->normalization(), a.gamma * b.gamma, 1e-12 * a.gamma * b.gamma);
    const NodePtr forced = product(a.node, b.node, ProductCheck::Force);
    EXPECT_TRUE(verify(forced).pass) << a.expr << " @ " << b.expr;
    EXPECT_TRUE(verify(p).pass) << a.expr << " @ " << b.expr;
  }
  EXPECT_GT(flagged, 0);
}

TEST(Product, Associativity) {
  DagGenerator gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Sample c = gen.generate(1, std::nullopt, 4);
    const Sample b = gen.generate(1, 4, 3);
    const Sample a = gen.generate(1, 3, std::nullopt);
    EXPECT_LE(max_abs(toarray((a.node * b.node) * c.node) - toarray(a.node * (b.node * c.node))), 1e-9);
  }
}

TEST(Product, SkipIsRecorded) {
  const NodePtr keep = projection(Subspace::from_dim(4), 1, 4);
  ASSERT_FALSE(keep->maps_in_to_out());
  const NodePtr v = constant_vector(Vector::Ones(3));
  ASSERT_FALSE(v->maps_out_to_in());
  const NodePtr p = product(v, keep, ProductCheck::Skip);
  EXPECT_FALSE(resources(*p).assumptions.empty());
  const NodePtr certified = product(increment(2), increment(2), ProductCheck::Skip);
  EXPECT_TRUE(resources(*certified).assumptions.empty());
}

TEST(Product, MembershipCheckMatters) {
  // Projection keeps the first state; the intermediate check must filter the
  // other components of the middle register.
  const Subspace parent = Subspace::from_dim(4);
  const NodePtr keep = projection(parent, 1, 4);
  const NodePtr back = adjoint(keep);
  const NodePtr p = product(back, product(keep, qft(2)));
  Matrix expected = Matrix::Zero(4, 4);
  expected.row(0) = testing::dft_matrix(2).row(0);
  EXPECT_LE(max_abs(toarray(p) - expected), 1e-12);
  EXPECT_TRUE(verify(p).pass);
}

TEST(Tensor, Examples) {
  const NodePtr inc = increment(2);
  EXPECT_LE(max_abs(toarray(inc & identity(1)) - toarray(inc)), 0.0);
  EXPECT_TRUE(verify(inc & identity(1)).pass);
  const NodePtr vec2d = constant_vector(Vector::Constant(2, 0.5));
  const NodePtr b = vec2d & vec2d & vec2d;
  EXPECT_LE(max_abs(toarray(b) - Matrix::Constant(8, 1, 0.125)), 1e-15);
  EXPECT_NEAR(b->normalization(), std::pow(1 / std::sqrt(2.0), 3), 1e-15);
  EXPECT_TRUE(verify(b).pass);

  DagGenerator gen(6);
  for (int trial = 0; trial < 30; ++trial) {
    const Sample x = gen.generate(1);
    const Sample y = gen.generate(1);
    const NodePtr t = x.node & y.node;
    EXPECT_LE(max_abs(toarray(t) - kron(x.oracle, y.oracle)), 1e-10);
    EXPECT_NEAR(t->normalization(), x.gamma * y.gamma, 1e-12 * x.gamma * y.gamma);
    EXPECT_GE(t->normalization(), spectral(kron(x.oracle, y.oracle)) - 1e-9);
    EXPECT_TRUE(verify(t).pass);
  }
}

TEST(BlockDiagonal, Examples) {
  EXPECT_LE(max_abs(toarray(identity(2) | identity(2)) - Matrix::Identity(4, 4)), 0.0);
  DagGenerator gen(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Sample a = gen.generate(1);
    const Sample b = gen.generate(1);
    const NodePtr d = a.node | b.node;
    const Matrix m = toarray(d);
    EXPECT_LE(max_abs(m.topRightCorner(a.oracle.rows(), b.oracle.cols())), 0.0);
    EXPECT_LE(max_abs(m.bottomLeftCorner(b.oracle.rows(), a.oracle.cols())), 0.0);
    EXPECT_LE(max_abs(m.topLeftCorner(a.oracle.rows(), a.oracle.cols()) - a.oracle), 1e-10);
    EXPECT_LE(max_abs(m.bottomRightCorner(b.oracle.rows(), b.oracle.cols()) - b.oracle), 1e-10);
    EXPECT_EQ(d->normalization(), std::max(a.node->normalization(), b.node->normalization()));
    EXPECT_NEAR(spectral(m), std::max(spectral(a.oracle), spectral(b.oracle)), 1e-10);
    EXPECT_TRUE(verify(d).pass) << a.expr << " | " << b.expr;
  }
}

TEST(Subnormalize, ScalesBlock) {
  // The block shrinks by the factor, so the matrix is unchanged at a larger gamma.
  const NodePtr s = subnormalize(increment(2), 0.25);
  EXPECT_LE(max_abs(toarray(s) - shift_matrix(2, 1)), 1e-15);
  EXPECT_EQ(s->normalization(), 4.0);
  EXPECT_TRUE(verify(s).pass);
}

TEST(Add, AllOnes) {
  const NodePtr a = identity(2) + permutation({1, 0});
  EXPECT_EQ(a->normalization(), 2.0);
  EXPECT_LE(max_abs(toarray(a) - Matrix::Ones(2, 2)), 1e-15);
  Matrix printed(4, 4);
  printed << 1, 1, 1, -1, 1, 1, -1, 1, 1, -1, 1, 1, -1, 1, 1, 1;
  printed *= 0.5;
  const Matrix u = unitary(a->circuit());
  ASSERT_EQ(u.rows(), 4);
  EXPECT_LE(max_abs(u.topLeftCorner(2, 2) - 0.5 * Matrix::Ones(2, 2)), 1e-12);
  Eigen::Index r = 0, c = 0;
  printed.cwiseAbs().maxCoeff(&r, &c);
  const cplx phase = u(r, c) / printed(r, c);
  EXPECT_NEAR(std::abs(phase), 1.0, 1e-12);
  EXPECT_LE(max_abs(u - phase * printed), 1e-10);
}

TEST(Add, Examples) {
  DagGenerator gen(8);
  for (int trial = 0; trial < 30; ++trial) {
    const Sample a = gen.generate(1);
    const Sample b = gen.generate(1, a.node->dim_in(), a.node->dim_out());
    const NodePtr s = a.node + b.node;
    EXPECT_LE(max_abs(toarray(s) - (a.oracle + b.oracle)), 1e-10);
    EXPECT_EQ(s->normalization(), a.node->normalization() + b.node->normalization());
    const Vector v = gen.random_vector(a.node->dim_in());
    EXPECT_LE((s->compute(v) - a.node->compute(v) - b.node->compute(v)).norm(), 1e-10);
    EXPECT_TRUE(verify(s).pass);
    const NodePtr d = a.node - b.node;
    EXPECT_LE(max_abs(toarray(d) - (a.oracle - b.oracle)), 1e-10);
    EXPECT_TRUE(verify(d).pass);

    const NodePtr plus_zero = a.node + 0.0 * b.node;
    EXPECT_LE(max_abs(toarray(plus_zero) - a.oracle), 1e-12);
    EXPECT_EQ(plus_zero->normalization(), a.node->normalization());
  }
  EXPECT_THROW(increment(2) + increment(3), ShapeError);
}

TEST(Add, ExpandsToLcuGraph) {
  const NodePtr s = qft(1) + increment(1);
  const auto* proxy = dynamic_cast<const ProxyNode*>(s.get());
  ASSERT_NE(proxy, nullptr);
  const NodePtr e = proxy->expansion();
  EXPECT_EQ(e->op(), "matmul");
}

TEST(Slice, Examples) {
  EXPECT_EQ(Slice::all().indices(4), (std::vector<std::uint64_t>{0, 1, 2, 3}));
  EXPECT_EQ((Slice{std::nullopt, -1, 1}.indices(8)), (std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6}));
  EXPECT_EQ((Slice{std::nullopt, std::nullopt, -2}.indices(5)), (std::vector<std::uint64_t>{4, 2, 0}));
  EXPECT_EQ((Slice{1, 100, 3}.indices(8)), (std::vector<std::uint64_t>{1, 4, 7}));
  EXPECT_EQ((Slice{-3, std::nullopt, 1}.indices(8)), (std::vector<std::uint64_t>{5, 6, 7}));
  EXPECT_TRUE((Slice{5, 2, 1}.indices(8)).empty());
  EXPECT_THROW((Slice{0, 1, 0}.indices(3)), DomainError);

  const NodePtr q = qft(3);
  const Matrix f = testing::dft_matrix(3);
  const NodePtr s = slice(q, {1, 7, 2}, {std::nullopt, std::nullopt, -3});
  Matrix expected(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) expected(i, j) = f(1 + 2 * i, 7 - 3 * j);
  }
  EXPECT_LE(max_abs(toarray(s) - expected), 1e-12);
  EXPECT_TRUE(verify(s).pass);
}

TEST(Composite, RandomDeepDags) {
  DagGenerator gen(9);
  for (int trial = 0; trial < 80; ++trial) {
    const Sample s = gen.generate(3);
    EXPECT_LE(max_abs(toarray(s.node) - s.oracle), 1e-9) << s.expr;
    EXPECT_NEAR(s.node->normalization(), s.gamma, 1e-12 * s.gamma) << s.expr;
    EXPECT_GE(s.node->normalization() * (1 + 1e-9), spectral(s.oracle)) << s.expr;
    EXPECT_TRUE(verify(s.node, 1e-9).pass) << s.expr;
  }
}

}  // namespace
}  // namespace be
