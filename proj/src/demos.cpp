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

#include "be/demos.hpp"

#include <cmath>

#include "be/composites.hpp"
#include "be/errors.hpp"
#include "be/primitives.hpp"
#include "be/qsvt.hpp"

namespace be {

namespace {

const Slice kDropLast{std::nullopt, -1, 1};

}  // namespace

NodePtr all_ones() { return identity(2) + permutation({1, 0}); }

NodePtr laplace_matrix(int n) {
  if (n < 1 || n > 12) throw DomainError("laplace: N must be in [1, 12]");
  const NodePtr i = identity(std::uint64_t{1} << n);
  const NodePtr x = increment(n);
  return std::ldexp(1.0, n) * slice(2.0 * i - adjoint(x) - x, kDropLast, kDropLast);
}

NodePtr laplace_rhs(int n) {
  if (n < 1 || n > 12) throw DomainError("laplace: N must be in [1, 12]");
  const NodePtr v = constant_vector(Vector::Constant(2, 0.5));
  NodePtr b = v;
  for (int k = 1; k < n; ++k) b = b & v;
  return slice(b, kDropLast, Slice::all());
}

LaplaceResult laplace_demo(int n, double tolerance) {
  LaplaceResult r;
  r.matrix = laplace_matrix(n);
  r.rhs = laplace_rhs(n);
  Eigen::JacobiSVD<Matrix> svd(toarray(r.matrix));
  const auto& s = svd.singularValues();
  r.condition = s[0] / s[s.size() - 1];
  r.inverse = pseudoinverse(r.matrix, r.condition, tolerance);
  r.solution = r.inverse * r.rhs;
  r.qoi = simulate_norm(*r.solution) * std::pow(2.0, -n / 2.0);
  return r;
}

Vector gaussian_kernel() {
  Vector k = Vector::Zero(8);
  for (int i = -3; i <= 3; ++i) k[i + 3] = std::exp(-(i / 4.0) * (i / 4.0));
  return k;
}

NodePtr convolution(const Vector& kernel) {
  if (kernel.size() != 8) throw ShapeError("convolution: kernel must have 8 entries");
  const NodePtr prep = constant_vector(kernel.cwiseSqrt()) & identity(16);
  const NodePtr shift = integer_addition(3, 4);
  const NodePtr center = identity(8) & constant_integer_addition(4, -3);
  const Slice window{std::nullopt, 8, 1};
  return slice(adjoint(prep) * center * shift * prep, window, window);
}

}  // namespace be
