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

#pragma once

#include "be/node.hpp"

namespace be {

/// Identity + Pauli X on one qubit: the all-ones 2x2 matrix.
NodePtr all_ones();

/// 2^N (2 I - X^dagger - X)[:-1, :-1] with X the cyclic increment.
NodePtr laplace_matrix(int n);
/// (v & ... & v)[:-1] with v = (1/2, 1/2), N factors.
NodePtr laplace_rhs(int n);

struct LaplaceResult {
  NodePtr matrix;
  NodePtr rhs;
  NodePtr inverse;
  NodePtr solution;
  double condition = 0;
  /// simulate_norm(solution) * 2^(-N/2)
  double qoi = 0;
};
LaplaceResult laplace_demo(int n = 3, double tolerance = 0.01);

/// Samples exp(-(i/4)^2) for i = -3..3 followed by one zero.
Vector gaussian_kernel();
/// Convolution with `kernel` (length 8, centered at index 3) on 8 points.
NodePtr convolution(const Vector& kernel);

}  // namespace be
