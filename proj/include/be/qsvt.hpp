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

#include <optional>

#include "be/node.hpp"
#include "be/qsp.hpp"

namespace be {

/// Singular value transformation of a / gamma(a) by `target`, realized as
/// the real part of the QSP product through a two-branch combination over
/// +phases and -phases. Odd targets map the in-subspace of `a` to its
/// out-subspace; even targets map the in-subspace to itself. The result has
/// normalization 1.
NodePtr qsvt(const NodePtr& a, const TargetPolynomial& target, double tol = 1e-10);

/// Phases used by a node built with qsvt().
const PhaseVector& qsvt_phases(const Node& n);

/// Odd polynomial approximating scale * delta / (2x) on [delta, 1].
struct InverseApproximation {
  TargetPolynomial polynomial{{0.0, 0.0}, Parity::Odd};
  double scale = 1.0;
  /// Max of |p(x) / (scale * delta / (2x)) - 1| over sampled x in [delta, 1].
  double relative_error = 0.0;
  bool capped = false;
};
InverseApproximation inverse_polynomial(double delta, double tolerance, double condition);

/// Moore-Penrose pseudoinverse through qsvt() of adjoint(a). `delta` is the
/// smallest nonzero singular value of a / gamma(a); without it the value is
/// read off the dense matrix.
NodePtr pseudoinverse(const NodePtr& a, double condition, double tolerance,
                      std::optional<double> delta = std::nullopt);

}  // namespace be
