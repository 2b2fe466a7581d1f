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

#include <complex>
#include <vector>

namespace be {

enum class Parity { Even, Odd };

/// Real polynomial of definite parity, sum_k c_k T_k(x).
class TargetPolynomial {
 public:
  /// Coefficients of the other parity must vanish (|c| <= 1e-12); they are
  /// then dropped.
  TargetPolynomial(std::vector<double> chebyshev, Parity parity);
  /// Parity taken from the highest nonzero coefficient.
  static TargetPolynomial from_chebyshev(std::vector<double> chebyshev);

  const std::vector<double>& chebyshev() const { return coef_; }
  Parity parity() const { return parity_; }
  int degree() const { return static_cast<int>(coef_.size()) - 1; }
  double operator()(double x) const;
  /// Sampled maximum of |p| on [-1, 1].
  double sup_norm() const;

 private:
  std::vector<double> coef_;
  Parity parity_;
};

/// Phases (phi_0, ..., phi_d) of
///   e^{i phi_0 Z} prod_j W(x) e^{i phi_j Z},  W(x) = [[x, i s], [i s, x]],
/// s = sqrt(1 - x^2).
struct PhaseVector {
  std::vector<double> phases;
  Parity parity = Parity::Even;
  /// Max deviation from the target at the solver's sample nodes.
  double residual = 0.0;
  int degree() const { return static_cast<int>(phases.size()) - 1; }
};

/// Top-left entry of the QSP product.
std::complex<double> qsp_entry(const std::vector<double>& phases, double x);
/// Real part of qsp_entry.
double realized_poly(const std::vector<double>& phases, double x);

/// Symmetric phases reproducing `target` as realized_poly. Damped Newton on
/// the reduced phases at the positive Chebyshev nodes, starting from
/// (pi/4, 0, ..., 0, pi/4). Throws SolverError when the iteration budget
/// runs out and DomainError when the target exceeds 1 in magnitude.
PhaseVector solve_phases(const TargetPolynomial& target, double tol = 1e-8);

}  // namespace be
