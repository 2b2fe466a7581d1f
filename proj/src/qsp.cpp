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

#include "be/qsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "be/errors.hpp"

namespace be {

namespace {

using cd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

constexpr double kPi = std::numbers::pi;

Mat2 signal(double x) {
  const double s = std::sqrt(std::max(0.0, 1 - x * x));
  Mat2 w;
  w << x, cd(0, s), cd(0, s), x;
  return w;
}

Mat2 zrot(double phi) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::polar(1.0, phi);
  m(1, 1) = std::polar(1.0, -phi);
  return m;
}

std::vector<double> expand(const Eigen::VectorXd& reduced, int d) {
  std::vector<double> phases(d + 1);
  for (Eigen::Index m = 0; m < reduced.size(); ++m) {
    phases[m] = reduced[m];
    phases[d - m] = reduced[m];
  }
  return phases;
}

struct Evaluation {
  Eigen::VectorXd residual;
  Eigen::MatrixXd jacobian;
};

Evaluation evaluate(const Eigen::VectorXd& reduced, int d, const std::vector<double>& nodes,
                    const std::vector<double>& values, bool with_jacobian) {
  const auto phases = expand(reduced, d);
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Evaluation e;
  e.residual.resize(n);
  if (with_jacobian) e.jacobian.resize(n, reduced.size());
  std::vector<Mat2> rot(d + 1), prefix(d + 1), suffix(d + 2);
  for (int j = 0; j <= d; ++j) rot[j] = zrot(phases[j]);
  Mat2 iz = Mat2::Zero();
  iz(0, 0) = cd(0, 1);
  iz(1, 1) = cd(0, -1);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Mat2 w = signal(nodes[k]);
    // prefix[j] = S_0 W S_1 ... W (everything left of S_j).
    prefix[0] = Mat2::Identity();
    for (int j = 1; j <= d; ++j) prefix[j] = prefix[j - 1] * rot[j - 1] * w;
    const Mat2 full = prefix[d] * rot[d];
    e.residual[k] = full(0, 0).real() - values[k];
    if (!with_jacobian) continue;
    // suffix[j] = W S_{j+1} ... W S_d (everything right of S_j).
    suffix[d] = Mat2::Identity();
    for (int j = d - 1; j >= 0; --j) suffix[j] = w * rot[j + 1] * suffix[j + 1];
    for (Eigen::Index m = 0; m < reduced.size(); ++m) {
      double g = (prefix[m] * iz * rot[m] * suffix[m])(0, 0).real();
      const int mirror = d - static_cast<int>(m);
      if (mirror != m) g += (prefix[mirror] * iz * rot[mirror] * suffix[mirror])(0, 0).real();
      e.jacobian(k, m) = g;
    }
  }
  return e;
}

}  // namespace

TargetPolynomial::TargetPolynomial(std::vector<double> chebyshev, Parity parity)
    : coef_(std::move(chebyshev)), parity_(parity) {
  const std::size_t odd = parity == Parity::Odd ? 1 : 0;
  for (std::size_t k = 0; k < coef_.size(); ++k) {
    if (!std::isfinite(coef_[k])) throw DomainError("target polynomial has a non-finite coefficient");
    if (k % 2 != odd) {
      if (std::abs(coef_[k]) > 1e-12) {
        throw DomainError("target polynomial coefficient " + std::to_string(k) +
                          " violates the declared parity");
      }
      coef_[k] = 0.0;
    }
  }
  while (coef_.size() > odd + 1 && coef_.back() == 0.0) coef_.pop_back();
  if (coef_.size() < odd + 1) coef_.resize(odd + 1, 0.0);
}

TargetPolynomial TargetPolynomial::from_chebyshev(std::vector<double> chebyshev) {
  std::size_t top = 0;
  for (std::size_t k = 0; k < chebyshev.size(); ++k) {
    if (chebyshev[k] != 0.0) top = k;
  }
  return TargetPolynomial(std::move(chebyshev), top % 2 ? Parity::Odd : Parity::Even);
}

double TargetPolynomial::operator()(double x) const {
  double b1 = 0, b2 = 0;
  for (std::size_t k = coef_.size(); k-- > 1;) {
    const double b0 = 2 * x * b1 - b2 + coef_[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + coef_[0];
}

double TargetPolynomial::sup_norm() const {
  const int samples = std::max(2001, 20 * degree());
  double best = 0;
  for (int i = 0; i < samples; ++i) {
    best = std::max(best, std::abs((*this)(std::cos(kPi * i / (samples - 1)))));
  }
  return best;
}

cd qsp_entry(const std::vector<double>& phases, double x) {
  if (phases.empty()) throw DomainError("qsp_entry: no phases");
  const Mat2 w = signal(x);
  Mat2 u = zrot(phases[0]);
  for (std::size_t j = 1; j < phases.size(); ++j) u = u * w * zrot(phases[j]);
  return u(0, 0);
}

double realized_poly(const std::vector<double>& phases, double x) {
  return qsp_entry(phases, x).real();
}

PhaseVector solve_phases(const TargetPolynomial& target, double tol) {
  const int d = target.degree();
  PhaseVector out;
  out.parity = target.parity();
  if (target.sup_norm() > 1 + 1e-12) {
    throw DomainError("target polynomial exceeds 1 in magnitude on [-1, 1]");
  }
  if (d == 0) {
    out.phases = {std::acos(std::clamp(target.chebyshev()[0], -1.0, 1.0))};
    out.residual = std::abs(std::cos(out.phases[0]) - target.chebyshev()[0]);
    return out;
  }

  const int reduced_size = (d + 2) / 2;
  std::vector<double> nodes(reduced_size), values(reduced_size);
  for (int k = 0; k < reduced_size; ++k) {
    nodes[k] = std::cos((2.0 * k + 1) * kPi / (4.0 * reduced_size));
    values[k] = target(nodes[k]);
  }

  // Chebyshev targets are realized exactly by zero phases.
  const Eigen::VectorXd zeros = Eigen::VectorXd::Zero(reduced_size);
  const double zero_residual = evaluate(zeros, d, nodes, values, false).residual.cwiseAbs().maxCoeff();
  if (zero_residual <= tol) {
    out.phases = expand(zeros, d);
    out.residual = zero_residual;
    return out;
  }

  Eigen::VectorXd r = Eigen::VectorXd::Zero(reduced_size);
  r[0] = kPi / 4;
  Evaluation e = evaluate(r, d, nodes, values, true);
  double res = e.residual.cwiseAbs().maxCoeff();
  const double goal = std::min(tol, 1e-13);
  int stalls = 0;
  for (int iter = 0; iter < 500 && res > goal; ++iter) {
    const Eigen::VectorXd step = e.jacobian.colPivHouseholderQr().solve(-e.residual);
    double t = 1.0;
    Eigen::VectorXd next = r + step;
    Evaluation trial = evaluate(next, d, nodes, values, false);
    double trial_res = trial.residual.cwiseAbs().maxCoeff();
    while (!(trial_res < res) && t > 1.0 / 1024) {
      t /= 2;
      next = r + t * step;
      trial = evaluate(next, d, nodes, values, false);
      trial_res = trial.residual.cwiseAbs().maxCoeff();
    }
    if (!(trial_res < res)) {
      // No further progress: done if already within tolerance.
      if (res <= tol || ++stalls > 3) break;
    }
    if (trial_res < res) {
      r = next;
      res = trial_res;
    }
    e = evaluate(r, d, nodes, values, true);
  }
  if (!(res <= tol)) {
    throw SolverError("phase solver did not converge (residual " + std::to_string(res) + ")", res);
  }
  out.phases = expand(r, d);
  out.residual = res;
  return out;
}

}  // namespace be
