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

#include "be/qsvt.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>

#include "be/composites.hpp"
#include "be/errors.hpp"

namespace be {

namespace {

constexpr double kPi = std::numbers::pi;

nlohmann::json parity_json(Parity p) { return p == Parity::Odd ? "odd" : "even"; }

class QsvtNode final : public Node {
 public:
  QsvtNode(NodePtr a, TargetPolynomial target, double tol)
      : a_(std::move(a)), target_(std::move(target)), tol_(tol) {
    if (target_.sup_norm() > 1 + 1e-12) {
      throw DomainError("qsvt: target polynomial exceeds 1 in magnitude");
    }
    odd_ = target_.parity() == Parity::Odd;
    const int w = a_->width() + 1;
    const Subspace& out = odd_ ? a_->subspace_out() : a_->subspace_in();
    mem_in_ = membership_circuit(a_->subspace_in());
    mem_out_ = membership_circuit(a_->subspace_out());
    const int scratch = std::max(mem_in_.ancilla_qubits(), mem_out_.ancilla_qubits());
    init({1.0, a_->subspace_in().padded(w), out.padded(w),
          std::max(a_->ancilla_qubits(), 1 + scratch), false, false});
  }
  std::string op() const override { return "qsvt"; }
  std::vector<NodePtr> args() const override { return {a_}; }
  nlohmann::json params() const override {
    return {{"chebyshev", target_.chebyshev()}, {"parity", parity_json(target_.parity())}};
  }

  const PhaseVector& phases() const {
    std::call_once(phases_once_, [this] { phases_ = solve_phases(target_, tol_); });
    return phases_;
  }

 protected:
  Vector forward(const Vector& v) const override { return dense() * v; }
  Vector backward(const Vector& w) const override { return dense().adjoint() * w; }

  Circuit build_circuit() const override {
    const PhaseVector& pv = phases();
    const int d = pv.degree();
    const int wa = a_->width();
    const int sel = wa;
    const int flag = width();
    Circuit c(width(), ancilla_qubits());

    std::vector<int> child_map(wa + a_->ancilla_qubits());
    std::iota(child_map.begin(), child_map.begin() + wa, 0);
    std::iota(child_map.begin() + wa, child_map.end(), width());
    const Circuit& u = a_->circuit();
    const Circuit u_dag = u.adjoint();

    auto reflection_phases = [&](double sign) {
      std::vector<double> psi(d + 1);
      if (d == 0) {
        psi[0] = sign * pv.phases[0];
        return psi;
      }
      psi[0] = sign * pv.phases[0] - kPi / 4;
      for (int j = 1; j < d; ++j) psi[j] = sign * pv.phases[j] - kPi / 2;
      psi[d] = sign * pv.phases[d] - kPi / 4;
      return psi;
    };
    const auto plus = reflection_phases(1.0), minus = reflection_phases(-1.0);

    // exp(i psi (2 Pi - 1)) on the subspace tested by `mem`, with psi chosen
    // by the selector qubit.
    auto subspace_phase = [&](const Circuit& mem, double psi_plus, double psi_minus) {
      std::vector<int> map(wa + 1 + mem.ancilla_qubits());
      std::iota(map.begin(), map.begin() + wa, 0);
      map[wa] = flag;
      std::iota(map.begin() + wa + 1, map.end(), flag + 1);
      c.append(mem, map);
      c.append(Gate::rotation(GateKind::RZ, flag, -2 * psi_plus, {{sel, false}}));
      c.append(Gate::rotation(GateKind::RZ, flag, -2 * psi_minus, {{sel, true}}));
      c.append(mem.adjoint(), map);
    };

    c.append(Gate::single(GateKind::H, sel));
    subspace_phase(mem_in_, plus[d], minus[d]);
    for (int t = 1; t <= d; ++t) {
      const bool forward_step = t % 2 == 1;
      c.append(forward_step ? u : u_dag, child_map);
      const Circuit& mem = forward_step ? mem_out_ : mem_in_;
      subspace_phase(mem, plus[d - t], minus[d - t]);
    }
    if (d > 0) c.append(Gate::global_phase(d * kPi / 2));
    c.append(Gate::single(GateKind::H, sel));
    return c;
  }

 private:
  const Matrix& dense() const {
    std::call_once(dense_once_, [this] {
      const Matrix m = toarray(a_) / a_->normalization();
      if (odd_) {
        Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        Eigen::VectorXd s = svd.singularValues();
        for (Eigen::Index k = 0; k < s.size(); ++k) s[k] = target_(std::min(1.0, s[k]));
        dense_ = svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
      } else {
        Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
        Eigen::VectorXd s = Eigen::VectorXd::Zero(m.cols());
        s.head(svd.singularValues().size()) = svd.singularValues();
        for (Eigen::Index k = 0; k < s.size(); ++k) s[k] = target_(std::min(1.0, s[k]));
        dense_ = svd.matrixV() * s.asDiagonal() * svd.matrixV().adjoint();
      }
    });
    return dense_;
  }

  NodePtr a_;
  TargetPolynomial target_;
  double tol_;
  bool odd_ = true;
  Circuit mem_in_;
  Circuit mem_out_;

  mutable std::once_flag phases_once_;
  mutable PhaseVector phases_;
  mutable std::once_flag dense_once_;
  mutable Matrix dense_;
};

class PseudoinverseNode final : public ProxyNode {
 public:
  PseudoinverseNode(NodePtr a, double condition, double tolerance, std::optional<double> delta)
      : a_(std::move(a)), condition_(condition), tolerance_(tolerance), supplied_(delta) {
    if (!(condition >= 1)) throw DomainError("pseudoinverse: condition must be >= 1");
    if (!(tolerance > 0 && tolerance < 1)) throw DomainError("pseudoinverse: tolerance must be in (0, 1)");
    double gap = 0;
    if (delta) {
      gap = *delta;
    } else {
      Matrix m;
      try {
        m = toarray(a_);
      } catch (const BudgetError&) {
        throw ConfigError("pseudoinverse: matrix too large to find its smallest singular value; supply delta");
      }
      Eigen::JacobiSVD<Matrix> svd(m);
      const auto& s = svd.singularValues();
      gap = 0;
      for (Eigen::Index k = 0; k < s.size(); ++k) {
        if (s[k] > 1e-12 * s[0]) gap = s[k];
      }
      gap /= a_->normalization();
    }
    if (!(gap > 0 && gap <= 1)) throw DomainError("pseudoinverse: delta must be in (0, 1]");
    delta_ = gap;
    approx_ = inverse_polynomial(delta_, tolerance, condition);
    const double factor = 2 / (approx_.scale * delta_ * a_->normalization());
    set_expansion(scale(factor, qsvt(adjoint(a_), approx_.polynomial)));
  }
  std::string op() const override { return "pseudoinverse"; }
  std::vector<NodePtr> args() const override { return {a_}; }
  nlohmann::json params() const override {
    nlohmann::json p{{"condition", condition_}, {"tolerance", tolerance_}};
    if (supplied_) p["delta"] = *supplied_;
    return p;
  }
  std::vector<std::string> assumptions() const override {
    std::vector<std::string> out;
    if (!supplied_) out.push_back("pseudoinverse: smallest singular value read off the dense matrix");
    if (approx_.capped) out.push_back("pseudoinverse: polynomial degree capped before reaching the tolerance");
    return out;
  }

 private:
  NodePtr a_;
  double condition_;
  double tolerance_;
  std::optional<double> supplied_;
  double delta_ = 0;
  InverseApproximation approx_;
};

}  // namespace

NodePtr qsvt(const NodePtr& a, const TargetPolynomial& target, double tol) {
  return std::make_shared<QsvtNode>(a, target, tol);
}

const PhaseVector& qsvt_phases(const Node& n) {
  const auto* q = dynamic_cast<const QsvtNode*>(&n);
  if (!q) throw UnsupportedError("qsvt_phases: not a qsvt node");
  return q->phases();
}

InverseApproximation inverse_polynomial(double delta, double tolerance, double condition) {
  if (!(delta > 0 && delta <= 1)) throw DomainError("inverse_polynomial: delta must be in (0, 1]");
  const double width = delta / std::sqrt(std::log(4 / tolerance));
  auto window = [&](double x) {
    if (x == 0) return 0.0;
    return delta * -std::expm1(-(x * x) / (width * width)) / (2 * x);
  };

  InverseApproximation out;
  double peak = 0;
  for (int i = 0; i <= 4000; ++i) peak = std::max(peak, window(i / 4000.0));
  out.scale = std::min(1.0, 0.9 / peak);

  int cap = static_cast<int>(std::ceil(4 * condition * std::log(4 / tolerance)));
  cap = std::max(cap, 1) | 1;
  const int n = 2 * cap + 64;
  std::vector<double> coef(cap + 1, 0.0);
  for (int k = 1; k <= cap; k += 2) {
    double sum = 0;
    for (int j = 0; j < n; ++j) {
      const double theta = kPi * (j + 0.5) / n;
      sum += window(std::cos(theta)) * std::cos(k * theta);
    }
    coef[k] = out.scale * 2 * sum / n;
  }

  const int samples = 2000;
  std::vector<double> xs(samples), t_prev(samples, 1.0), t_cur(samples), partial(samples, 0.0);
  for (int m = 0; m < samples; ++m) {
    xs[m] = delta * std::pow(1 / delta, static_cast<double>(m) / (samples - 1));
    t_cur[m] = xs[m];
  }
  int degree = cap;
  double err = 0;
  for (int k = 1; k <= cap; k += 2) {
    // t_cur holds T_k(x); accumulate, test, then advance two orders.
    err = 0;
    for (int m = 0; m < samples; ++m) {
      partial[m] += coef[k] * t_cur[m];
      const double goal = out.scale * delta / (2 * xs[m]);
      err = std::max(err, std::abs(partial[m] / goal - 1));
    }
    if (err <= tolerance / 2) {
      degree = k;
      break;
    }
    for (int m = 0; m < samples; ++m) {
      const double next = 2 * xs[m] * t_cur[m] - t_prev[m];
      const double after = 2 * xs[m] * next - t_cur[m];
      t_prev[m] = next;
      t_cur[m] = after;
    }
    if (k == cap) out.capped = true;
  }
  out.relative_error = err;
  coef.resize(degree + 1);
  out.polynomial = TargetPolynomial(coef, Parity::Odd);
  return out;
}

NodePtr pseudoinverse(const NodePtr& a, double condition, double tolerance, std::optional<double> delta) {
  return std::make_shared<PseudoinverseNode>(a, condition, tolerance, delta);
}

}  // namespace be
