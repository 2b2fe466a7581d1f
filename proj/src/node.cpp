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

#include "be/node.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <unordered_set>

#include "be/errors.hpp"

namespace be {

namespace {

Budget& budget_storage() {
  static Budget b = [] {
    Budget out;
    if (const char* env = std::getenv("BE_BUDGET")) {
      const std::string text(env);
      try {
        const auto colon = text.find(':');
        out.simulation_log2 = std::stoi(text.substr(0, colon));
        if (colon != std::string::npos) out.dense_log2 = std::stoi(text.substr(colon + 1));
      } catch (const std::exception&) {
        throw ConfigError("BE_BUDGET must look like <sim_log2>[:<dense_log2>]");
      }
    }
    return out;
  }();
  return b;
}

void check_dense(const Node& n) {
  const int limit = budget().dense_log2;
  const std::uint64_t cap = std::uint64_t{1} << limit;
  if (n.dim_in() > cap || n.dim_out() > cap) {
    throw BudgetError("dense evaluation of a " + std::to_string(n.dim_out()) + "x" +
                      std::to_string(n.dim_in()) + " matrix exceeds the 2^" +
                      std::to_string(limit) + " budget");
  }
}

void check_simulation(const Node& n) {
  const int total = n.width() + n.ancilla_qubits();
  if (total > budget().simulation_log2) {
    throw BudgetError("simulating " + std::to_string(total) + " qubits exceeds the 2^" +
                      std::to_string(budget().simulation_log2) + " amplitude budget");
  }
}

}  // namespace

Budget budget() { return budget_storage(); }
void set_budget(Budget b) { budget_storage() = b; }

void Node::init(Shape shape) {
  if (!(shape.gamma > 0) || !std::isfinite(shape.gamma)) {
    throw DomainError("normalization must be positive and finite");
  }
  const int w = std::max(shape.in.qubit_count(), shape.out.qubit_count());
  gamma_ = shape.gamma;
  in_ = shape.in.padded(w);
  out_ = shape.out.padded(w);
  ancillas_ = shape.ancillas;
  forward_ = shape.forward;
  backward_ = shape.backward;
}

Vector Node::compute(const Vector& v) const {
  if (static_cast<std::uint64_t>(v.size()) != dim_in()) {
    throw ShapeError(op() + ": input of length " + std::to_string(v.size()) + ", expected " +
                     std::to_string(dim_in()));
  }
  return forward(v);
}

Vector Node::adjoint_compute(const Vector& w) const {
  if (static_cast<std::uint64_t>(w.size()) != dim_out()) {
    throw ShapeError(op() + ": adjoint input of length " + std::to_string(w.size()) +
                     ", expected " + std::to_string(dim_out()));
  }
  return backward(w);
}

const Circuit& Node::circuit() const {
  std::call_once(circuit_once_, [this] {
    circuit_ = build_circuit();
    if (circuit_.main_qubits() != width() || circuit_.ancilla_qubits() != ancillas_) {
      throw Error(op() + ": circuit register (" + std::to_string(circuit_.main_qubits()) + "+" +
                  std::to_string(circuit_.ancilla_qubits()) + ") disagrees with the node (" +
                  std::to_string(width()) + "+" + std::to_string(ancillas_) + ")");
    }
  });
  return circuit_;
}

void ProxyNode::set_expansion(NodePtr expansion) {
  const double gamma = expansion->normalization();
  set_expansion(std::move(expansion), gamma);
}

void ProxyNode::set_expansion(NodePtr expansion, double gamma) {
  expansion_ = std::move(expansion);
  init({gamma, expansion_->subspace_in(), expansion_->subspace_out(),
        expansion_->ancilla_qubits(), expansion_->maps_in_to_out(),
        expansion_->maps_out_to_in()});
}

Vector ProxyNode::forward(const Vector& v) const { return expansion_->compute(v); }
Vector ProxyNode::backward(const Vector& w) const { return expansion_->adjoint_compute(w); }
Circuit ProxyNode::build_circuit() const { return expansion_->circuit(); }

void embed(Circuit& dst, const Node& child, std::span<const int> main_map,
           std::span<const Control> controls, int ancilla_offset) {
  const Circuit& c = child.circuit();
  if (main_map.size() != static_cast<std::size_t>(c.main_qubits())) {
    throw ShapeError("embed: main qubit map does not match the child width");
  }
  std::vector<int> map(main_map.begin(), main_map.end());
  for (int j = 0; j < c.ancilla_qubits(); ++j) map.push_back(dst.main_qubits() + ancilla_offset + j);
  dst.append(c, map, controls);
}

void embed_identity(Circuit& dst, const Node& child, std::span<const Control> controls) {
  std::vector<int> map(child.width());
  std::iota(map.begin(), map.end(), 0);
  embed(dst, child, map, controls);
}

Matrix toarray(const Node& n) {
  check_dense(n);
  Matrix m(n.dim_out(), n.dim_in());
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    Vector e = Vector::Zero(m.cols());
    e[k] = 1.0;
    m.col(k) = n.compute(e);
  }
  return m;
}

EncodingView view(const Node& n) {
  return {toarray(n), n.normalization(), n.subspace_in(), n.subspace_out()};
}

Vector simulate_state(const Node& n, const Vector& v) {
  if (static_cast<std::uint64_t>(v.size()) != n.dim_in()) {
    throw ShapeError(n.op() + ": input of length " + std::to_string(v.size()) + ", expected " +
                     std::to_string(n.dim_in()));
  }
  check_simulation(n);
  const Circuit& c = n.circuit();
  Vector state = Vector::Zero(Eigen::Index{1} << c.total_qubits());
  const auto basis = n.subspace_in().enumerate_basis();
  for (std::size_t k = 0; k < basis.size(); ++k) state[basis[k]] = v[k];
  return apply_circuit(c, std::move(state));
}

Vector simulate(const Node& n, const Vector& v) {
  const Vector state = simulate_state(n, v);
  const auto basis = n.subspace_out().enumerate_basis();
  Vector out(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) out[k] = state[basis[k]];
  return n.normalization() * out;
}

VerifyReport verify(const Node& n, double tol) {
  VerifyReport report;
  for (std::uint64_t k = 0; k < n.dim_in(); ++k) {
    Vector e = Vector::Zero(n.dim_in());
    e[k] = 1.0;
    double err = (simulate(n, e) - n.compute(e)).cwiseAbs().maxCoeff();
    if (std::isnan(err)) err = std::numeric_limits<double>::infinity();
    if (k == 0 || err > report.max_error) {
      report.max_error = err;
      report.worst_column = k;
    }
  }
  report.pass = report.max_error <= tol;
  return report;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double info_efficiency(const Node& n) { return spectral_norm(toarray(n)) / n.normalization(); }

double simulate_norm(const Node& n) {
  if (n.dim_in() != 1) throw ShapeError(n.op() + ": simulate_norm needs a vector node");
  return simulate(n, Vector::Ones(1)).norm();
}

std::uint64_t norm_query_estimate(double eps, double eta, double delta) {
  if (!(eps > 0) || !(eta > 0) || !(delta > 0 && delta < 1)) {
    throw DomainError("norm query estimate needs eps > 0, eta > 0 and 0 < delta < 1");
  }
  return static_cast<std::uint64_t>(std::ceil(std::log(1.0 / delta) / (eps * eta)));
}

std::optional<std::uint64_t> ResourceReport::norm_query_estimate(double eps, double delta) const {
  if (!info_efficiency) return std::nullopt;
  return be::norm_query_estimate(eps, *info_efficiency, delta);
}

ResourceReport resources(const Node& n, std::optional<double> eta) {
  ResourceReport r;
  r.main_qubits = n.width();
  r.ancilla_qubits = n.ancilla_qubits();
  r.total_qubits = r.main_qubits + r.ancilla_qubits;
  r.normalization = n.normalization();
  const Circuit& c = n.circuit();
  r.gate_counts = gate_counts(c, false);
  r.lowered_gate_counts = gate_counts(c, true);
  r.t_count_estimate = t_count_estimate(c);
  if (eta) {
    r.info_efficiency = eta;
  } else {
    try {
      r.info_efficiency = info_efficiency(n);
    } catch (const BudgetError&) {
    }
  }

  std::unordered_set<const Node*> seen;
  std::set<std::string> notes;
  std::vector<const Node*> stack{&n};
  while (!stack.empty()) {
    const Node* cur = stack.back();
    stack.pop_back();
    if (!seen.insert(cur).second) continue;
    for (auto& a : cur->assumptions()) {
      if (notes.insert(a).second) r.assumptions.push_back(a);
    }
    for (const auto& p : cur->parts()) stack.push_back(p.get());
  }
  return r;
}

nlohmann::json to_json(const ResourceReport& r) {
  nlohmann::json j;
  j["main_qubits"] = r.main_qubits;
  j["ancilla_qubits"] = r.ancilla_qubits;
  j["total_qubits"] = r.total_qubits;
  j["gate_counts"] = r.gate_counts;
  j["lowered_gate_counts"] = r.lowered_gate_counts;
  j["t_count_estimate"] = r.t_count_estimate;
  j["normalization"] = r.normalization;
  j["info_efficiency"] = r.info_efficiency ? nlohmann::json(*r.info_efficiency) : nlohmann::json();
  j["assumptions"] = r.assumptions;
  nlohmann::json table = nlohmann::json::array();
  for (double eps : {1e-1, 1e-2}) {
    const auto q = r.norm_query_estimate(eps, 1e-2);
    table.push_back({{"epsilon", eps},
                     {"delta", 1e-2},
                     {"queries", q ? nlohmann::json(*q) : nlohmann::json()}});
  }
  j["norm_queries"] = table;
  return j;
}

}  // namespace be
