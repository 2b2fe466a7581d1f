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
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "be/circuit.hpp"
#include "be/subspace.hpp"

namespace be {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

class Node;
using NodePtr = std::shared_ptr<const Node>;

/// Vertex of a block-encoding DAG.
///
/// The encoded matrix is A = gamma * <out| U |in>, where U is circuit(), |in>
/// and |out> range over the enumerated basis of the in/out subspaces on the
/// main register and the ancilla register starts and ends in |0>. Both
/// subspaces span the whole main register (width() qubits).
class Node {
 public:
  virtual ~Node() = default;
  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;

  double normalization() const { return gamma_; }
  const Subspace& subspace_in() const { return in_; }
  const Subspace& subspace_out() const { return out_; }
  std::uint64_t dim_in() const { return in_.dim(); }
  std::uint64_t dim_out() const { return out_.dim(); }
  int width() const { return in_.qubit_count(); }
  int ancilla_qubits() const { return ancillas_; }

  /// U maps every state of the in-subspace into the out-subspace.
  bool maps_in_to_out() const { return forward_; }
  /// U^dagger maps every state of the out-subspace into the in-subspace.
  bool maps_out_to_in() const { return backward_; }

  /// A v and A^dagger w by direct arithmetic.
  Vector compute(const Vector& v) const;
  Vector adjoint_compute(const Vector& w) const;

  /// Lowered circuit, built on first use.
  const Circuit& circuit() const;

  /// Serialization hooks: operation name, operands and parameters.
  virtual std::string op() const = 0;
  virtual std::vector<NodePtr> args() const { return {}; }
  virtual nlohmann::json params() const { return nlohmann::json::object(); }
  /// Nodes whose circuits make up this one (defaults to args()).
  virtual std::vector<NodePtr> parts() const { return args(); }
  /// Caveats that belong in a resource report.
  virtual std::vector<std::string> assumptions() const { return {}; }

 protected:
  Node() = default;

  struct Shape {
    double gamma = 1.0;
    Subspace in;
    Subspace out;
    int ancillas = 0;
    bool forward = false;
    bool backward = false;
  };
  void init(Shape shape);

  virtual Vector forward(const Vector& v) const = 0;
  virtual Vector backward(const Vector& w) const = 0;
  virtual Circuit build_circuit() const = 0;

 private:
  double gamma_ = 1.0;
  Subspace in_;
  Subspace out_;
  int ancillas_ = 0;
  bool forward_ = false;
  bool backward_ = false;

  mutable std::once_flag circuit_once_;
  mutable Circuit circuit_;
};

/// A node defined by an expansion into other nodes. Everything delegates to
/// the expansion unless a subclass overrides it.
class ProxyNode : public Node {
 public:
  const NodePtr& expansion() const { return expansion_; }
  std::vector<NodePtr> parts() const override { return {expansion_}; }

 protected:
  void set_expansion(NodePtr expansion);
  void set_expansion(NodePtr expansion, double gamma);

  Vector forward(const Vector& v) const override;
  Vector backward(const Vector& w) const override;
  Circuit build_circuit() const override;

 private:
  NodePtr expansion_;
};

/// Appends `child`'s circuit to `dst`. Child main qubit q goes to
/// main_map[q]; child ancillas go to the ancilla register starting at
/// dst.main_qubits() + ancilla_offset.
void embed(Circuit& dst, const Node& child, std::span<const int> main_map,
           std::span<const Control> controls = {}, int ancilla_offset = 0);
/// Same as embed() with main_map = 0, 1, ...
void embed_identity(Circuit& dst, const Node& child, std::span<const Control> controls = {});

/// Desk-scale limits, as log2 of the simulated amplitude count and of the
/// dense matrix side. Initialized from BE_BUDGET="<sim>[:<dense>]".
struct Budget {
  int simulation_log2 = 20;
  int dense_log2 = 12;
};
Budget budget();
void set_budget(Budget b);

struct EncodingView {
  Matrix matrix;
  double normalization = 1.0;
  Subspace subspace_in;
  Subspace subspace_out;
};

Matrix toarray(const Node& n);
inline Matrix toarray(const NodePtr& n) { return toarray(*n); }
EncodingView view(const Node& n);

/// Full register state after running the circuit on the embedded input.
Vector simulate_state(const Node& n, const Vector& v);
/// Circuit path: embed, run, project onto the out-subspace with ancillas in
/// |0>, multiply by the normalization.
Vector simulate(const Node& n, const Vector& v);
inline Vector simulate(const NodePtr& n, const Vector& v) { return simulate(*n, v); }

struct VerifyReport {
  double max_error = 0.0;
  std::uint64_t worst_column = 0;
  bool pass = true;
};
VerifyReport verify(const Node& n, double tol = 1e-10);
inline VerifyReport verify(const NodePtr& n, double tol = 1e-10) { return verify(*n, tol); }

double spectral_norm(const Matrix& m);
/// ||A||_2 / gamma.
double info_efficiency(const Node& n);
/// gamma times the norm of the projected simulated state of a vector node.
double simulate_norm(const Node& n);

struct ResourceReport {
  int main_qubits = 0;
  int ancilla_qubits = 0;
  int total_qubits = 0;
  GateCounts gate_counts;
  GateCounts lowered_gate_counts;
  std::uint64_t t_count_estimate = 0;
  double normalization = 1.0;
  std::optional<double> info_efficiency;
  std::vector<std::string> assumptions;

  /// ceil(eps^-1 eta^-1 ln(delta^-1)); empty without eta.
  std::optional<std::uint64_t> norm_query_estimate(double eps, double delta) const;
};

std::uint64_t norm_query_estimate(double eps, double eta, double delta);

/// Structural report. Efficiency is filled in when the dense matrix fits the
/// budget, or taken from `eta` when supplied.
ResourceReport resources(const Node& n, std::optional<double> eta = std::nullopt);
nlohmann::json to_json(const ResourceReport& r);

}  // namespace be
