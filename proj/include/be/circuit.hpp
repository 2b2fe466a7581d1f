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
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace be {

enum class GateKind {
  X,
  Y,
  Z,
  H,
  S,
  T,
  Phase,
  RX,
  RY,
  RZ,
  GlobalPhase,
  Swap,
  Permutation,
};

struct Control {
  int qubit = 0;
  bool polarity = true;  // true: fires on |1>, false: fires on |0>
  bool operator==(const Control&) const = default;
};

/// One gate of the IR. Target 0 of a Permutation gate is the least
/// significant bit of its local index.
struct Gate {
  GateKind kind = GateKind::X;
  std::vector<int> targets;
  std::vector<Control> controls;
  double angle = 0.0;
  std::shared_ptr<const std::vector<std::uint64_t>> table;

  static Gate single(GateKind kind, int target, std::vector<Control> controls = {});
  static Gate rotation(GateKind kind, int target, double angle,
                       std::vector<Control> controls = {});
  static Gate global_phase(double angle, std::vector<Control> controls = {});
  static Gate swap(int a, int b, std::vector<Control> controls = {});
  static Gate permutation(std::vector<int> targets, std::vector<std::uint64_t> table,
                          std::vector<Control> controls = {});

  Gate inverse() const;
  /// 2x2 matrix of single-target kinds.
  Eigen::Matrix2cd matrix() const;
  /// Key used by gate counting, e.g. "X", "CX", "CCX", "C3RY".
  std::string count_key() const;
  bool operator==(const Gate& other) const;
};

std::string kind_name(GateKind kind);

/// Gate sequence over main qubits [0, main) followed by ancillas
/// [main, main + ancilla). Qubit 0 is the least significant bit of a basis
/// index.
class Circuit {
 public:
  Circuit() = default;
  Circuit(int main_qubits, int ancilla_qubits);

  int main_qubits() const { return main_; }
  int ancilla_qubits() const { return ancilla_; }
  int total_qubits() const { return main_ + ancilla_; }
  const std::vector<Gate>& gates() const { return gates_; }
  bool empty() const { return gates_.empty(); }

  void append(Gate gate);
  /// Appends `other`, sending its qubit q to qubit_map[q] and adding
  /// `extra_controls` to every gate.
  void append(const Circuit& other, std::span<const int> qubit_map,
              std::span<const Control> extra_controls = {});

  Circuit adjoint() const;

 private:
  void check(const Gate& gate) const;

  int main_ = 0;
  int ancilla_ = 0;
  std::vector<Gate> gates_;
};

using GateCounts = std::map<std::string, std::uint64_t>;

/// Per-kind gate tally. With `lower_permutations` set, Permutation gates are
/// counted as their multi-controlled-X networks instead of as "PERM".
GateCounts gate_counts(const Circuit& circuit, bool lower_permutations = false);

/// Toffoli-based T-count estimate of the lowered circuit: T gates count one,
/// a multi-controlled X with n >= 2 controls costs (2n - 3) Toffolis of 7 T
/// each. Arbitrary-angle rotations are not included.
std::uint64_t t_count_estimate(const Circuit& circuit);

/// Replaces every Permutation gate with its transposition network.
Circuit lower_permutations(const Circuit& circuit);
std::vector<Gate> lower_permutation(const Gate& gate);

using StateVector = Eigen::VectorXcd;

void apply_gate(const Gate& gate, StateVector& state);
StateVector apply_circuit(const Circuit& circuit, StateVector state);
/// Dense unitary of the circuit, built column by column.
Eigen::MatrixXcd unitary(const Circuit& circuit);

/// OpenQASM 3 text. Without lowering, Permutation gates raise UnsupportedError.
std::string export_qasm(const Circuit& circuit, bool lower_permutations);

}  // namespace be
