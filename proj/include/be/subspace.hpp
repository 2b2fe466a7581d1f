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

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace be {

class Circuit;

/// A span of computational basis states in compressed tensor form.
///
/// The factor list is stored least significant first. A ZeroQubit factor
/// forces its qubit to |0>; a Controlled factor spends one qubit (its most
/// significant) to select between two equally wide sub-subspaces. The empty
/// factor list is the zero-qubit space C^1, so Controlled(empty, empty) is a
/// single unconstrained qubit.
class Subspace {
 public:
  struct ZeroQubit {
    bool operator==(const ZeroQubit&) const = default;
  };
  struct Controlled {
    std::shared_ptr<const Subspace> low;
    std::shared_ptr<const Subspace> high;
    bool operator==(const Controlled& other) const;
  };
  using Factor = std::variant<ZeroQubit, Controlled>;

  Subspace() = default;
  explicit Subspace(std::vector<Factor> factors);

  /// Parses a string of '0' and '#', most significant qubit first.
  static Subspace from_string(std::string_view pattern);
  /// The span of |0>, ..., |d-1> on ceil(log2 d) qubits.
  static Subspace from_dim(std::uint64_t d);
  static Subspace zeros(int qubits);
  static Subspace full(int qubits);
  /// Single Controlled factor selecting `low` when the new MSB is 0.
  static Subspace controlled(const Subspace& low, const Subspace& high);

  const std::vector<Factor>& factors() const { return factors_; }
  int qubit_count() const { return qubits_; }
  std::uint64_t dim() const { return dim_; }
  bool is_full() const;

  /// Sorted basis indices of the spanned states.
  std::vector<std::uint64_t> enumerate_basis() const;
  bool contains(std::uint64_t index) const;

  /// Adds ZeroQubit factors at the most significant end up to `qubits`.
  Subspace padded(int qubits) const;

  /// Subspace spanned by the first k enumerated basis states.
  Subspace prefix(std::uint64_t k) const;

  /// Same spanned index set (and width), regardless of representation.
  bool same_basis(const Subspace& other) const;

  /// Nested listing of the internal factor form.
  std::string repr() const;

  bool operator==(const Subspace& other) const;

 private:
  std::vector<Factor> factors_;
  int qubits_ = 0;
  std::uint64_t dim_ = 1;
};

/// Controlled(low, high); both operands must have the same width.
Subspace operator|(const Subspace& low, const Subspace& high);
/// Tensor product with the left operand on the more significant qubits.
Subspace operator&(const Subspace& high, const Subspace& low);

/// Circuit flagging states outside `s`.
///
/// Qubits [0, s.qubit_count()) carry the tested state, qubit s.qubit_count()
/// is the flag and the ancilla register holds scratch qubits. Starting from a
/// basis state with flag and scratch in |0>, the flag ends in |0> exactly when
/// the state lies in `s`; scratch qubits are always restored.
Circuit membership_circuit(const Subspace& s);

}  // namespace be
