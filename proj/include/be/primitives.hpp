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
#include <vector>

#include "be/node.hpp"

namespace be {

NodePtr identity(const Subspace& s);
NodePtr identity(std::uint64_t dim);

/// |k> -> |k + 1 mod 2^bits>.
NodePtr increment(int bits);
/// |b> -> |b + c mod 2^bits>.
NodePtr constant_integer_addition(int bits, std::int64_t constant);
/// |a>|b> -> |a>|b + a mod 2^target_bits>, source register on the high qubits.
NodePtr integer_addition(int source_bits, int target_bits);
/// Entries w^(jk) / sqrt(2^bits) with w = exp(2 pi i / 2^bits).
NodePtr qft(int bits);

/// The column vector `entries`, with normalization ||entries||_2.
NodePtr constant_vector(const Vector& entries);
/// Basis relabeling k -> table[k].
NodePtr permutation(const std::vector<std::uint64_t>& table);
/// The keep_out x keep_in matrix [I 0; 0 0] over prefixes of `parent`.
NodePtr projection(const Subspace& parent, std::uint64_t keep_out, std::uint64_t keep_in);

/// Appends an increment of the register `qubits` (least significant first).
void append_increment(Circuit& c, const std::vector<int>& qubits,
                      const std::vector<Control>& controls = {});

/// Uniformly-controlled-RY preparation of amplitudes/||amplitudes|| on
/// qubits [0, log2 size) of a fresh circuit.
Circuit state_preparation(const Vector& amplitudes);

}  // namespace be
