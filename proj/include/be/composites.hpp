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
#include <vector>

#include "be/node.hpp"

namespace be {

enum class ProductCheck {
  Auto,   // insert the intermediate membership check unless certified unnecessary
  Force,  // always insert it
  Skip,   // never insert it; recorded as an assumption
};

NodePtr adjoint(const NodePtr& a);
NodePtr scale(cplx c, const NodePtr& a);
/// Matrix product a * b.
NodePtr product(const NodePtr& a, const NodePtr& b, ProductCheck check = ProductCheck::Auto);
/// Kronecker product, `high` on the more significant qubits.
NodePtr tensor(const NodePtr& high, const NodePtr& low);
NodePtr block_diagonal(const NodePtr& a, const NodePtr& b);
NodePtr add(const NodePtr& a, const NodePtr& b);
NodePtr sub(const NodePtr& a, const NodePtr& b);
/// The zero matrix between subspaces of the given shapes.
NodePtr zero(const Subspace& in, const Subspace& out);
/// Same matrix with normalization gamma(a) / factor, 0 < factor <= 1.
NodePtr subnormalize(const NodePtr& a, double factor);

/// Python-style slice.
struct Slice {
  std::optional<std::int64_t> start;
  std::optional<std::int64_t> stop;
  std::int64_t step = 1;

  static Slice all() { return {}; }
  std::vector<std::uint64_t> indices(std::uint64_t n) const;
  bool operator==(const Slice&) const = default;
};

NodePtr slice(const NodePtr& a, const Slice& rows, const Slice& cols);

NodePtr operator+(const NodePtr& a, const NodePtr& b);
NodePtr operator-(const NodePtr& a, const NodePtr& b);
NodePtr operator-(const NodePtr& a);
NodePtr operator*(const NodePtr& a, const NodePtr& b);
NodePtr operator*(cplx c, const NodePtr& a);
NodePtr operator*(double c, const NodePtr& a);
NodePtr operator&(const NodePtr& high, const NodePtr& low);
NodePtr operator|(const NodePtr& a, const NodePtr& b);

}  // namespace be
