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

#include "be/subspace.hpp"

#include <algorithm>
#include <bit>

#include "be/circuit.hpp"
#include "be/errors.hpp"

namespace be {

namespace {

int factor_width(const Subspace::Factor& f) {
  if (std::holds_alternative<Subspace::ZeroQubit>(f)) return 1;
  return 1 + std::get<Subspace::Controlled>(f).low->qubit_count();
}

std::uint64_t factor_dim(const Subspace::Factor& f) {
  if (std::holds_alternative<Subspace::ZeroQubit>(f)) return 1;
  const auto& c = std::get<Subspace::Controlled>(f);
  return c.low->dim() + c.high->dim();
}

std::vector<std::uint64_t> factor_basis(const Subspace::Factor& f) {
  if (std::holds_alternative<Subspace::ZeroQubit>(f)) return {0};
  const auto& c = std::get<Subspace::Controlled>(f);
  auto out = c.low->enumerate_basis();
  const std::uint64_t offset = std::uint64_t{1} << c.low->qubit_count();
  for (auto x : c.high->enumerate_basis()) out.push_back(x + offset);
  return out;
}

bool factor_contains(const Subspace::Factor& f, std::uint64_t local) {
  if (std::holds_alternative<Subspace::ZeroQubit>(f)) return local == 0;
  const auto& c = std::get<Subspace::Controlled>(f);
  const int w = c.low->qubit_count();
  const std::uint64_t rest = local & ((std::uint64_t{1} << w) - 1);
  return (local >> w) ? c.high->contains(rest) : c.low->contains(rest);
}

std::vector<Subspace::Factor> concat(std::vector<Subspace::Factor> a,
                                     const std::vector<Subspace::Factor>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void repr_into(const Subspace& s, std::string& out) {
  out += "Subspace([";
  bool first = true;
  for (const auto& f : s.factors()) {
    if (!first) out += ", ";
    first = false;
    if (std::holds_alternative<Subspace::ZeroQubit>(f)) {
      out += "ZeroQubitSubspace()";
    } else {
      const auto& c = std::get<Subspace::Controlled>(f);
      out += "ControlledSubspace(";
      repr_into(*c.low, out);
      out += ", ";
      repr_into(*c.high, out);
      out += ")";
    }
  }
  out += "])";
}

// Emits gates computing target ^= [state in s] for the qubits starting at
// `base`, with every gate writing the target additionally conditioned on
// `extra`. Scratch qubits come from a stack and are restored.
class MembershipBuilder {
 public:
  explicit MembershipBuilder(int scratch_base) : scratch_base_(scratch_base) {}

  void compute_in(const Subspace& s, int base, int target, std::vector<Control> extra,
                  std::vector<Gate>& out) {
    std::vector<Control> direct = std::move(extra);
    std::vector<std::pair<const Subspace::Controlled*, int>> nontrivial;
    int offset = base;
    for (const auto& f : s.factors()) {
      if (std::holds_alternative<Subspace::ZeroQubit>(f)) {
        direct.push_back({offset, false});
      } else {
        const auto& c = std::get<Subspace::Controlled>(f);
        if (!(c.low->is_full() && c.high->is_full())) nontrivial.emplace_back(&c, offset);
      }
      offset += factor_width(f);
    }
    if (nontrivial.empty()) {
      out.push_back(Gate::single(GateKind::X, target, direct));
      return;
    }
    std::vector<int> scratch;
    std::vector<std::vector<Gate>> computed;
    for (std::size_t i = 0; i + 1 < nontrivial.size(); ++i) {
      const int q = acquire();
      std::vector<Gate> seq;
      compute_controlled(*nontrivial[i].first, nontrivial[i].second, q, {}, seq);
      out.insert(out.end(), seq.begin(), seq.end());
      computed.push_back(std::move(seq));
      scratch.push_back(q);
      direct.push_back({q, true});
    }
    compute_controlled(*nontrivial.back().first, nontrivial.back().second, target, direct,
                       out);
    for (std::size_t i = computed.size(); i-- > 0;) {
      out.insert(out.end(), computed[i].rbegin(), computed[i].rend());
      release();
    }
  }

  int scratch_used() const { return max_; }

 private:
  void compute_controlled(const Subspace::Controlled& c, int base, int target,
                          std::vector<Control> extra, std::vector<Gate>& out) {
    const int msb = base + c.low->qubit_count();
    auto low_ctrl = extra;
    low_ctrl.push_back({msb, false});
    compute_in(*c.low, base, target, std::move(low_ctrl), out);
    extra.push_back({msb, true});
    compute_in(*c.high, base, target, std::move(extra), out);
  }

  int acquire() {
    const int q = scratch_base_ + next_++;
    max_ = std::max(max_, next_);
    return q;
  }
  void release() { --next_; }

  int scratch_base_;
  int next_ = 0;
  int max_ = 0;
};

}  // namespace

bool Subspace::Controlled::operator==(const Controlled& other) const {
  return *low == *other.low && *high == *other.high;
}

Subspace::Subspace(std::vector<Factor> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_) {
    if (const auto* c = std::get_if<Controlled>(&f)) {
      if (!c->low || !c->high) throw ShapeError("controlled subspace with missing branch");
      if (c->low->qubit_count() != c->high->qubit_count()) {
        throw ShapeError("controlled subspace branches differ in width");
      }
    }
    qubits_ += factor_width(f);
    dim_ *= factor_dim(f);
  }
  if (qubits_ > 62) throw ShapeError("subspace wider than 62 qubits");
}

Subspace Subspace::from_string(std::string_view pattern) {
  if (pattern.empty()) throw FormatError("empty subspace pattern");
  std::vector<Factor> factors;
  for (auto it = pattern.rbegin(); it != pattern.rend(); ++it) {
    if (*it == '0') {
      factors.emplace_back(ZeroQubit{});
    } else if (*it == '#') {
      factors.emplace_back(Controlled{std::make_shared<Subspace>(), std::make_shared<Subspace>()});
    } else {
      throw FormatError(std::string("invalid subspace pattern character '") + *it + "'");
    }
  }
  return Subspace(std::move(factors));
}

Subspace Subspace::zeros(int qubits) {
  return Subspace(std::vector<Factor>(static_cast<std::size_t>(qubits), ZeroQubit{}));
}

Subspace Subspace::full(int qubits) {
  std::vector<Factor> factors;
  auto empty = std::make_shared<Subspace>();
  for (int i = 0; i < qubits; ++i) factors.emplace_back(Controlled{empty, empty});
  return Subspace(std::move(factors));
}

Subspace Subspace::controlled(const Subspace& low, const Subspace& high) {
  if (low.qubit_count() != high.qubit_count()) {
    throw ShapeError("controlled subspace branches differ in width");
  }
  return Subspace(
      {Controlled{std::make_shared<Subspace>(low), std::make_shared<Subspace>(high)}});
}

Subspace Subspace::from_dim(std::uint64_t d) {
  if (d < 1) throw DomainError("subspace dimension must be positive");
  if (d == 1) return Subspace();
  const int k = std::bit_width(d) - 1;
  const std::uint64_t pow = std::uint64_t{1} << k;
  if (pow == d) return full(k);
  return controlled(full(k), from_dim(d - pow).padded(k));
}

bool Subspace::is_full() const {
  return dim_ == (std::uint64_t{1} << qubits_);
}

std::vector<std::uint64_t> Subspace::enumerate_basis() const {
  std::vector<std::uint64_t> result{0};
  int offset = 0;
  for (const auto& f : factors_) {
    const auto local = factor_basis(f);
    std::vector<std::uint64_t> next;
    next.reserve(result.size() * local.size());
    for (auto l : local) {
      for (auto r : result) next.push_back(r | (l << offset));
    }
    result = std::move(next);
    offset += factor_width(f);
  }
  return result;
}

bool Subspace::contains(std::uint64_t index) const {
  if (qubits_ < 64 && (index >> qubits_) != 0) return false;
  int offset = 0;
  for (const auto& f : factors_) {
    const int w = factor_width(f);
    if (!factor_contains(f, (index >> offset) & ((std::uint64_t{1} << w) - 1))) return false;
    offset += w;
  }
  return true;
}

Subspace Subspace::padded(int qubits) const {
  if (qubits < qubits_) throw ShapeError("cannot pad a subspace to fewer qubits");
  auto factors = factors_;
  factors.resize(factors.size() + static_cast<std::size_t>(qubits - qubits_), ZeroQubit{});
  return Subspace(std::move(factors));
}

Subspace Subspace::prefix(std::uint64_t k) const {
  if (k < 1 || k > dim_) throw DomainError("prefix length outside [1, dim]");
  if (k == dim_) return *this;
  // dim_ > 1 here, so there is at least one Controlled factor.
  const auto& top = factors_.back();
  const Subspace lower(std::vector<Factor>(factors_.begin(), factors_.end() - 1));
  const std::uint64_t block = lower.dim();
  if (std::holds_alternative<ZeroQubit>(top)) {
    return Subspace(concat(lower.prefix(k).factors_, {ZeroQubit{}}));
  }
  const auto& c = std::get<Controlled>(top);
  const std::uint64_t d0 = c.low->dim();
  if (k % block == 0) {
    const std::uint64_t q = k / block;
    if (q <= d0) {
      return Subspace(concat(concat(lower.factors_, c.low->prefix(q).factors_), {ZeroQubit{}}));
    }
    return Subspace(concat(lower.factors_,
                           {Controlled{c.low, std::make_shared<Subspace>(c.high->prefix(q - d0))}}));
  }
  // Distribute the top factor over the lower ones: C(b0, b1) & L == C(b0 & L, b1 & L).
  const Subspace low_branch(concat(lower.factors_, c.low->factors_));
  if (k <= d0 * block) {
    return Subspace(concat(low_branch.prefix(k).factors_, {ZeroQubit{}}));
  }
  const Subspace high_branch(concat(lower.factors_, c.high->factors_));
  return controlled(low_branch, high_branch.prefix(k - d0 * block));
}

bool Subspace::same_basis(const Subspace& other) const {
  if (qubits_ != other.qubits_ || dim_ != other.dim_) return false;
  if (*this == other) return true;
  return enumerate_basis() == other.enumerate_basis();
}

std::string Subspace::repr() const {
  std::string out;
  repr_into(*this, out);
  return out;
}

bool Subspace::operator==(const Subspace& other) const {
  return qubits_ == other.qubits_ && dim_ == other.dim_ && factors_ == other.factors_;
}

Subspace operator|(const Subspace& low, const Subspace& high) {
  return Subspace::controlled(low, high);
}

Subspace operator&(const Subspace& high, const Subspace& low) {
  return Subspace(concat(low.factors(), high.factors()));
}

Circuit membership_circuit(const Subspace& s) {
  const int n = s.qubit_count();
  if (s.is_full()) return Circuit(n + 1, 0);
  MembershipBuilder builder(n + 1);
  std::vector<Gate> body;
  builder.compute_in(s, 0, n, {}, body);
  Circuit circuit(n + 1, builder.scratch_used());
  if (body.size() == 1 && body[0].controls.size() == 1) {
    // flag ^= 1 ^ [control fires] collapses to a single flipped-polarity control.
    auto gate = body[0];
    gate.controls[0].polarity = !gate.controls[0].polarity;
    circuit.append(std::move(gate));
    return circuit;
  }
  circuit.append(Gate::single(GateKind::X, n));
  for (auto& g : body) circuit.append(std::move(g));
  return circuit;
}

}  // namespace be
