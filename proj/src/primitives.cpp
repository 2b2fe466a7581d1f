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

#include "be/primitives.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "be/errors.hpp"
#include "be/graph_json.hpp"

namespace be {

namespace {

int qubits_for(std::uint64_t d) {
  int q = 0;
  while ((std::uint64_t{1} << q) < d) ++q;
  return q;
}

void check_bits(int bits, const char* what) {
  if (bits < 1 || bits > 40) throw DomainError(std::string(what) + ": bits must be in [1, 40]");
}

class IdentityNode final : public Node {
 public:
  explicit IdentityNode(const Subspace& s) { init({1.0, s, s, 0, true, true}); }
  std::string op() const override { return "identity"; }
  nlohmann::json params() const override;

 protected:
  Vector forward(const Vector& v) const override { return v; }
  Vector backward(const Vector& w) const override { return w; }
  Circuit build_circuit() const override { return Circuit(width(), 0); }
};

// Basis relabeling on a full register: basis state k goes to image(k).
class IndexMapNode : public Node {
 protected:
  void init_full(int bits) {
    const Subspace s = Subspace::full(bits);
    init({1.0, s, s, 0, true, true});
  }
  virtual std::uint64_t image(std::uint64_t k) const = 0;

  Vector forward(const Vector& v) const override {
    Vector out(v.size());
    for (Eigen::Index k = 0; k < v.size(); ++k) out[image(k)] = v[k];
    return out;
  }
  Vector backward(const Vector& w) const override {
    Vector out(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k) out[k] = w[image(k)];
    return out;
  }
};

class IncrementNode final : public IndexMapNode {
 public:
  explicit IncrementNode(int bits) : bits_(bits) { init_full(bits); }
  std::string op() const override { return "increment"; }
  nlohmann::json params() const override { return {{"bits", bits_}}; }

 protected:
  std::uint64_t image(std::uint64_t k) const override {
    return (k + 1) & ((std::uint64_t{1} << bits_) - 1);
  }
  Circuit build_circuit() const override {
    Circuit c(bits_, 0);
    std::vector<int> qubits(bits_);
    std::iota(qubits.begin(), qubits.end(), 0);
    append_increment(c, qubits);
    return c;
  }

 private:
  int bits_;
};

class ConstantAdditionNode final : public IndexMapNode {
 public:
  ConstantAdditionNode(int bits, std::int64_t constant) : bits_(bits), constant_(constant) {
    const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
    shift_ = static_cast<std::uint64_t>(constant) & mask;
    init_full(bits);
  }
  std::string op() const override { return "constant_integer_addition"; }
  nlohmann::json params() const override { return {{"bits", bits_}, {"constant", constant_}}; }

 protected:
  std::uint64_t image(std::uint64_t k) const override {
    return (k + shift_) & ((std::uint64_t{1} << bits_) - 1);
  }
  Circuit build_circuit() const override {
    Circuit c(bits_, 0);
    for (int i = 0; i < bits_; ++i) {
      if (!((shift_ >> i) & 1)) continue;
      std::vector<int> qubits;
      for (int q = i; q < bits_; ++q) qubits.push_back(q);
      append_increment(c, qubits);
    }
    return c;
  }

 private:
  int bits_;
  std::int64_t constant_;
  std::uint64_t shift_;
};

class IntegerAdditionNode final : public IndexMapNode {
 public:
  IntegerAdditionNode(int source, int target) : source_(source), target_(target) {
    init_full(source + target);
  }
  std::string op() const override { return "integer_addition"; }
  nlohmann::json params() const override {
    return {{"source_bits", source_}, {"target_bits", target_}};
  }

 protected:
  std::uint64_t image(std::uint64_t k) const override {
    const std::uint64_t mask = (std::uint64_t{1} << target_) - 1;
    const std::uint64_t a = k >> target_;
    return (a << target_) | (((k & mask) + a) & mask);
  }
  Circuit build_circuit() const override {
    Circuit c(source_ + target_, 0);
    for (int i = 0; i < std::min(source_, target_); ++i) {
      std::vector<int> qubits;
      for (int q = i; q < target_; ++q) qubits.push_back(q);
      append_increment(c, qubits, {{target_ + i, true}});
    }
    return c;
  }

 private:
  int source_;
  int target_;
};

void fft(Vector& v, bool inverse_sign) {
  const Eigen::Index n = v.size();
  for (Eigen::Index i = 1, j = 0; i < n; ++i) {
    Eigen::Index bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[i], v[j]);
  }
  const double sign = inverse_sign ? -1.0 : 1.0;
  for (Eigen::Index len = 2; len <= n; len <<= 1) {
    const cplx w = std::polar(1.0, sign * 2 * std::numbers::pi / static_cast<double>(len));
    for (Eigen::Index i = 0; i < n; i += len) {
      cplx wk = 1.0;
      for (Eigen::Index k = 0; k < len / 2; ++k) {
        const cplx a = v[i + k], b = v[i + k + len / 2] * wk;
        v[i + k] = a + b;
        v[i + k + len / 2] = a - b;
        wk *= w;
      }
    }
  }
  v /= std::sqrt(static_cast<double>(n));
}

class QftNode final : public Node {
 public:
  explicit QftNode(int bits) : bits_(bits) {
    const Subspace s = Subspace::full(bits);
    init({1.0, s, s, 0, true, true});
  }
  std::string op() const override { return "qft"; }
  nlohmann::json params() const override { return {{"bits", bits_}}; }

 protected:
  Vector forward(const Vector& v) const override {
    Vector out = v;
    fft(out, false);
    return out;
  }
  Vector backward(const Vector& w) const override {
    Vector out = w;
    fft(out, true);
    return out;
  }
  Circuit build_circuit() const override {
    Circuit c(bits_, 0);
    for (int j = bits_ - 1; j >= 0; --j) {
      c.append(Gate::single(GateKind::H, j));
      for (int k = j - 1; k >= 0; --k) {
        c.append(Gate::rotation(GateKind::Phase, j, std::numbers::pi / std::ldexp(1.0, j - k),
                                {{k, true}}));
      }
    }
    for (int i = 0; i < bits_ / 2; ++i) c.append(Gate::swap(i, bits_ - 1 - i));
    return c;
  }

 private:
  int bits_;
};

class ConstantVectorNode final : public Node {
 public:
  explicit ConstantVectorNode(const Vector& entries) : entries_(entries) {
    if (entries.size() == 0) throw DomainError("constant_vector: empty vector");
    const double norm = entries.norm();
    if (!(norm > 0)) throw DomainError("constant_vector: zero vector");
    const int w = qubits_for(entries.size());
    init({norm, Subspace::zeros(w), Subspace::from_dim(entries.size()), 0, true, entries.size() == 1});
  }
  std::string op() const override { return "constant_vector"; }
  nlohmann::json params() const override {
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    bool complex = false;
    for (Eigen::Index i = 0; i < entries_.size(); ++i) {
      re.push_back(entries_[i].real());
      im.push_back(entries_[i].imag());
      complex = complex || entries_[i].imag() != 0.0;
    }
    nlohmann::json p{{"entries", re}};
    if (complex) p["imag"] = im;
    return p;
  }

 protected:
  Vector forward(const Vector& v) const override { return entries_ * v[0]; }
  Vector backward(const Vector& w) const override {
    Vector out(1);
    out[0] = entries_.dot(w);
    return out;
  }
  Circuit build_circuit() const override {
    Vector padded = Vector::Zero(Eigen::Index{1} << width());
    padded.head(entries_.size()) = entries_;
    return state_preparation(padded);
  }

 private:
  Vector entries_;
};

class PermutationNode final : public Node {
 public:
  explicit PermutationNode(std::vector<std::uint64_t> table) : table_(std::move(table)) {
    if (table_.empty()) throw DomainError("permutation: empty table");
    std::vector<bool> seen(table_.size(), false);
    for (auto t : table_) {
      if (t >= table_.size() || seen[t]) throw DomainError("permutation: table is not a bijection");
      seen[t] = true;
    }
    const Subspace s = Subspace::from_dim(table_.size());
    init({1.0, s, s, 0, true, true});
  }
  std::string op() const override { return "permutation"; }
  nlohmann::json params() const override { return {{"table", table_}}; }

 protected:
  Vector forward(const Vector& v) const override {
    Vector out(v.size());
    for (std::size_t k = 0; k < table_.size(); ++k) out[table_[k]] = v[k];
    return out;
  }
  Vector backward(const Vector& w) const override {
    Vector out(w.size());
    for (std::size_t k = 0; k < table_.size(); ++k) out[k] = w[table_[k]];
    return out;
  }
  Circuit build_circuit() const override {
    Circuit c(width(), 0);
    if (width() == 0) return c;
    std::vector<std::uint64_t> full(std::size_t{1} << width());
    std::iota(full.begin(), full.end(), 0);
    std::copy(table_.begin(), table_.end(), full.begin());
    std::vector<int> targets(width());
    std::iota(targets.begin(), targets.end(), 0);
    c.append(Gate::permutation(targets, std::move(full)));
    return c;
  }

 private:
  std::vector<std::uint64_t> table_;
};

class ProjectionNode final : public Node {
 public:
  ProjectionNode(const Subspace& parent, std::uint64_t keep_out, std::uint64_t keep_in)
      : parent_(parent), keep_out_(keep_out), keep_in_(keep_in) {
    init({1.0, parent.prefix(keep_in), parent.prefix(keep_out), 0, keep_in <= keep_out,
          keep_out <= keep_in});
  }
  std::string op() const override { return "projection"; }
  nlohmann::json params() const override;

 protected:
  Vector forward(const Vector& v) const override {
    Vector out = Vector::Zero(keep_out_);
    const auto n = std::min(keep_out_, keep_in_);
    out.head(n) = v.head(n);
    return out;
  }
  Vector backward(const Vector& w) const override {
    Vector out = Vector::Zero(keep_in_);
    const auto n = std::min(keep_out_, keep_in_);
    out.head(n) = w.head(n);
    return out;
  }
  Circuit build_circuit() const override { return Circuit(width(), 0); }

 private:
  Subspace parent_;
  std::uint64_t keep_out_;
  std::uint64_t keep_in_;
};

}  // namespace


nlohmann::json IdentityNode::params() const { return {{"subspace", subspace_to_json(subspace_in())}}; }

nlohmann::json ProjectionNode::params() const {
  return {{"parent", subspace_to_json(parent_)}, {"keep_out", keep_out_}, {"keep_in", keep_in_}};
}

void append_increment(Circuit& c, const std::vector<int>& qubits,
                      const std::vector<Control>& controls) {
  for (std::size_t j = qubits.size(); j-- > 1;) {
    std::vector<Control> ctl;
    for (std::size_t i = 0; i < j; ++i) ctl.push_back({qubits[i], true});
    ctl.insert(ctl.end(), controls.begin(), controls.end());
    c.append(Gate::single(GateKind::X, qubits[j], std::move(ctl)));
  }
  if (!qubits.empty()) c.append(Gate::single(GateKind::X, qubits[0], controls));
}

Circuit state_preparation(const Vector& amplitudes) {
  const int w = qubits_for(amplitudes.size());
  if ((Eigen::Index{1} << w) != amplitudes.size()) {
    throw ShapeError("state_preparation: length must be a power of two");
  }
  Circuit c(w, 0);
  // Subtree weights: level q holds the norms of blocks of 2^q amplitudes.
  std::vector<std::vector<double>> weight(w + 1);
  weight[0].resize(amplitudes.size());
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i) weight[0][i] = std::abs(amplitudes[i]);
  for (int q = 1; q <= w; ++q) {
    weight[q].resize(weight[q - 1].size() / 2);
    for (std::size_t i = 0; i < weight[q].size(); ++i) {
      weight[q][i] = std::hypot(weight[q - 1][2 * i], weight[q - 1][2 * i + 1]);
    }
  }
  for (int q = w - 1; q >= 0; --q) {
    std::vector<Gate> rotations;
    for (std::uint64_t prefix = 0; prefix < weight[q + 1].size(); ++prefix) {
      const double n0 = weight[q][2 * prefix], n1 = weight[q][2 * prefix + 1];
      if (n1 == 0.0) continue;
      const double theta = 2 * std::atan2(n1, n0);
      std::vector<Control> ctl;
      for (int h = w - 1; h > q; --h) ctl.push_back({h, ((prefix >> (h - q - 1)) & 1) != 0});
      rotations.push_back(Gate::rotation(GateKind::RY, q, theta, std::move(ctl)));
    }
    if (rotations.empty()) continue;
    // Z fixes the sign of the column orthogonal to |0>; on |0> it is trivial.
    c.append(Gate::single(GateKind::Z, q));
    for (auto& g : rotations) c.append(std::move(g));
  }
  for (Eigen::Index k = 0; k < amplitudes.size(); ++k) {
    if (amplitudes[k] == 0.0) continue;
    const double phase = std::arg(amplitudes[k]);
    if (phase == 0.0) continue;
    std::vector<Control> ctl;
    for (int q = 0; q < w; ++q) ctl.push_back({q, ((k >> q) & 1) != 0});
    c.append(Gate::global_phase(phase, std::move(ctl)));
  }
  return c;
}

NodePtr identity(const Subspace& s) { return std::make_shared<IdentityNode>(s); }
NodePtr identity(std::uint64_t dim) { return identity(Subspace::from_dim(dim)); }

NodePtr increment(int bits) {
  check_bits(bits, "increment");
  return std::make_shared<IncrementNode>(bits);
}

NodePtr constant_integer_addition(int bits, std::int64_t constant) {
  check_bits(bits, "constant_integer_addition");
  return std::make_shared<ConstantAdditionNode>(bits, constant);
}

NodePtr integer_addition(int source_bits, int target_bits) {
  check_bits(source_bits, "integer_addition");
  check_bits(target_bits, "integer_addition");
  if (source_bits + target_bits > 40) throw DomainError("integer_addition: register too wide");
  return std::make_shared<IntegerAdditionNode>(source_bits, target_bits);
}

NodePtr qft(int bits) {
  check_bits(bits, "qft");
  return std::make_shared<QftNode>(bits);
}

NodePtr constant_vector(const Vector& entries) {
  return std::make_shared<ConstantVectorNode>(entries);
}

NodePtr permutation(const std::vector<std::uint64_t>& table) {
  return std::make_shared<PermutationNode>(table);
}

NodePtr projection(const Subspace& parent, std::uint64_t keep_out, std::uint64_t keep_in) {
  return std::make_shared<ProjectionNode>(parent, keep_out, keep_in);
}

}  // namespace be
