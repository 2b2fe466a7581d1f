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

#include "be/composites.hpp"

#include <cmath>
#include <numeric>

#include "be/errors.hpp"
#include "be/graph_json.hpp"
#include "be/primitives.hpp"

namespace be {

namespace {

std::vector<int> iota_map(int n, int offset = 0) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), offset);
  return m;
}

nlohmann::json scalar_json(cplx c) {
  if (c.imag() == 0.0) return c.real();
  return nlohmann::json::array({c.real(), c.imag()});
}

class AdjointNode final : public Node {
 public:
  explicit AdjointNode(NodePtr a) : a_(std::move(a)) {
    init({a_->normalization(), a_->subspace_out(), a_->subspace_in(), a_->ancilla_qubits(),
          a_->maps_out_to_in(), a_->maps_in_to_out()});
  }
  std::string op() const override { return "adjoint"; }
  std::vector<NodePtr> args() const override { return {a_}; }
  const NodePtr& child() const { return a_; }

 protected:
  Vector forward(const Vector& v) const override { return a_->adjoint_compute(v); }
  Vector backward(const Vector& w) const override { return a_->compute(w); }
  Circuit build_circuit() const override { return a_->circuit().adjoint(); }

 private:
  NodePtr a_;
};

class ScaleNode final : public Node {
 public:
  ScaleNode(cplx c, NodePtr a) : c_(c), a_(std::move(a)) {
    init({std::abs(c) * a_->normalization(), a_->subspace_in(), a_->subspace_out(),
          a_->ancilla_qubits(), a_->maps_in_to_out(), a_->maps_out_to_in()});
  }
  std::string op() const override { return "scale"; }
  std::vector<NodePtr> args() const override { return {a_}; }
  nlohmann::json params() const override { return {{"factor", scalar_json(c_)}}; }

 protected:
  Vector forward(const Vector& v) const override { return c_ * a_->compute(v); }
  Vector backward(const Vector& w) const override { return std::conj(c_) * a_->adjoint_compute(w); }
  Circuit build_circuit() const override {
    Circuit c = a_->circuit();
    const double phase = std::arg(c_);
    if (phase != 0.0) c.append(Gate::global_phase(phase));
    return c;
  }

 private:
  cplx c_;
  NodePtr a_;
};

// Every representable subspace contains index 0, so the zero matrix needs a
// flipped extra qubit to separate the two sectors.
class ZeroNode final : public Node {
 public:
  ZeroNode(const Subspace& in, const Subspace& out) : in0_(in), out0_(out) {
    const int w = std::max(in.qubit_count(), out.qubit_count()) + 1;
    init({1.0, in.padded(w), out.padded(w), 0, false, false});
  }
  std::string op() const override { return "zero"; }
  nlohmann::json params() const override {
    return {{"in", subspace_to_json(in0_)}, {"out", subspace_to_json(out0_)}};
  }

 protected:
  Vector forward(const Vector&) const override { return Vector::Zero(dim_out()); }
  Vector backward(const Vector&) const override { return Vector::Zero(dim_in()); }
  Circuit build_circuit() const override {
    Circuit c(width(), 0);
    c.append(Gate::single(GateKind::X, width() - 1));
    return c;
  }

 private:
  Subspace in0_;
  Subspace out0_;
};

class SubnormalizeNode final : public Node {
 public:
  SubnormalizeNode(NodePtr a, double factor) : a_(std::move(a)), factor_(factor) {
    if (!(factor > 0 && factor <= 1)) throw DomainError("subnormalize: factor must be in (0, 1]");
    const int w = a_->width() + 1;
    init({a_->normalization() / factor, a_->subspace_in().padded(w), a_->subspace_out().padded(w),
          a_->ancilla_qubits(), false, false});
  }
  std::string op() const override { return "subnormalize"; }
  std::vector<NodePtr> args() const override { return {a_}; }
  nlohmann::json params() const override { return {{"factor", factor_}}; }

 protected:
  Vector forward(const Vector& v) const override { return a_->compute(v); }
  Vector backward(const Vector& w) const override { return a_->adjoint_compute(w); }
  Circuit build_circuit() const override {
    Circuit c(width(), ancilla_qubits());
    embed_identity(c, *a_);
    c.append(Gate::rotation(GateKind::RY, width() - 1, 2 * std::acos(factor_)));
    return c;
  }

 private:
  NodePtr a_;
  double factor_;
};

class ProductNode final : public Node {
 public:
  ProductNode(NodePtr a, NodePtr b, ProductCheck mode) : a_(std::move(a)), b_(std::move(b)), mode_(mode) {
    if (a_->dim_in() != b_->dim_out()) {
      throw ShapeError("product: inner dimensions " + std::to_string(a_->dim_in()) + " and " +
                       std::to_string(b_->dim_out()) + " differ");
    }
    w0_ = std::max(a_->width(), b_->width());
    a_in_ = a_->subspace_in().padded(w0_);
    b_out_ = b_->subspace_out().padded(w0_);
    aligned_ = b_out_.same_basis(a_in_);
    const bool certified = b_->maps_in_to_out() || a_->maps_out_to_in() || a_in_.is_full();
    check_ = mode == ProductCheck::Force || (mode == ProductCheck::Auto && !certified);
    unchecked_ = mode == ProductCheck::Skip && !certified;
    if (!aligned_ && w0_ > 30) throw BudgetError("product: alignment permutation too wide");

    int ancillas = std::max(a_->ancilla_qubits(), b_->ancilla_qubits());
    int w = w0_;
    if (check_) {
      membership_ = membership_circuit(a_in_);
      ancillas = std::max(ancillas, membership_.ancilla_qubits());
      w = w0_ + 1;
    }
    init({a_->normalization() * b_->normalization(), b_->subspace_in().padded(w),
          a_->subspace_out().padded(w), ancillas, a_->maps_in_to_out() && b_->maps_in_to_out(),
          a_->maps_out_to_in() && b_->maps_out_to_in()});
  }
  std::string op() const override { return "matmul"; }
  std::vector<NodePtr> args() const override { return {a_, b_}; }
  nlohmann::json params() const override {
    switch (mode_) {
      case ProductCheck::Force: return {{"check", "force"}};
      case ProductCheck::Skip: return {{"check", "skip"}};
      default: return nlohmann::json::object();
    }
  }
  std::vector<std::string> assumptions() const override {
    if (!unchecked_) return {};
    return {"product: intermediate subspace check skipped without a certificate"};
  }

 protected:
  Vector forward(const Vector& v) const override { return a_->compute(b_->compute(v)); }
  Vector backward(const Vector& w) const override {
    return b_->adjoint_compute(a_->adjoint_compute(w));
  }
  Circuit build_circuit() const override {
    Circuit c(width(), ancilla_qubits());
    embed_identity(c, *b_);
    if (!aligned_) c.append(Gate::permutation(iota_map(w0_), alignment()));
    if (check_) {
      std::vector<int> map = iota_map(w0_ + 1);
      for (int j = 0; j < membership_.ancilla_qubits(); ++j) map.push_back(width() + j);
      c.append(membership_, map);
    }
    embed_identity(c, *a_);
    return c;
  }

 private:
  // Sends the k-th basis state of b's output to the k-th of a's input and
  // the complements onto each other in increasing order.
  std::vector<std::uint64_t> alignment() const {
    const std::uint64_t size = std::uint64_t{1} << w0_;
    std::vector<std::uint64_t> table(size);
    const auto from = b_out_.enumerate_basis();
    const auto to = a_in_.enumerate_basis();
    std::vector<bool> in_from(size, false), in_to(size, false);
    for (std::size_t k = 0; k < from.size(); ++k) {
      table[from[k]] = to[k];
      in_from[from[k]] = true;
      in_to[to[k]] = true;
    }
    std::uint64_t next = 0;
    for (std::uint64_t x = 0; x < size; ++x) {
      if (in_from[x]) continue;
      while (in_to[next]) ++next;
      table[x] = next++;
    }
    return table;
  }

  NodePtr a_;
  NodePtr b_;
  ProductCheck mode_;
  int w0_ = 0;
  Subspace a_in_;
  Subspace b_out_;
  bool aligned_ = true;
  bool check_ = false;
  bool unchecked_ = false;
  Circuit membership_;
};

class TensorNode final : public Node {
 public:
  TensorNode(NodePtr high, NodePtr low) : a_(std::move(high)), b_(std::move(low)) {
    init({a_->normalization() * b_->normalization(), a_->subspace_in() & b_->subspace_in(),
          a_->subspace_out() & b_->subspace_out(),
          std::max(a_->ancilla_qubits(), b_->ancilla_qubits()),
          a_->maps_in_to_out() && b_->maps_in_to_out(),
          a_->maps_out_to_in() && b_->maps_out_to_in()});
  }
  std::string op() const override { return "tensor"; }
  std::vector<NodePtr> args() const override { return {a_, b_}; }

 protected:
  Vector forward(const Vector& v) const override { return apply_kron(v, false); }
  Vector backward(const Vector& w) const override { return apply_kron(w, true); }
  Circuit build_circuit() const override {
    Circuit c(width(), ancilla_qubits());
    embed_identity(c, *b_);
    embed(c, *a_, iota_map(a_->width(), b_->width()));
    return c;
  }

 private:
  Vector apply_kron(const Vector& v, bool adjoint) const {
    const auto a_in = adjoint ? a_->dim_out() : a_->dim_in();
    const auto a_out = adjoint ? a_->dim_in() : a_->dim_out();
    const auto b_in = adjoint ? b_->dim_out() : b_->dim_in();
    const auto b_out = adjoint ? b_->dim_in() : b_->dim_out();
    auto apply_a = [&](const Vector& x) { return adjoint ? a_->adjoint_compute(x) : a_->compute(x); };
    auto apply_b = [&](const Vector& x) { return adjoint ? b_->adjoint_compute(x) : b_->compute(x); };
    // Column i of `mid` is B applied to block i of v.
    Matrix mid(b_out, a_in);
    for (std::uint64_t i = 0; i < a_in; ++i) mid.col(i) = apply_b(v.segment(i * b_in, b_in));
    Vector out(a_out * b_out);
    for (std::uint64_t r = 0; r < b_out; ++r) {
      const Vector row = apply_a(mid.row(r).transpose());
      for (std::uint64_t i = 0; i < a_out; ++i) out[i * b_out + r] = row[i];
    }
    return out;
  }

  NodePtr a_;
  NodePtr b_;
};

class BlockDiagNode final : public Node {
 public:
  BlockDiagNode(NodePtr a, NodePtr b) : a_(std::move(a)), b_(std::move(b)) {
    const double ga = a_->normalization(), gb = b_->normalization();
    const double g = std::max(ga, gb);
    pa_ = a_;
    pb_ = b_;
    if (ga < g * (1 - 1e-12)) pa_ = subnormalize(a_, ga / g);
    if (gb < g * (1 - 1e-12)) pb_ = subnormalize(b_, gb / g);
    const int w = std::max(pa_->width(), pb_->width());
    init({g, pa_->subspace_in().padded(w) | pb_->subspace_in().padded(w),
          pa_->subspace_out().padded(w) | pb_->subspace_out().padded(w),
          std::max(pa_->ancilla_qubits(), pb_->ancilla_qubits()),
          pa_->maps_in_to_out() && pb_->maps_in_to_out(),
          pa_->maps_out_to_in() && pb_->maps_out_to_in()});
  }
  std::string op() const override { return "blockdiag"; }
  std::vector<NodePtr> args() const override { return {a_, b_}; }
  std::vector<NodePtr> parts() const override { return {pa_, pb_}; }

 protected:
  Vector forward(const Vector& v) const override {
    Vector out(dim_out());
    out << a_->compute(v.head(a_->dim_in())), b_->compute(v.tail(b_->dim_in()));
    return out;
  }
  Vector backward(const Vector& w) const override {
    Vector out(dim_in());
    out << a_->adjoint_compute(w.head(a_->dim_out())), b_->adjoint_compute(w.tail(b_->dim_out()));
    return out;
  }
  Circuit build_circuit() const override {
    Circuit c(width(), ancilla_qubits());
    const int sel = width() - 1;
    const Control low[] = {{sel, false}};
    const Control high[] = {{sel, true}};
    embed_identity(c, *pa_, low);
    embed_identity(c, *pb_, high);
    return c;
  }

 private:
  NodePtr a_;
  NodePtr b_;
  NodePtr pa_;
  NodePtr pb_;
};

// Linear combination of unitaries:
//   prep^dagger (diag(a / gamma_a, b / gamma_b)) prep,
// with prep = (sqrt(gamma_a), sqrt(gamma_b)) on a new selector qubit.
class AddNode final : public ProxyNode {
 public:
  AddNode(NodePtr a, NodePtr b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_->dim_in() != b_->dim_in() || a_->dim_out() != b_->dim_out()) {
      throw ShapeError("add: operand shapes differ");
    }
    const double ga = a_->normalization(), gb = b_->normalization();
    const int w = std::max(a_->width(), b_->width());
    Vector weights(2);
    weights << std::sqrt(ga), std::sqrt(gb);
    const NodePtr prep = constant_vector(weights);
    const NodePtr right = tensor(prep, identity(a_->subspace_in().padded(w)));
    const NodePtr left = adjoint(tensor(prep, identity(a_->subspace_out().padded(w))));
    const NodePtr middle = block_diagonal(scale(1.0 / ga, a_), scale(1.0 / gb, b_));
    set_expansion(product(left, product(middle, right)), ga + gb);
  }
  std::string op() const override { return "add"; }
  std::vector<NodePtr> args() const override { return {a_, b_}; }

 protected:
  Vector forward(const Vector& v) const override { return a_->compute(v) + b_->compute(v); }
  Vector backward(const Vector& w) const override {
    return a_->adjoint_compute(w) + b_->adjoint_compute(w);
  }

 private:
  NodePtr a_;
  NodePtr b_;
};

nlohmann::json slice_json(const Slice& s) {
  auto opt = [](const std::optional<std::int64_t>& x) { return x ? nlohmann::json(*x) : nlohmann::json(); };
  return nlohmann::json::array({opt(s.start), opt(s.stop), s.step});
}

bool is_full_range(const std::vector<std::uint64_t>& idx, std::uint64_t n) {
  if (idx.size() != n) return false;
  for (std::uint64_t k = 0; k < n; ++k) {
    if (idx[k] != k) return false;
  }
  return true;
}

// Matrix with rows e_{idx[k]}^T, i.e. picks entries idx of a vector in `parent`.
NodePtr selector(const Subspace& parent, const std::vector<std::uint64_t>& idx) {
  const std::uint64_t n = parent.dim();
  if (idx.empty()) throw ShapeError("slice: empty selection");
  bool prefix = true;
  for (std::uint64_t k = 0; k < idx.size(); ++k) prefix = prefix && idx[k] == k;
  if (prefix) return projection(parent, idx.size(), n);
  std::vector<std::uint64_t> table(n);
  std::vector<bool> chosen(n, false);
  for (std::uint64_t k = 0; k < idx.size(); ++k) {
    if (chosen[idx[k]]) throw ShapeError("slice: repeated index");
    chosen[idx[k]] = true;
    table[idx[k]] = k;
  }
  std::uint64_t next = idx.size();
  for (std::uint64_t x = 0; x < n; ++x) {
    if (!chosen[x]) table[x] = next++;
  }
  const Subspace dense = Subspace::from_dim(n);
  return product(projection(dense, idx.size(), n), permutation(table));
}

class SliceNode final : public ProxyNode {
 public:
  SliceNode(NodePtr a, Slice rows, Slice cols) : a_(std::move(a)), rows_(rows), cols_(cols) {
    NodePtr e = a_;
    const auto r = rows.indices(a_->dim_out());
    const auto c = cols.indices(a_->dim_in());
    if (!is_full_range(r, a_->dim_out())) e = product(selector(a_->subspace_out(), r), e);
    if (!is_full_range(c, a_->dim_in())) e = product(e, adjoint(selector(a_->subspace_in(), c)));
    set_expansion(e);
  }
  std::string op() const override { return "slice"; }
  std::vector<NodePtr> args() const override { return {a_}; }
  nlohmann::json params() const override {
    return {{"rows", slice_json(rows_)}, {"cols", slice_json(cols_)}};
  }

 private:
  NodePtr a_;
  Slice rows_;
  Slice cols_;
};

bool is_zero(const NodePtr& n) { return n->op() == "zero"; }

}  // namespace

std::vector<std::uint64_t> Slice::indices(std::uint64_t n) const {
  if (step == 0) throw DomainError("slice step cannot be zero");
  const auto len = static_cast<std::int64_t>(n);
  auto clamp = [&](std::optional<std::int64_t> x, std::int64_t fallback) {
    if (!x) return fallback;
    std::int64_t v = *x;
    if (v < 0) v += len;
    if (step > 0) return std::clamp<std::int64_t>(v, 0, len);
    return std::clamp<std::int64_t>(v, -1, len - 1);
  };
  const std::int64_t lo = clamp(start, step > 0 ? 0 : len - 1);
  const std::int64_t hi = clamp(stop, step > 0 ? len : -1);
  std::vector<std::uint64_t> out;
  for (std::int64_t i = lo; step > 0 ? i < hi : i > hi; i += step) out.push_back(i);
  return out;
}

NodePtr adjoint(const NodePtr& a) {
  if (auto adj = std::dynamic_pointer_cast<const AdjointNode>(a)) return adj->child();
  if (a->op() == "identity") return a;
  return std::make_shared<AdjointNode>(a);
}

NodePtr scale(cplx c, const NodePtr& a) {
  if (c == 0.0) return zero(a->subspace_in(), a->subspace_out());
  if (c == 1.0) return a;
  return std::make_shared<ScaleNode>(c, a);
}

NodePtr product(const NodePtr& a, const NodePtr& b, ProductCheck check) {
  return std::make_shared<ProductNode>(a, b, check);
}

NodePtr tensor(const NodePtr& high, const NodePtr& low) {
  return std::make_shared<TensorNode>(high, low);
}

NodePtr block_diagonal(const NodePtr& a, const NodePtr& b) {
  return std::make_shared<BlockDiagNode>(a, b);
}

NodePtr add(const NodePtr& a, const NodePtr& b) {
  if (a->dim_in() != b->dim_in() || a->dim_out() != b->dim_out()) {
    throw ShapeError("add: operand shapes differ");
  }
  if (is_zero(b)) return a;
  if (is_zero(a)) return b;
  return std::make_shared<AddNode>(a, b);
}

NodePtr sub(const NodePtr& a, const NodePtr& b) { return add(a, scale(-1.0, b)); }

NodePtr zero(const Subspace& in, const Subspace& out) {
  return std::make_shared<ZeroNode>(in, out);
}

NodePtr subnormalize(const NodePtr& a, double factor) {
  return std::make_shared<SubnormalizeNode>(a, factor);
}

NodePtr slice(const NodePtr& a, const Slice& rows, const Slice& cols) {
  return std::make_shared<SliceNode>(a, rows, cols);
}

NodePtr operator+(const NodePtr& a, const NodePtr& b) { return add(a, b); }
NodePtr operator-(const NodePtr& a, const NodePtr& b) { return sub(a, b); }
NodePtr operator-(const NodePtr& a) { return scale(-1.0, a); }
NodePtr operator*(const NodePtr& a, const NodePtr& b) { return product(a, b); }
NodePtr operator*(cplx c, const NodePtr& a) { return scale(c, a); }
NodePtr operator*(double c, const NodePtr& a) { return scale(c, a); }
NodePtr operator&(const NodePtr& high, const NodePtr& low) { return tensor(high, low); }
NodePtr operator|(const NodePtr& a, const NodePtr& b) { return block_diagonal(a, b); }

}  // namespace be
