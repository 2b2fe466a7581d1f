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

#include "be/graph_json.hpp"

#include <fstream>
#include <set>

#include "be/composites.hpp"
#include "be/errors.hpp"
#include "be/primitives.hpp"
#include "be/qsvt.hpp"

namespace be {

using nlohmann::json;

namespace {

const std::set<std::string>& primitive_ops() {
  static const std::set<std::string> ops{"identity", "increment", "constant_integer_addition",
                                         "integer_addition", "qft", "constant_vector",
                                         "permutation", "projection", "zero"};
  return ops;
}

bool simple_factor(const Subspace::Factor& f) {
  if (std::holds_alternative<Subspace::ZeroQubit>(f)) return true;
  const auto& c = std::get<Subspace::Controlled>(f);
  return c.low->qubit_count() == 0;
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

Slice slice_from_json(const json& j) {
  if (j.is_null()) return Slice::all();
  if (!j.is_array() || j.size() > 3) throw FormatError("slice must be [start, stop, step]");
  Slice s;
  auto opt = [&](std::size_t i) -> std::optional<std::int64_t> {
    if (i >= j.size() || j[i].is_null()) return std::nullopt;
    if (!j[i].is_number_integer()) throw FormatError("slice bounds must be integers");
    return j[i].get<std::int64_t>();
  };
  s.start = opt(0);
  s.stop = opt(1);
  if (auto step = opt(2)) s.step = *step;
  return s;
}

cplx scalar_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw FormatError("scalar must be a number or [re, im]");
}

}  // namespace

json subspace_to_json(const Subspace& s) {
  if (s.qubit_count() == 0) return {{"dim", 1}};
  const auto& f = s.factors();
  json parts = json::array();
  std::string pattern;
  auto flush = [&] {
    if (!pattern.empty()) parts.push_back({{"pattern", pattern}});
    pattern.clear();
  };
  for (std::size_t i = f.size(); i-- > 0;) {
    if (simple_factor(f[i])) {
      pattern += std::holds_alternative<Subspace::ZeroQubit>(f[i]) ? '0' : '#';
    } else {
      flush();
      const auto& c = std::get<Subspace::Controlled>(f[i]);
      parts.push_back({{"or", json::array({subspace_to_json(*c.low), subspace_to_json(*c.high)})}});
    }
  }
  flush();
  if (parts.size() == 1) return parts[0];
  return {{"and", parts}};
}

Subspace subspace_from_json(const json& j) {
  if (!j.is_object() || j.size() != 1) throw FormatError("subspace must be an object with one key");
  if (j.contains("pattern")) return Subspace::from_string(field<std::string>(j, "pattern"));
  if (j.contains("dim")) {
    const auto d = field<std::int64_t>(j, "dim");
    if (d < 1) throw FormatError("subspace dim must be positive");
    return Subspace::from_dim(static_cast<std::uint64_t>(d));
  }
  if (j.contains("or")) {
    const json& a = j.at("or");
    if (!a.is_array() || a.size() != 2) throw FormatError("'or' takes two subspaces");
    return subspace_from_json(a[0]) | subspace_from_json(a[1]);
  }
  if (j.contains("and")) {
    const json& a = j.at("and");
    if (!a.is_array() || a.empty()) throw FormatError("'and' takes a nonempty list");
    Subspace out = subspace_from_json(a[0]);
    for (std::size_t i = 1; i < a.size(); ++i) out = out & subspace_from_json(a[i]);
    return out;
  }
  throw FormatError("unknown subspace form " + j.dump());
}

json node_to_json(const NodePtr& n) {
  const std::string op = n->op();
  json params = n->params();
  if (primitive_ops().count(op)) {
    json out{{"op", op}};
    for (auto& [k, v] : params.items()) out[k] = v;
    return out;
  }
  json args = json::array();
  for (const auto& a : n->args()) args.push_back(node_to_json(a));
  json out{{"op", op}, {"args", args}};
  if (!params.empty()) out["params"] = params;
  return out;
}

NodePtr node_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("node must be a JSON object");
  const auto op = field<std::string>(j, "op");

  if (op == "identity") {
    if (j.contains("subspace")) return identity(subspace_from_json(j.at("subspace")));
    return identity(field<std::uint64_t>(j, "dim"));
  }
  if (op == "increment") return increment(field<int>(j, "bits"));
  if (op == "constant_integer_addition") {
    return constant_integer_addition(field<int>(j, "bits"), field<std::int64_t>(j, "constant"));
  }
  if (op == "integer_addition") {
    return integer_addition(field<int>(j, "source_bits"), field<int>(j, "target_bits"));
  }
  if (op == "qft") return qft(field<int>(j, "bits"));
  if (op == "constant_vector") {
    const auto re = field<std::vector<double>>(j, "entries");
    std::vector<double> im(re.size(), 0.0);
    if (j.contains("imag")) im = field<std::vector<double>>(j, "imag");
    if (im.size() != re.size()) throw FormatError("constant_vector: 'imag' length differs");
    Vector v(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) v[i] = {re[i], im[i]};
    return constant_vector(v);
  }
  if (op == "permutation") return permutation(field<std::vector<std::uint64_t>>(j, "table"));
  if (op == "projection") {
    return projection(subspace_from_json(j.at("parent")), field<std::uint64_t>(j, "keep_out"),
                      field<std::uint64_t>(j, "keep_in"));
  }
  if (op == "zero") return zero(subspace_from_json(j.at("in")), subspace_from_json(j.at("out")));

  const json args_json = j.contains("args") ? j.at("args") : json::array();
  if (!args_json.is_array()) throw FormatError(op + ": 'args' must be a list");
  std::vector<NodePtr> args;
  for (const auto& a : args_json) args.push_back(node_from_json(a));
  const json params = j.contains("params") ? j.at("params") : json::object();
  auto arity = [&](std::size_t n) {
    if (args.size() != n) {
      throw FormatError(op + " takes " + std::to_string(n) + " argument(s), got " +
                        std::to_string(args.size()));
    }
  };

  if (op == "add" || op == "sub" || op == "matmul" || op == "tensor" || op == "blockdiag") {
    arity(2);
    if (op == "add") return add(args[0], args[1]);
    if (op == "sub") return sub(args[0], args[1]);
    if (op == "tensor") return tensor(args[0], args[1]);
    if (op == "blockdiag") return block_diagonal(args[0], args[1]);
    ProductCheck check = ProductCheck::Auto;
    if (params.contains("check")) {
      const auto mode = field<std::string>(params, "check");
      if (mode == "force") {
        check = ProductCheck::Force;
      } else if (mode == "skip") {
        check = ProductCheck::Skip;
      } else if (mode != "auto") {
        throw FormatError("matmul: check must be auto, force or skip");
      }
    }
    return product(args[0], args[1], check);
  }
  arity(1);
  if (op == "adjoint") return adjoint(args[0]);
  if (op == "scale") {
    if (!params.contains("factor")) throw FormatError("scale: missing 'factor'");
    return scale(scalar_from_json(params.at("factor")), args[0]);
  }
  if (op == "subnormalize") return subnormalize(args[0], field<double>(params, "factor"));
  if (op == "slice") {
    return slice(args[0], slice_from_json(params.value("rows", json())),
                 slice_from_json(params.value("cols", json())));
  }
  if (op == "qsvt") {
    auto coef = field<std::vector<double>>(params, "chebyshev");
    if (params.contains("parity")) {
      const auto p = field<std::string>(params, "parity");
      if (p != "odd" && p != "even") throw FormatError("qsvt: parity must be odd or even");
      return qsvt(args[0], TargetPolynomial(coef, p == "odd" ? Parity::Odd : Parity::Even));
    }
    return qsvt(args[0], TargetPolynomial::from_chebyshev(coef));
  }
  if (op == "pseudoinverse") {
    std::optional<double> delta;
    if (params.contains("delta")) delta = field<double>(params, "delta");
    return pseudoinverse(args[0], field<double>(params, "condition"), field<double>(params, "tolerance"),
                         delta);
  }
  throw FormatError("unknown op '" + op + "'");
}

json graph_document(const NodePtr& root, json metadata) {
  return {{"version", 1}, {"root", node_to_json(root)}, {"metadata", std::move(metadata)}};
}

NodePtr parse_graph_document(const json& doc) {
  if (!doc.is_object()) throw FormatError("graph document must be an object");
  if (field<int>(doc, "version") != 1) throw FormatError("unsupported graph version");
  if (!doc.contains("root")) throw FormatError("graph document has no root");
  return node_from_json(doc.at("root"));
}

NodePtr load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
  return parse_graph_document(doc);
}

}  // namespace be
