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

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "be/circuit.hpp"
#include "be/demos.hpp"
#include "be/errors.hpp"
#include "be/graph_json.hpp"
#include "be/node.hpp"

using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

json vector_json(const be::Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v[i].real(), v[i].imag()});
  return out;
}

json matrix_json(const be::Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r).transpose()));
  return out;
}

be::Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw be::FormatError("input vector must be a JSON list");
  be::Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_number()) {
      v[i] = j[i].get<double>();
    } else if (j[i].is_array() && j[i].size() == 2) {
      v[i] = {j[i][0].get<double>(), j[i][1].get<double>()};
    } else {
      throw be::FormatError("input entries must be numbers or [re, im] pairs");
    }
  }
  return v;
}

be::Vector read_input(const std::string& source, std::uint64_t dim) {
  if (source.empty()) {
    if (dim != 1) throw be::FormatError("--input is required unless the input dimension is 1");
    return be::Vector::Ones(1);
  }
  if (source.rfind("basis:", 0) == 0) {
    std::size_t k = 0;
    try {
      k = std::stoull(source.substr(6));
    } catch (const std::exception&) {
      throw be::FormatError("bad basis index in '" + source + "'");
    }
    if (k >= dim) throw be::ShapeError("basis index " + std::to_string(k) + " out of range");
    be::Vector v = be::Vector::Zero(dim);
    v[k] = 1.0;
    return v;
  }
  std::ifstream in(source);
  if (!in) throw be::FormatError("cannot open " + source);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw be::FormatError(source + ": " + e.what());
  }
  return vector_from_json(j);
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

json increment_demo() {
  const be::NodePtr inc = be::node_from_json({{"op", "increment"}, {"bits", 2}});
  json gates = json::array();
  for (const auto& g : inc->circuit().gates()) {
    json controls = json::array();
    for (const auto& c : g.controls) controls.push_back(c.qubit);
    gates.push_back({{"gate", be::kind_name(g.kind)}, {"target", g.targets}, {"control", controls}});
  }
  be::Vector e1 = be::Vector::Zero(4);
  e1[1] = 1.0;
  return {{"circuit", gates},
          {"qubits", inc->width()},
          {"subspace_in", inc->subspace_in().enumerate_basis()},
          {"normalization", inc->normalization()},
          {"simulate", vector_json(be::simulate(inc, e1))},
          {"compute", vector_json(inc->compute(e1))},
          {"toarray", matrix_json(be::toarray(inc))},
          {"verify", be::verify(inc).max_error}};
}

json laplace_demo(int n, double tolerance, be::NodePtr& root) {
  const auto r = be::laplace_demo(n, tolerance);
  root = r.solution;
  const be::Matrix a = be::toarray(r.matrix);
  const be::Vector b = be::toarray(r.rhs).col(0);
  const be::Vector u = a.fullPivLu().solve(b);
  const double reference = u.norm() * std::pow(2.0, -n / 2.0);
  return {{"N", n},
          {"tolerance", tolerance},
          {"condition", r.condition},
          {"normalization_A", r.matrix->normalization()},
          {"normalization_inverse", r.inverse->normalization()},
          {"qoi", r.qoi},
          {"qoi_dense_solve", reference},
          {"relative_error", std::abs(r.qoi - reference) / reference},
          {"resources", be::to_json(be::resources(*r.solution))}};
}

json convolution_demo(be::NodePtr& root) {
  const be::Vector k = be::gaussian_kernel();
  root = be::convolution(k);
  const be::Matrix m = be::toarray(root);
  double err = 0;
  for (Eigen::Index i = 0; i < 8; ++i) {
    for (Eigen::Index j = 0; j < 8; ++j) {
      const auto offset = i - j;
      const be::cplx expect = std::abs(offset) <= 3 ? k[offset + 3] : 0.0;
      err = std::max(err, std::abs(m(i, j) - expect));
    }
  }
  return {{"kernel", vector_json(k)},
          {"normalization", root->normalization()},
          {"toarray", matrix_json(m)},
          {"toeplitz_max_error", err},
          {"verify", be::verify(root, 1e-10).max_error},
          {"resources", be::to_json(be::resources(*root))}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block-encoding toolkit"};
  app.require_subcommand(1);

  std::string graph, input;
  bool use_circuit = false, lower = false, dump_graph = false;
  double tol = 1e-10, tolerance = 0.01;
  int n = 3;
  std::optional<double> eta;
  std::string demo_name;

  auto* eval = app.add_subcommand("eval", "Apply the encoded matrix to a vector");
  eval->add_option("graph", graph, "Graph document")->required();
  eval->add_option("--input", input, "basis:<k> or a JSON file holding a list");
  eval->add_flag("--simulate", use_circuit, "Use the circuit simulator");

  auto* ver = app.add_subcommand("verify", "Compare circuit and arithmetic paths");
  ver->add_option("graph", graph, "Graph document")->required();
  ver->add_option("--tol", tol, "Maximum allowed deviation");

  auto* est = app.add_subcommand("estimate", "Resource report");
  est->add_option("graph", graph, "Graph document")->required();
  est->add_option("--eta", eta, "Information efficiency, if known");

  auto* emit = app.add_subcommand("emit", "OpenQASM 3 export");
  emit->add_option("graph", graph, "Graph document")->required();
  emit->add_flag("--lower", lower, "Expand permutation gates");

  auto* demo = app.add_subcommand("demo", "Built-in examples");
  demo->add_option("name", demo_name, "increment | laplace | convolution")
      ->required()
      ->check(CLI::IsMember({"increment", "laplace", "convolution"}));
  demo->add_option("--N", n, "Laplace grid exponent");
  demo->add_option("--tolerance", tolerance, "Laplace pseudoinverse tolerance");
  demo->add_flag("--dump-graph", dump_graph, "Print the demo's graph document instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) {
      const auto root = be::load_graph(graph);
      const be::Vector v = read_input(input, root->dim_in());
      print(vector_json(use_circuit ? be::simulate(root, v) : root->compute(v)));
    } else if (*ver) {
      const auto root = be::load_graph(graph);
      const auto r = be::verify(root, tol);
      print({{"pass", r.pass}, {"max_error", r.max_error}, {"worst_column", r.worst_column}, {"tol", tol}});
      return r.pass ? kOk : kVerifyFailed;
    } else if (*est) {
      print(be::to_json(be::resources(*be::load_graph(graph), eta)));
    } else if (*emit) {
      std::cout << be::export_qasm(be::load_graph(graph)->circuit(), lower);
    } else if (*demo) {
      be::NodePtr root;
      json report;
      if (demo_name == "increment") {
        report = increment_demo();
        root = be::node_from_json({{"op", "increment"}, {"bits", 2}});
      } else if (demo_name == "laplace") {
        report = laplace_demo(n, tolerance, root);
      } else {
        report = convolution_demo(root);
      }
      if (dump_graph) {
        print(be::graph_document(root, {{"demo", demo_name}}));
      } else {
        print(report);
      }
    }
  } catch (const be::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
