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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

using nlohmann::json;

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " BE_CLI_PATH " " + args + " 2>/dev/null";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

double re(const json& pair) { return pair.at(0).get<double>(); }

TEST(Cli, EvalIncrement) {
  const std::string g = write_temp("inc.json", R"({"version":1,"root":{"op":"increment","bits":2}})");
  for (const char* flag : {"", "--simulate"}) {
    const Outcome r = run("eval " + g + " --input basis:1 " + flag);
    ASSERT_EQ(r.code, 0) << flag;
    const json v = json::parse(r.out);
    ASSERT_EQ(v.size(), 4u);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(re(v[k]), k == 2 ? 1.0 : 0.0, 1e-12);
  }
}

TEST(Cli, EvalIdentityFileInput) {
  const std::string g = write_temp("id.json", R"({"version":1,"root":{"op":"identity","subspace":{"dim":3}}})");
  const std::string in = write_temp("v.json", "[0.5, [1, -2], 3]");
  const Outcome r = run("eval " + g + " --input " + in);
  ASSERT_EQ(r.code, 0);
  const json v = json::parse(r.out);
  EXPECT_NEAR(re(v[0]), 0.5, 1e-15);
  EXPECT_NEAR(v[1][1].get<double>(), -2.0, 1e-15);
  EXPECT_NEAR(re(v[2]), 3.0, 1e-15);
  EXPECT_EQ(run("eval " + g + " --input basis:7").code, 2);
}

TEST(Cli, VerifyAndEstimate) {
  const std::string g = write_temp("inc2.json", R"({"version":1,"root":{"op":"increment","bits":2}})");
  EXPECT_EQ(run("verify " + g).code, 0);
  const Outcome e = run("estimate " + g);
  ASSERT_EQ(e.code, 0);
  const json rep = json::parse(e.out);
  EXPECT_EQ(rep["main_qubits"], 2);
  EXPECT_EQ(rep["normalization"], 1.0);
  EXPECT_EQ(rep["gate_counts"], (json{{"X", 1}, {"CX", 1}}));

  const std::string id = write_temp("id2.json", R"({"version":1,"root":{"op":"identity","subspace":{"dim":4}}})");
  EXPECT_TRUE(json::parse(run("estimate " + id).out)["gate_counts"].empty());
}

TEST(Cli, LaplaceGraph) {
  const Outcome dump = run("demo laplace --dump-graph");
  ASSERT_EQ(dump.code, 0);
  const std::string g = write_temp("laplace.json", dump.out);
  const Outcome r = run("eval " + g);
  ASSERT_EQ(r.code, 0);
  const json v = json::parse(r.out);
  ASSERT_EQ(v.size(), 7u);
  // u = (8 tridiag(-1, 2, -1))^-1 (1/8) 1, i.e. u_i = (i+1)(7-i)/128.
  double err = 0, norm = 0;
  for (int i = 0; i < 7; ++i) {
    const double u = (i + 1) * (7 - i) / 128.0;
    err += (re(v[i]) - u) * (re(v[i]) - u);
    norm += u * u;
  }
  EXPECT_LE(std::sqrt(err / norm), 0.01);

  const std::string a = write_temp("a.json", R"({"version":1,"root":{"op":"scale","params":{"factor":8},"args":[
    {"op":"sub","args":[{"op":"sub","args":[{"op":"scale","params":{"factor":2},"args":[{"op":"identity","subspace":{"dim":8}}]},
    {"op":"adjoint","args":[{"op":"increment","bits":3}]}]},{"op":"increment","bits":3}]}]}})");
  EXPECT_EQ(json::parse(run("estimate " + a).out)["normalization"], 32.0);
}

TEST(Cli, Demos) {
  const Outcome inc = run("demo increment");
  ASSERT_EQ(inc.code, 0);
  const json d = json::parse(inc.out);
  EXPECT_EQ(d["normalization"], 1.0);
  EXPECT_EQ(d["subspace_in"], (json{0, 1, 2, 3}));
  const Outcome conv = run("demo convolution");
  ASSERT_EQ(conv.code, 0);
  EXPECT_LE(json::parse(conv.out)["toeplitz_max_error"].get<double>(), 1e-8);
  const Outcome lap = run("demo laplace");
  ASSERT_EQ(lap.code, 0);
  EXPECT_NEAR(json::parse(lap.out)["qoi"].get<double>(), std::sqrt(273.0) / 64 / std::sqrt(8.0), 0.02 * 0.0913);
}

TEST(Cli, DumpedGraphsReparse) {
  for (const char* name : {"increment", "convolution"}) {
    const Outcome dump = run(std::string("demo ") + name + " --dump-graph");
    ASSERT_EQ(dump.code, 0);
    const std::string g = write_temp(std::string(name) + "_dump.json", dump.out);
    EXPECT_EQ(run("verify " + g).code, 0) << name;
  }
}

TEST(Cli, Emit) {
  const std::string g = write_temp("perm.json", R"({"version":1,"root":{"op":"permutation","table":[2,0,3,1]}})");
  EXPECT_EQ(run("emit " + g).code, 2);
  const Outcome lowered = run("emit " + g + " --lower");
  ASSERT_EQ(lowered.code, 0);
  EXPECT_EQ(lowered.out.rfind("OPENQASM 3.0;", 0), 0u);
  const std::string inc = write_temp("inc3.json", R"({"version":1,"root":{"op":"increment","bits":2}})");
  const Outcome r = run("emit " + inc);
  EXPECT_NE(r.out.find("cx q[0], q[1];"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("eval /nonexistent.json").code, 2);
  EXPECT_EQ(run("eval " + write_temp("bad.json", "{not json")).code, 2);
  EXPECT_EQ(run("eval " + write_temp("v2.json", R"({"version":2,"root":{"op":"increment","bits":2}})")).code, 2);
  EXPECT_EQ(run("demo nope").code, 2);
  const std::string g = write_temp("inc4.json", R"({"version":1,"root":{"op":"increment","bits":3}})");
  EXPECT_EQ(run("eval " + g, "BE_BUDGET=2:1").code, 2);
  EXPECT_EQ(run("verify " + g + " --tol -1").code, 1);
}

}  // namespace
