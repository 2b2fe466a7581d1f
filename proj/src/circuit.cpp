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

#include "be/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "be/errors.hpp"

namespace be {

using cd = std::complex<double>;

namespace {

std::uint64_t control_mask(const std::vector<Control>& controls, std::uint64_t& value) {
  std::uint64_t mask = 0;
  value = 0;
  for (const auto& c : controls) {
    mask |= std::uint64_t{1} << c.qubit;
    if (c.polarity) value |= std::uint64_t{1} << c.qubit;
  }
  return mask;
}

std::string count_prefix(std::size_t controls) {
  switch (controls) {
    case 0:
      return "";
    case 1:
      return "C";
    case 2:
      return "CC";
    default:
      return "C" + std::to_string(controls);
  }
}

std::string format_angle(double angle) {
  std::ostringstream os;
  os << std::setprecision(17) << angle;
  return os.str();
}

}  // namespace

std::string kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::T: return "T";
    case GateKind::Phase: return "P";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::GlobalPhase: return "GPHASE";
    case GateKind::Swap: return "SWAP";
    case GateKind::Permutation: return "PERM";
  }
  return "?";
}

Gate Gate::single(GateKind kind, int target, std::vector<Control> controls) {
  Gate g;
  g.kind = kind;
  g.targets = {target};
  g.controls = std::move(controls);
  return g;
}

Gate Gate::rotation(GateKind kind, int target, double angle, std::vector<Control> controls) {
  Gate g = single(kind, target, std::move(controls));
  g.angle = angle;
  return g;
}

Gate Gate::global_phase(double angle, std::vector<Control> controls) {
  Gate g;
  g.kind = GateKind::GlobalPhase;
  g.controls = std::move(controls);
  g.angle = angle;
  return g;
}

Gate Gate::swap(int a, int b, std::vector<Control> controls) {
  Gate g;
  g.kind = GateKind::Swap;
  g.targets = {a, b};
  g.controls = std::move(controls);
  return g;
}

Gate Gate::permutation(std::vector<int> targets, std::vector<std::uint64_t> table,
                       std::vector<Control> controls) {
  const std::size_t size = std::size_t{1} << targets.size();
  if (table.size() != size) throw ShapeError("permutation table size must be 2^targets");
  std::vector<bool> seen(size, false);
  for (auto v : table) {
    if (v >= size || seen[v]) throw DomainError("permutation table is not a bijection");
    seen[v] = true;
  }
  Gate g;
  g.kind = GateKind::Permutation;
  g.targets = std::move(targets);
  g.controls = std::move(controls);
  g.table = std::make_shared<const std::vector<std::uint64_t>>(std::move(table));
  return g;
}

Gate Gate::inverse() const {
  Gate g = *this;
  switch (kind) {
    case GateKind::S:
      g.kind = GateKind::Phase;
      g.angle = -std::numbers::pi / 2;
      break;
    case GateKind::T:
      g.kind = GateKind::Phase;
      g.angle = -std::numbers::pi / 4;
      break;
    case GateKind::Phase:
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::GlobalPhase:
      g.angle = -angle;
      break;
    case GateKind::Permutation: {
      std::vector<std::uint64_t> inv(table->size());
      for (std::size_t i = 0; i < table->size(); ++i) inv[(*table)[i]] = i;
      g.table = std::make_shared<const std::vector<std::uint64_t>>(std::move(inv));
      break;
    }
    default:
      break;
  }
  return g;
}

Eigen::Matrix2cd Gate::matrix() const {
  using std::numbers::pi;
  const cd i(0, 1);
  Eigen::Matrix2cd m;
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  switch (kind) {
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::Y: m << 0, -i, i, 0; break;
    case GateKind::Z: m << 1, 0, 0, -1; break;
    case GateKind::H: m << 1, 1, 1, -1; m /= std::sqrt(2.0); break;
    case GateKind::S: m << 1, 0, 0, i; break;
    case GateKind::T: m << 1, 0, 0, std::polar(1.0, pi / 4); break;
    case GateKind::Phase: m << 1, 0, 0, std::polar(1.0, angle); break;
    case GateKind::RX: m << c, -i * s, -i * s, c; break;
    case GateKind::RY: m << c, -s, s, c; break;
    case GateKind::RZ: m << std::polar(1.0, -angle / 2), 0, 0, std::polar(1.0, angle / 2); break;
    default:
      throw UnsupportedError("gate " + kind_name(kind) + " has no 2x2 matrix");
  }
  return m;
}

std::string Gate::count_key() const {
  return count_prefix(controls.size()) + kind_name(kind);
}

bool Gate::operator==(const Gate& other) const {
  if (kind != other.kind || targets != other.targets || controls != other.controls ||
      angle != other.angle) {
    return false;
  }
  if (static_cast<bool>(table) != static_cast<bool>(other.table)) return false;
  return !table || *table == *other.table;
}

Circuit::Circuit(int main_qubits, int ancilla_qubits)
    : main_(main_qubits), ancilla_(ancilla_qubits) {
  if (main_qubits < 0 || ancilla_qubits < 0) throw ShapeError("negative qubit count");
}

void Circuit::check(const Gate& gate) const {
  std::vector<int> used = gate.targets;
  for (const auto& c : gate.controls) used.push_back(c.qubit);
  for (int q : used) {
    if (q < 0 || q >= total_qubits()) {
      throw ShapeError("gate qubit " + std::to_string(q) + " outside a " +
                       std::to_string(total_qubits()) + "-qubit circuit");
    }
  }
  std::sort(used.begin(), used.end());
  if (std::adjacent_find(used.begin(), used.end()) != used.end()) {
    throw ShapeError("gate uses a qubit twice");
  }
  const std::size_t expected_targets = [&]() -> std::size_t {
    switch (gate.kind) {
      case GateKind::GlobalPhase: return 0;
      case GateKind::Swap: return 2;
      case GateKind::Permutation: return gate.targets.size();
      default: return 1;
    }
  }();
  if (gate.targets.size() != expected_targets) throw ShapeError("wrong number of gate targets");
  if (gate.kind == GateKind::Permutation &&
      (!gate.table || gate.table->size() != (std::size_t{1} << gate.targets.size()))) {
    throw ShapeError("permutation table does not match its targets");
  }
}

void Circuit::append(Gate gate) {
  check(gate);
  gates_.push_back(std::move(gate));
}

void Circuit::append(const Circuit& other, std::span<const int> qubit_map,
                     std::span<const Control> extra_controls) {
  if (qubit_map.size() != static_cast<std::size_t>(other.total_qubits())) {
    throw ShapeError("qubit map size does not match the appended circuit");
  }
  for (const auto& g : other.gates_) {
    Gate mapped = g;
    for (auto& t : mapped.targets) t = qubit_map[t];
    for (auto& c : mapped.controls) c.qubit = qubit_map[c.qubit];
    mapped.controls.insert(mapped.controls.end(), extra_controls.begin(), extra_controls.end());
    append(std::move(mapped));
  }
}

Circuit Circuit::adjoint() const {
  Circuit out(main_, ancilla_);
  out.gates_.reserve(gates_.size());
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.gates_.push_back(it->inverse());
  return out;
}

std::vector<Gate> lower_permutation(const Gate& gate) {
  const auto& table = *gate.table;
  const int k = static_cast<int>(gate.targets.size());
  std::vector<Gate> out;
  // Adjacent transposition of x and x ^ (1 << bit).
  auto flip = [&](std::uint64_t x, int bit) {
    std::vector<Control> controls;
    for (int e = 0; e < k; ++e) {
      if (e != bit) controls.push_back({gate.targets[e], ((x >> e) & 1) != 0});
    }
    controls.insert(controls.end(), gate.controls.begin(), gate.controls.end());
    out.push_back(Gate::single(GateKind::X, gate.targets[bit], std::move(controls)));
  };
  auto transpose = [&](std::uint64_t a, std::uint64_t b) {
    std::vector<std::uint64_t> path{a};
    std::vector<int> bits;
    for (int e = 0; e < k; ++e) {
      if (((a ^ b) >> e) & 1) {
        bits.push_back(e);
        path.push_back(path.back() ^ (std::uint64_t{1} << e));
      }
    }
    const std::size_t m = bits.size();
    for (std::size_t j = 0; j + 1 < m; ++j) flip(path[j], bits[j]);
    flip(path[m - 1], bits[m - 1]);
    for (std::size_t j = m - 1; j-- > 0;) flip(path[j], bits[j]);
  };
  std::vector<bool> done(table.size(), false);
  for (std::uint64_t start = 0; start < table.size(); ++start) {
    if (done[start]) continue;
    done[start] = true;
    for (std::uint64_t x = table[start]; x != start; x = table[x]) {
      done[x] = true;
      transpose(start, x);
    }
  }
  return out;
}

Circuit lower_permutations(const Circuit& circuit) {
  Circuit out(circuit.main_qubits(), circuit.ancilla_qubits());
  for (const auto& g : circuit.gates()) {
    if (g.kind == GateKind::Permutation) {
      for (auto& lowered : lower_permutation(g)) out.append(std::move(lowered));
    } else {
      out.append(g);
    }
  }
  return out;
}

GateCounts gate_counts(const Circuit& circuit, bool lower) {
  GateCounts counts;
  for (const auto& g : circuit.gates()) {
    if (lower && g.kind == GateKind::Permutation) {
      for (const auto& l : lower_permutation(g)) ++counts[l.count_key()];
    } else {
      ++counts[g.count_key()];
    }
  }
  return counts;
}

std::uint64_t t_count_estimate(const Circuit& circuit) {
  std::uint64_t total = 0;
  auto add = [&](const Gate& g) {
    if (g.kind == GateKind::T && g.controls.empty()) total += 1;
    if (g.kind == GateKind::X && g.controls.size() >= 2) total += 7 * (2 * g.controls.size() - 3);
  };
  for (const auto& g : circuit.gates()) {
    if (g.kind == GateKind::Permutation) {
      for (const auto& l : lower_permutation(g)) add(l);
    } else {
      add(g);
    }
  }
  return total;
}

void apply_gate(const Gate& gate, StateVector& state) {
  const std::uint64_t size = static_cast<std::uint64_t>(state.size());
  std::uint64_t cval = 0;
  const std::uint64_t cmask = control_mask(gate.controls, cval);
  auto fires = [&](std::uint64_t i) { return (i & cmask) == cval; };

  switch (gate.kind) {
    case GateKind::GlobalPhase: {
      const cd phase = std::polar(1.0, gate.angle);
      for (std::uint64_t i = 0; i < size; ++i) {
        if (fires(i)) state[i] *= phase;
      }
      return;
    }
    case GateKind::Swap: {
      const std::uint64_t a = std::uint64_t{1} << gate.targets[0];
      const std::uint64_t b = std::uint64_t{1} << gate.targets[1];
      for (std::uint64_t i = 0; i < size; ++i) {
        if ((i & a) && !(i & b) && fires(i)) std::swap(state[i], state[i ^ a ^ b]);
      }
      return;
    }
    case GateKind::Permutation: {
      const auto& table = *gate.table;
      std::uint64_t tmask = 0;
      for (int t : gate.targets) tmask |= std::uint64_t{1} << t;
      auto spread = [&](std::uint64_t local) {
        std::uint64_t out = 0;
        for (std::size_t e = 0; e < gate.targets.size(); ++e) {
          if ((local >> e) & 1) out |= std::uint64_t{1} << gate.targets[e];
        }
        return out;
      };
      std::vector<std::uint64_t> offsets(table.size());
      for (std::uint64_t l = 0; l < table.size(); ++l) offsets[l] = spread(l);
      std::vector<cd> scratch(table.size());
      for (std::uint64_t base = 0; base < size; ++base) {
        if ((base & tmask) || !fires(base)) continue;
        for (std::uint64_t l = 0; l < table.size(); ++l) scratch[l] = state[base | offsets[l]];
        for (std::uint64_t l = 0; l < table.size(); ++l) {
          state[base | offsets[table[l]]] = scratch[l];
        }
      }
      return;
    }
    default:
      break;
  }
  const Eigen::Matrix2cd m = gate.matrix();
  const std::uint64_t bit = std::uint64_t{1} << gate.targets[0];
  for (std::uint64_t i = 0; i < size; ++i) {
    if ((i & bit) || !fires(i)) continue;
    const cd a = state[i], b = state[i | bit];
    state[i] = m(0, 0) * a + m(0, 1) * b;
    state[i | bit] = m(1, 0) * a + m(1, 1) * b;
  }
}

StateVector apply_circuit(const Circuit& circuit, StateVector state) {
  if (state.size() != (Eigen::Index{1} << circuit.total_qubits())) {
    throw ShapeError("state vector length does not match the circuit width");
  }
  for (const auto& g : circuit.gates()) apply_gate(g, state);
  return state;
}

Eigen::MatrixXcd unitary(const Circuit& circuit) {
  const Eigen::Index dim = Eigen::Index{1} << circuit.total_qubits();
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    StateVector e = StateVector::Zero(dim);
    e[col] = 1.0;
    u.col(col) = apply_circuit(circuit, std::move(e));
  }
  return u;
}

std::string export_qasm(const Circuit& circuit, bool lower) {
  const Circuit& source = circuit;
  Circuit lowered;
  if (lower) lowered = lower_permutations(circuit);
  const Circuit& c = lower ? lowered : source;

  std::ostringstream os;
  os << "OPENQASM 3.0;\n";
  os << "include \"stdgates.inc\";\n";
  if (c.total_qubits() > 0) {
    os << "qubit[" << c.total_qubits() << "] q;\n";
  }
  if (c.ancilla_qubits() > 0) {
    os << "// ancillas: q[" << c.main_qubits() << "] .. q[" << c.total_qubits() - 1 << "]\n";
  }
  for (const auto& g : c.gates()) {
    std::string name;
    switch (g.kind) {
      case GateKind::X: name = "x"; break;
      case GateKind::Y: name = "y"; break;
      case GateKind::Z: name = "z"; break;
      case GateKind::H: name = "h"; break;
      case GateKind::S: name = "s"; break;
      case GateKind::T: name = "t"; break;
      case GateKind::Phase: name = "p(" + format_angle(g.angle) + ")"; break;
      case GateKind::RX: name = "rx(" + format_angle(g.angle) + ")"; break;
      case GateKind::RY: name = "ry(" + format_angle(g.angle) + ")"; break;
      case GateKind::RZ: name = "rz(" + format_angle(g.angle) + ")"; break;
      case GateKind::GlobalPhase: name = "gphase(" + format_angle(g.angle) + ")"; break;
      case GateKind::Swap: name = "swap"; break;
      case GateKind::Permutation:
        throw UnsupportedError("permutation gates need lowering before export");
    }
    std::vector<int> operands;
    if (g.kind == GateKind::X && g.controls.size() == 1 && g.controls[0].polarity) {
      name = "cx";
    } else {
      std::string modifiers;
      for (const auto& ctl : g.controls) modifiers += ctl.polarity ? "ctrl @ " : "negctrl @ ";
      name = modifiers + name;
    }
    for (const auto& ctl : g.controls) operands.push_back(ctl.qubit);
    operands.insert(operands.end(), g.targets.begin(), g.targets.end());
    os << name;
    for (std::size_t i = 0; i < operands.size(); ++i) {
      os << (i == 0 ? " " : ", ") << "q[" << operands[i] << "]";
    }
    os << ";\n";
  }
  return os.str();
}

}  // namespace be
