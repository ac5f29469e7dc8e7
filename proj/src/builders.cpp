// Copyright 2026 The qramforge Authors
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

#include "qramforge/builders.hpp"

#include <random>

#include "qramforge/decompositions.hpp"

namespace qramforge {

void QramInstance::validate() const {
  if (q < 1 || q > 30) throw Error(ErrorCode::InvalidInstance, "q must be in 1..30, got " + std::to_string(q));
  if (n < 1 || n > q) {
    throw Error(ErrorCode::InvalidInstance, "n must be in 1..q, got " + std::to_string(n));
  }
  if (memory.size() != cells()) {
    throw Error(ErrorCode::InvalidInstance, "memory holds " + std::to_string(memory.size()) +
                                                " bits, expected " + std::to_string(cells()));
  }
  for (auto bit : memory) {
    if (bit > 1) throw Error(ErrorCode::InvalidInstance, "memory bits must be 0 or 1");
  }
}

QramInstance QramInstance::with_bits(int q, int n, std::string_view bits) {
  QramInstance inst{q, n, {}};
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error(ErrorCode::InvalidInstance, "memory bits must be 0 or 1");
    inst.memory.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  inst.validate();
  return inst;
}

QramInstance QramInstance::all_ones(int q, int n) {
  QramInstance inst{q, n, {}};
  if (q >= 1 && q <= 30) inst.memory.assign(inst.cells(), 1);
  inst.validate();
  return inst;
}

QramInstance QramInstance::random(int q, int n, std::uint64_t seed) {
  QramInstance inst{q, n, {}};
  if (q >= 1 && q <= 30) {
    std::mt19937_64 gen(seed);
    inst.memory.resize(inst.cells());
    for (auto& bit : inst.memory) bit = static_cast<std::uint8_t>(gen() & 1);
  }
  inst.validate();
  return inst;
}

std::string QramInstance::memory_bits() const {
  std::string out;
  for (auto bit : memory) out += static_cast<char>('0' + bit);
  return out;
}

// ------------------------------------------------------------------ layout

namespace {

std::string binary(std::uint64_t value, int digits) {
  std::string out(static_cast<std::size_t>(digits), '0');
  for (int i = 0; i < digits; ++i) {
    if ((value >> i) & 1) out[static_cast<std::size_t>(digits - 1 - i)] = '1';
  }
  return out;
}

}  // namespace

std::string address_wire_name(int bit) { return "a" + std::to_string(bit); }
std::string pointer_wire_name(std::uint64_t cell, int q) { return "b_" + binary(cell, q); }
std::string memory_wire_name(std::uint64_t cell, int q) { return "m" + binary(cell, q); }

QramWireLayout add_qram_wires(Circuit& circuit, int q) {
  const std::uint64_t cells = std::uint64_t{1} << q;
  QramWireLayout layout;
  layout.address.resize(static_cast<std::size_t>(q));
  layout.pointers.resize(cells);
  layout.memory.resize(cells);
  for (int i = q - 1; i >= 0; --i) {
    layout.address[static_cast<std::size_t>(i)] = circuit.add_wire(address_wire_name(i), WireClass::Address);
  }
  for (std::uint64_t j = 0; j < cells; ++j) {
    layout.pointers[j] = circuit.add_wire(pointer_wire_name(j, q), WireClass::Pointer);
  }
  for (std::uint64_t j = cells; j-- > 0;) {
    layout.memory[j] = circuit.add_wire(memory_wire_name(j, q), WireClass::Memory);
  }
  layout.target = circuit.add_wire("target", WireClass::Target);
  return layout;
}

QramWireLayout find_qram_layout(const Circuit& circuit, int q) {
  if (q < 1 || q > 30) throw Error(ErrorCode::LayoutMismatch, "q out of range");
  auto need = [&](const std::string& name) {
    if (auto w = circuit.find_wire(name)) return *w;
    throw Error(ErrorCode::LayoutMismatch, "missing wire " + name);
  };
  const std::uint64_t cells = std::uint64_t{1} << q;
  QramWireLayout layout;
  for (int i = 0; i < q; ++i) layout.address.push_back(need(address_wire_name(i)));
  for (std::uint64_t j = 0; j < cells; ++j) {
    layout.pointers.push_back(need(pointer_wire_name(j, q)));
    layout.memory.push_back(need(memory_wire_name(j, q)));
  }
  layout.target = need("target");
  return layout;
}

std::optional<FaninMode> fanin_mode_from_name(std::string_view name) {
  if (name == "measurement") return FaninMode::Measurement;
  if (name == "unitary") return FaninMode::Unitary;
  return std::nullopt;
}

std::optional<QramFamily> qram_family_from_name(std::string_view name) {
  if (name == "toffoli") return QramFamily::Toffoli;
  if (name == "sequential") return QramFamily::Sequential;
  if (name == "parallel") return QramFamily::Parallel;
  return std::nullopt;
}

// ---------------------------------------------------------------- builders

namespace {

GateSequence dagger_sequence(const GateSequence& gates) {
  GateSequence out(gates.rbegin(), gates.rend());
  for (Gate& g : out) {
    switch (g.kind) {
      case GateKind::T: g.kind = GateKind::Tdg; break;
      case GateKind::Tdg: g.kind = GateKind::T; break;
      case GateKind::S: g.kind = GateKind::Sdg; break;
      case GateKind::Sdg: g.kind = GateKind::S; break;
      default: break;
    }
  }
  return out;
}

// b_0 = !a_0, b_1 = a_0.
GateSequence first_level(const QramWireLayout& l) {
  return {Gate::single(GateKind::X, l.pointers[0]), Gate::cx(l.address[0], l.pointers[1]),
          Gate::cx(l.pointers[1], l.pointers[0])};
}

// Toffolis of level k: b_{j + 2^k} = a_k AND b_j for j < 2^k.
GateSequence level_toffolis(const QramWireLayout& l, int k) {
  const std::uint64_t half = std::uint64_t{1} << k;
  GateSequence out;
  for (std::uint64_t j = 0; j < half; ++j) {
    out.push_back(Gate::ccx(l.address[static_cast<std::size_t>(k)], l.pointers[j], l.pointers[j + half]));
  }
  return out;
}

// b_j ^= b_{j + 2^k}, clearing the pointers whose address bit k is set.
GateSequence level_clear(const QramWireLayout& l, int k) {
  const std::uint64_t half = std::uint64_t{1} << k;
  GateSequence out;
  for (std::uint64_t j = 0; j < half; ++j) out.push_back(Gate::cx(l.pointers[j + half], l.pointers[j]));
  return out;
}

GateSequence query_toffolis(const QramWireLayout& l, const QramInstance& inst) {
  GateSequence out;
  for (std::uint64_t j = 0; j < inst.queries(); ++j) {
    out.push_back(Gate::ccx(l.pointers[j], l.memory[j], l.target));
  }
  return out;
}

GateSequence toffoli_fanout(const QramWireLayout& l, int q) {
  GateSequence out = first_level(l);
  for (int k = 1; k < q; ++k) {
    for (auto& g : level_toffolis(l, k)) out.push_back(g);
    for (auto& g : level_clear(l, k)) out.push_back(g);
  }
  return out;
}

GateSequence parallel_fanout(const QramWireLayout& l, int q) {
  GateSequence out = first_level(l);
  for (int k = 1; k < q; ++k) {
    const GateSequence toffolis = level_toffolis(l, k);
    for (auto& g : lower_shared_control(toffolis)) out.push_back(g);
    // S cancels the (-i)^{ab} left by each logical AND, so the pointers hold
    // plain basis states and either FANIN mode can undo them.
    for (const Gate& g : toffolis) out.push_back(Gate::single(GateKind::S, g.targets[0]));
    for (auto& g : level_clear(l, k)) out.push_back(g);
  }
  return out;
}

GateSequence measurement_fanin(const QramWireLayout& l, int q, const Circuit& names) {
  GateSequence out;
  for (int k = q - 1; k >= 1; --k) {
    const std::uint64_t half = std::uint64_t{1} << k;
    const WireId bit = l.address[static_cast<std::size_t>(k)];
    for (auto& g : level_clear(l, k)) out.push_back(g);
    std::vector<std::string> records;
    for (std::uint64_t j = 0; j < half; ++j) {
      records.push_back("r_" + names.wire_name(l.pointers[j + half]));
      out.push_back(Gate::measure_x(l.pointers[j + half], records.back()));
    }
    // The CZ correction on (a_k, b_j) written as H, conditional CX, H so the
    // a_k controls of one level form a single fan-out step.
    for (std::uint64_t j = 0; j < half; ++j) out.push_back(Gate::single(GateKind::H, l.pointers[j]));
    for (std::uint64_t j = 0; j < half; ++j) out.push_back(Gate::classical_cx(bit, l.pointers[j], records[j]));
    for (std::uint64_t j = 0; j < half; ++j) out.push_back(Gate::single(GateKind::H, l.pointers[j]));
  }
  for (auto& g : dagger_sequence(first_level(l))) out.push_back(g);
  return out;
}

}  // namespace

Circuit build_toffoli_bucket_brigade(const QramInstance& instance) {
  instance.validate();
  Circuit c;
  const QramWireLayout l = add_qram_wires(c, instance.q);
  const GateSequence fanout = toffoli_fanout(l, instance.q);
  c.append(fanout, Region::Fanout);
  c.append(query_toffolis(l, instance), Region::Query);
  c.append(dagger_sequence(fanout), Region::Fanin);
  return c;
}

Circuit build_sequential_clifford_t(const QramInstance& instance) {
  return lower_circuit(build_toffoli_bucket_brigade(instance), CczVariant::Canonical7T);
}

Circuit build_parallel_clifford_t(const QramInstance& instance, FaninMode fanin) {
  instance.validate();
  Circuit c;
  const QramWireLayout l = add_qram_wires(c, instance.q);
  const GateSequence fanout = parallel_fanout(l, instance.q);
  c.append(fanout, Region::Fanout);
  c.append(lower_shared_target(query_toffolis(l, instance)), Region::Query);
  if (fanin == FaninMode::Unitary) {
    c.append(dagger_sequence(fanout), Region::Fanin);
  } else {
    c.append(measurement_fanin(l, instance.q, c), Region::Fanin);
  }
  return c;
}

Circuit build_qram(QramFamily family, const QramInstance& instance, FaninMode fanin) {
  switch (family) {
    case QramFamily::Toffoli: return build_toffoli_bucket_brigade(instance);
    case QramFamily::Sequential: return build_sequential_clifford_t(instance);
    case QramFamily::Parallel: return build_parallel_clifford_t(instance, fanin);
  }
  return {};
}

int reference_target(const QramInstance& instance, std::uint64_t address, int target) {
  if (address < instance.queries()) return target ^ instance.memory[address];
  return target;
}

Eigen::MatrixXcd reference_qram_map(const QramInstance& instance) {
  instance.validate();
  if (instance.q > 12) throw Error(ErrorCode::TooManyWires, "reference map limited to q <= 12");
  const Eigen::Index dim = Eigen::Index{2} << instance.q;
  Eigen::MatrixXcd map = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t a = 0; a < instance.cells(); ++a) {
    for (int t = 0; t < 2; ++t) {
      const auto in = static_cast<Eigen::Index>((a << 1) | static_cast<std::uint64_t>(t));
      const auto out = static_cast<Eigen::Index>((a << 1) | static_cast<std::uint64_t>(reference_target(instance, a, t)));
      map(out, in) = 1.0;
    }
  }
  return map;
}

}  // namespace qramforge
