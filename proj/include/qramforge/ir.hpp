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

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qramforge/error.hpp"

namespace qramforge {

enum class GateKind : std::uint8_t {
  X,
  H,
  S,
  Sdg,
  T,
  Tdg,
  Z,
  CX,
  MCXFanout,  // one control, k >= 1 targets, one time step
  CZ,
  CCX,
  CCZ,
  MeasureX,     // Hadamard, then computational-basis measurement into a record
  ClassicalCZ,  // CZ applied when the named record holds 1
  ClassicalCX,  // CX applied when the named record holds 1
};

enum class Polarity : std::uint8_t { Positive, Negative };

/// Region tags split a QRAM circuit into its three contiguous blocks.
enum class Region : std::uint8_t { None, Fanout, Query, Fanin };

/// Role of a wire in a QRAM layout. Metrics exclude memory wires from width.
enum class WireClass : std::uint8_t {
  Unspecified,
  Address,
  Pointer,
  Memory,
  Target,
  Ancilla,
};

struct WireId {
  std::uint32_t index = 0;
  auto operator<=>(const WireId&) const = default;
};

struct Control {
  WireId wire;
  Polarity polarity = Polarity::Positive;
  bool operator==(const Control&) const = default;
};

struct Gate {
  GateKind kind = GateKind::X;
  std::vector<Control> controls;
  std::vector<WireId> targets;
  std::string condition;  // ClassicalCZ / ClassicalCX only
  std::string record;     // MeasureX only

  bool operator==(const Gate&) const = default;

  static Gate single(GateKind kind, WireId wire);
  static Gate cx(WireId control, WireId target);
  static Gate fanout(WireId control, std::vector<WireId> targets);
  static Gate cz(WireId a, WireId b);
  static Gate ccx(Control c0, Control c1, WireId target);
  static Gate ccx(WireId c0, WireId c1, WireId target);
  static Gate ccz(WireId a, WireId b, WireId c);
  static Gate measure_x(WireId wire, std::string record);
  static Gate classical_cz(WireId a, WireId b, std::string condition);
  static Gate classical_cx(WireId control, WireId target, std::string condition);

  /// Controls first, then targets.
  std::vector<WireId> wires() const;
  bool touches(WireId wire) const;
};

using GateSequence = std::vector<Gate>;

std::string_view kind_name(GateKind kind);
std::optional<GateKind> kind_from_name(std::string_view name);
std::string_view region_name(Region region);
std::string_view wire_class_name(WireClass cls);
std::optional<WireClass> wire_class_from_name(std::string_view name);

bool is_measurement_kind(GateKind kind);

/// Phase of a single-wire diagonal gate in units of pi/4 (T = 1, S = 2,
/// Z = 4, S_DAG = 6, T_DAG = 7). Empty for every other kind.
std::optional<int> phase_units(GateKind kind);

/// Number of T and T_DAG gates.
std::size_t t_count(std::span<const Gate> gates);

struct RegionSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  bool operator==(const RegionSpan&) const = default;
};

/// Ordered gate list over named wires. Gates apply left to right. Every
/// append is validated, so a Circuit value always satisfies the IR
/// invariants (registered wires, kind arity, disjoint controls and targets,
/// conditions that refer to earlier measurements, ordered region blocks).
class Circuit {
 public:
  WireId add_wire(std::string name, WireClass cls = WireClass::Unspecified);

  WireId wire(std::string_view name) const;
  std::optional<WireId> find_wire(std::string_view name) const;
  const std::string& wire_name(WireId wire) const;
  WireClass wire_class(WireId wire) const;
  void set_wire_class(WireId wire, WireClass cls);
  std::size_t num_wires() const { return names_.size(); }
  std::vector<WireId> wires_of_class(WireClass cls) const;

  std::span<const Gate> gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  const Gate& operator[](std::size_t i) const { return gates_[i]; }

  Circuit& append(Gate gate, Region region = Region::None);
  Circuit& append(std::span<const Gate> gates, Region region = Region::None);

  Region region_of(std::size_t gate_index) const { return regions_[gate_index]; }
  bool has_regions() const;
  RegionSpan region_span(Region region) const;
  /// Gates of one region on the full wire set, untagged.
  Circuit region_circuit(Region region) const;

  const std::set<std::string>& records() const { return records_; }

  /// Same wires, no gates.
  Circuit empty_copy() const;

  bool operator==(const Circuit& other) const;

 private:
  void validate(const Gate& gate) const;

  std::vector<std::string> names_;
  std::vector<WireClass> classes_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<Gate> gates_;
  std::vector<Region> regions_;
  std::set<std::string> records_;
};

/// Reverses gate order and daggers each gate. Region tags swap FANOUT and
/// FANIN so the result still has ordered blocks.
Circuit inverse(const Circuit& circuit);

/// Replaces every MCX_FANOUT by its sequential CX factors.
Circuit expand_fanouts(const Circuit& circuit);

/// One line per wire, one column per gate, `@` controls, `(0)` negative
/// controls, `X` targets.
std::string render_ascii(const Circuit& circuit);
Circuit parse_ascii(std::string_view text);

std::string serialize(const Circuit& circuit);
Circuit parse(std::string_view document);

std::string export_qasm(const Circuit& circuit);

}  // namespace qramforge
