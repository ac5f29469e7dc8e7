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

#include "qramforge/ir.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace qramforge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownWire: return "UnknownWire";
    case ErrorCode::DuplicateWire: return "DuplicateWire";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::OverlappingControlTarget: return "OverlappingControlTarget";
    case ErrorCode::InvalidPolarity: return "InvalidPolarity";
    case ErrorCode::DanglingCondition: return "DanglingCondition";
    case ErrorCode::DuplicateRecord: return "DuplicateRecord";
    case ErrorCode::RegionOrder: return "RegionOrder";
    case ErrorCode::NonUnitaryGate: return "NonUnitaryGate";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::InvalidSharedWire: return "InvalidSharedWire";
    case ErrorCode::NonLinearFragment: return "NonLinearFragment";
    case ErrorCode::NotSharedControl: return "NotSharedControl";
    case ErrorCode::NotSharedTarget: return "NotSharedTarget";
    case ErrorCode::MissingRegionTags: return "MissingRegionTags";
    case ErrorCode::PatternMismatch: return "PatternMismatch";
    case ErrorCode::UnknownWireClass: return "UnknownWireClass";
    case ErrorCode::TooManyWires: return "TooManyWires";
    case ErrorCode::LayoutMismatch: return "LayoutMismatch";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 15> kKindNames{{
    {GateKind::X, "X"},
    {GateKind::H, "H"},
    {GateKind::S, "S"},
    {GateKind::Sdg, "S_DAG"},
    {GateKind::T, "T"},
    {GateKind::Tdg, "T_DAG"},
    {GateKind::Z, "Z"},
    {GateKind::CX, "CX"},
    {GateKind::MCXFanout, "MCX_FANOUT"},
    {GateKind::CZ, "CZ"},
    {GateKind::CCX, "CCX"},
    {GateKind::CCZ, "CCZ"},
    {GateKind::MeasureX, "MEASURE_X"},
    {GateKind::ClassicalCZ, "CLASSICAL_CZ"},
    {GateKind::ClassicalCX, "CLASSICAL_CX"},
}};

constexpr std::array<std::pair<WireClass, std::string_view>, 6> kClassNames{{
    {WireClass::Unspecified, "unspecified"},
    {WireClass::Address, "address"},
    {WireClass::Pointer, "pointer"},
    {WireClass::Memory, "memory"},
    {WireClass::Target, "target"},
    {WireClass::Ancilla, "ancilla"},
}};

struct Arity {
  std::size_t controls;
  std::size_t min_targets;
  std::size_t max_targets;
};

Arity arity_of(GateKind kind) {
  switch (kind) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::S:
    case GateKind::Sdg:
    case GateKind::T:
    case GateKind::Tdg:
    case GateKind::Z:
    case GateKind::MeasureX:
      return {0, 1, 1};
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::ClassicalCZ:
    case GateKind::ClassicalCX:
      return {1, 1, 1};
    case GateKind::MCXFanout:
      return {1, 1, static_cast<std::size_t>(-1)};
    case GateKind::CCX:
    case GateKind::CCZ:
      return {2, 1, 1};
  }
  return {0, 0, 0};
}

bool is_conditional(GateKind kind) {
  return kind == GateKind::ClassicalCZ || kind == GateKind::ClassicalCX;
}

}  // namespace

Gate Gate::single(GateKind kind, WireId wire) {
  return Gate{kind, {}, {wire}, {}, {}};
}

Gate Gate::cx(WireId control, WireId target) {
  return Gate{GateKind::CX, {{control}}, {target}, {}, {}};
}

Gate Gate::fanout(WireId control, std::vector<WireId> targets) {
  return Gate{GateKind::MCXFanout, {{control}}, std::move(targets), {}, {}};
}

Gate Gate::cz(WireId a, WireId b) {
  return Gate{GateKind::CZ, {{a}}, {b}, {}, {}};
}

Gate Gate::ccx(Control c0, Control c1, WireId target) {
  return Gate{GateKind::CCX, {c0, c1}, {target}, {}, {}};
}

Gate Gate::ccx(WireId c0, WireId c1, WireId target) {
  return ccx(Control{c0}, Control{c1}, target);
}

Gate Gate::ccz(WireId a, WireId b, WireId c) {
  return Gate{GateKind::CCZ, {{a}, {b}}, {c}, {}, {}};
}

Gate Gate::measure_x(WireId wire, std::string record) {
  return Gate{GateKind::MeasureX, {}, {wire}, {}, std::move(record)};
}

Gate Gate::classical_cz(WireId a, WireId b, std::string condition) {
  return Gate{GateKind::ClassicalCZ, {{a}}, {b}, std::move(condition), {}};
}

Gate Gate::classical_cx(WireId control, WireId target, std::string condition) {
  return Gate{GateKind::ClassicalCX, {{control}}, {target}, std::move(condition), {}};
}

std::vector<WireId> Gate::wires() const {
  std::vector<WireId> out;
  out.reserve(controls.size() + targets.size());
  for (const auto& c : controls) out.push_back(c.wire);
  out.insert(out.end(), targets.begin(), targets.end());
  return out;
}

bool Gate::touches(WireId wire) const {
  return std::any_of(controls.begin(), controls.end(),
                     [&](const Control& c) { return c.wire == wire; }) ||
         std::find(targets.begin(), targets.end(), wire) != targets.end();
}

std::string_view kind_name(GateKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<GateKind> kind_from_name(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string_view region_name(Region region) {
  switch (region) {
    case Region::None: return "none";
    case Region::Fanout: return "fanout";
    case Region::Query: return "query";
    case Region::Fanin: return "fanin";
  }
  return "?";
}

std::string_view wire_class_name(WireClass cls) {
  for (const auto& [c, name] : kClassNames) {
    if (c == cls) return name;
  }
  return "?";
}

std::optional<WireClass> wire_class_from_name(std::string_view name) {
  for (const auto& [c, n] : kClassNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

bool is_measurement_kind(GateKind kind) {
  return kind == GateKind::MeasureX || is_conditional(kind);
}

std::optional<int> phase_units(GateKind kind) {
  switch (kind) {
    case GateKind::T: return 1;
    case GateKind::S: return 2;
    case GateKind::Z: return 4;
    case GateKind::Sdg: return 6;
    case GateKind::Tdg: return 7;
    default: return std::nullopt;
  }
}

std::size_t t_count(std::span<const Gate> gates) {
  return static_cast<std::size_t>(std::count_if(gates.begin(), gates.end(), [](const Gate& g) {
    return g.kind == GateKind::T || g.kind == GateKind::Tdg;
  }));
}

// ---------------------------------------------------------------- Circuit

WireId Circuit::add_wire(std::string name, WireClass cls) {
  if (name.empty()) throw Error(ErrorCode::UnknownWire, "empty wire name");
  if (index_.contains(name)) throw Error(ErrorCode::DuplicateWire, name);
  const auto id = static_cast<std::uint32_t>(names_.size());
  index_.emplace(name, id);
  names_.push_back(std::move(name));
  classes_.push_back(cls);
  return WireId{id};
}

WireId Circuit::wire(std::string_view name) const {
  if (auto w = find_wire(name)) return *w;
  throw Error(ErrorCode::UnknownWire, std::string(name));
}

std::optional<WireId> Circuit::find_wire(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return WireId{it->second};
}

const std::string& Circuit::wire_name(WireId wire) const {
  if (wire.index >= names_.size()) {
    throw Error(ErrorCode::UnknownWire, "#" + std::to_string(wire.index));
  }
  return names_[wire.index];
}

WireClass Circuit::wire_class(WireId wire) const {
  if (wire.index >= classes_.size()) {
    throw Error(ErrorCode::UnknownWire, "#" + std::to_string(wire.index));
  }
  return classes_[wire.index];
}

void Circuit::set_wire_class(WireId wire, WireClass cls) {
  if (wire.index >= classes_.size()) {
    throw Error(ErrorCode::UnknownWire, "#" + std::to_string(wire.index));
  }
  classes_[wire.index] = cls;
}

std::vector<WireId> Circuit::wires_of_class(WireClass cls) const {
  std::vector<WireId> out;
  for (std::uint32_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i] == cls) out.push_back(WireId{i});
  }
  return out;
}

void Circuit::validate(const Gate& gate) const {
  const Arity arity = arity_of(gate.kind);
  if (gate.controls.size() != arity.controls || gate.targets.size() < arity.min_targets ||
      gate.targets.size() > arity.max_targets) {
    throw Error(ErrorCode::ArityMismatch,
                std::string(kind_name(gate.kind)) + " with " +
                    std::to_string(gate.controls.size()) + " controls and " +
                    std::to_string(gate.targets.size()) + " targets");
  }
  std::vector<WireId> seen;
  for (const WireId w : gate.wires()) {
    if (w.index >= names_.size()) {
      throw Error(ErrorCode::UnknownWire, "#" + std::to_string(w.index));
    }
    if (std::find(seen.begin(), seen.end(), w) != seen.end()) {
      throw Error(ErrorCode::OverlappingControlTarget,
                  std::string(kind_name(gate.kind)) + " uses wire " + names_[w.index] + " twice");
    }
    seen.push_back(w);
  }
  const bool negatives_allowed = gate.kind == GateKind::CCX || gate.kind == GateKind::CCZ;
  for (const auto& c : gate.controls) {
    if (c.polarity == Polarity::Negative && !negatives_allowed) {
      throw Error(ErrorCode::InvalidPolarity,
                  std::string(kind_name(gate.kind)) + " does not accept negative controls");
    }
  }
  if (is_conditional(gate.kind)) {
    if (gate.condition.empty()) {
      throw Error(ErrorCode::DanglingCondition, std::string(kind_name(gate.kind)) + " without condition");
    }
    if (!records_.contains(gate.condition)) {
      throw Error(ErrorCode::DanglingCondition, "record '" + gate.condition + "' not produced earlier");
    }
  } else if (!gate.condition.empty()) {
    throw Error(ErrorCode::DanglingCondition,
                std::string(kind_name(gate.kind)) + " cannot carry a condition");
  }
  if (gate.kind == GateKind::MeasureX) {
    if (gate.record.empty()) throw Error(ErrorCode::ArityMismatch, "MEASURE_X without record key");
    if (records_.contains(gate.record)) throw Error(ErrorCode::DuplicateRecord, gate.record);
  } else if (!gate.record.empty()) {
    throw Error(ErrorCode::ArityMismatch, std::string(kind_name(gate.kind)) + " cannot produce a record");
  }
}

Circuit& Circuit::append(Gate gate, Region region) {
  validate(gate);
  // Control order of CCX/CCZ and target order of a fan-out carry no meaning;
  // keeping them sorted gives every gate a single canonical form.
  std::sort(gate.controls.begin(), gate.controls.end(),
            [](const Control& a, const Control& b) { return a.wire < b.wire; });
  if (gate.kind == GateKind::MCXFanout) std::sort(gate.targets.begin(), gate.targets.end());
  if (!gates_.empty()) {
    const Region last = regions_.back();
    if ((last == Region::None) != (region == Region::None)) {
      throw Error(ErrorCode::RegionOrder, "cannot mix tagged and untagged gates");
    }
    if (region < last) {
      throw Error(ErrorCode::RegionOrder, std::string(region_name(region)) + " after " +
                                              std::string(region_name(last)));
    }
  }
  if (gate.kind == GateKind::MeasureX) records_.insert(gate.record);
  gates_.push_back(std::move(gate));
  regions_.push_back(region);
  return *this;
}

Circuit& Circuit::append(std::span<const Gate> gates, Region region) {
  for (const auto& g : gates) append(g, region);
  return *this;
}

bool Circuit::has_regions() const {
  return !regions_.empty() && regions_.front() != Region::None;
}

RegionSpan Circuit::region_span(Region region) const {
  if (!has_regions()) throw Error(ErrorCode::MissingRegionTags, "circuit has no region tags");
  const auto lo = std::lower_bound(regions_.begin(), regions_.end(), region);
  const auto hi = std::upper_bound(regions_.begin(), regions_.end(), region);
  return RegionSpan{static_cast<std::size_t>(lo - regions_.begin()),
                    static_cast<std::size_t>(hi - regions_.begin())};
}

Circuit Circuit::region_circuit(Region region) const {
  const RegionSpan span = region_span(region);
  Circuit out = empty_copy();
  // Records produced before the region stay visible to its conditions.
  for (std::size_t i = 0; i < span.begin; ++i) {
    if (gates_[i].kind == GateKind::MeasureX) out.records_.insert(gates_[i].record);
  }
  for (std::size_t i = span.begin; i < span.end; ++i) out.append(gates_[i]);
  return out;
}

Circuit Circuit::empty_copy() const {
  Circuit out;
  out.names_ = names_;
  out.classes_ = classes_;
  out.index_ = index_;
  return out;
}

bool Circuit::operator==(const Circuit& other) const {
  return names_ == other.names_ && classes_ == other.classes_ && gates_ == other.gates_ &&
         regions_ == other.regions_;
}

// ------------------------------------------------------------- transforms

namespace {

GateKind dagger(GateKind kind) {
  switch (kind) {
    case GateKind::S: return GateKind::Sdg;
    case GateKind::Sdg: return GateKind::S;
    case GateKind::T: return GateKind::Tdg;
    case GateKind::Tdg: return GateKind::T;
    default: return kind;
  }
}

Region mirror(Region region) {
  switch (region) {
    case Region::Fanout: return Region::Fanin;
    case Region::Fanin: return Region::Fanout;
    default: return region;
  }
}

}  // namespace

Circuit inverse(const Circuit& circuit) {
  Circuit out = circuit.empty_copy();
  for (std::size_t i = circuit.size(); i-- > 0;) {
    Gate g = circuit[i];
    if (is_measurement_kind(g.kind)) {
      throw Error(ErrorCode::NonUnitaryGate,
                  std::string(kind_name(g.kind)) + " at gate " + std::to_string(i));
    }
    g.kind = dagger(g.kind);
    out.append(std::move(g), mirror(circuit.region_of(i)));
  }
  return out;
}

Circuit expand_fanouts(const Circuit& circuit) {
  Circuit out = circuit.empty_copy();
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Gate& g = circuit[i];
    if (g.kind != GateKind::MCXFanout) {
      out.append(g, circuit.region_of(i));
      continue;
    }
    for (const WireId t : g.targets) out.append(Gate::cx(g.controls[0].wire, t), circuit.region_of(i));
  }
  return out;
}

}  // namespace qramforge
