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

#include <map>
#include <sstream>

#include "json.hpp"
#include "qramforge/ir.hpp"

namespace qramforge {

using nlohmann::json;

namespace {

constexpr int kIrVersion = 1;

[[noreturn]] void violation(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaViolation, path + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) violation(path, "expected object");
  auto it = obj.find(key);
  if (it == obj.end()) violation(path + "." + key, "missing");
  return *it;
}

std::string string_at(const json& value, const std::string& path) {
  if (!value.is_string()) violation(path, "expected string");
  return value.get<std::string>();
}

}  // namespace

std::string serialize(const Circuit& circuit) {
  json doc;
  doc["ir_version"] = kIrVersion;
  json wires = json::array();
  json classes = json::array();
  bool any_class = false;
  for (std::uint32_t i = 0; i < circuit.num_wires(); ++i) {
    wires.push_back(circuit.wire_name(WireId{i}));
    const WireClass cls = circuit.wire_class(WireId{i});
    any_class = any_class || cls != WireClass::Unspecified;
    classes.push_back(std::string(wire_class_name(cls)));
  }
  doc["wires"] = wires;
  if (any_class) doc["wire_classes"] = classes;

  json gates = json::array();
  for (const Gate& g : circuit.gates()) {
    json jg;
    jg["kind"] = std::string(kind_name(g.kind));
    json controls = json::array();
    for (const auto& c : g.controls) {
      controls.push_back({{"wire", circuit.wire_name(c.wire)},
                          {"polarity", c.polarity == Polarity::Positive ? "positive" : "negative"}});
    }
    jg["controls"] = controls;
    json targets = json::array();
    for (const WireId t : g.targets) targets.push_back(circuit.wire_name(t));
    jg["targets"] = targets;
    if (!g.condition.empty()) jg["condition"] = g.condition;
    if (!g.record.empty()) jg["record"] = g.record;
    gates.push_back(std::move(jg));
  }
  doc["gates"] = gates;

  if (circuit.has_regions()) {
    json regions;
    for (Region r : {Region::Fanout, Region::Query, Region::Fanin}) {
      const RegionSpan span = circuit.region_span(r);
      regions[std::string(region_name(r))] = {span.begin, span.end};
    }
    doc["regions"] = regions;
  }
  return doc.dump(2) + "\n";
}

Circuit parse(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaViolation, std::string("$: ") + e.what());
  }
  const json& version = field(doc, "ir_version", "$");
  if (!version.is_number_integer() || version.get<int>() != kIrVersion) {
    violation("$.ir_version", "unsupported version");
  }

  Circuit circuit;
  const json& wires = field(doc, "wires", "$");
  if (!wires.is_array()) violation("$.wires", "expected array");
  for (std::size_t i = 0; i < wires.size(); ++i) {
    const std::string path = "$.wires[" + std::to_string(i) + "]";
    const std::string name = string_at(wires[i], path);
    if (circuit.find_wire(name)) violation(path, "duplicate wire '" + name + "'");
    circuit.add_wire(name);
  }
  if (auto it = doc.find("wire_classes"); it != doc.end()) {
    if (!it->is_array() || it->size() != wires.size()) {
      violation("$.wire_classes", "expected array parallel to wires");
    }
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = "$.wire_classes[" + std::to_string(i) + "]";
      auto cls = wire_class_from_name(string_at((*it)[i], path));
      if (!cls) violation(path, "unknown wire class");
      circuit.set_wire_class(WireId{static_cast<std::uint32_t>(i)}, *cls);
    }
  }

  const json& gates = field(doc, "gates", "$");
  if (!gates.is_array()) violation("$.gates", "expected array");

  std::vector<Region> tags(gates.size(), Region::None);
  if (auto it = doc.find("regions"); it != doc.end()) {
    std::size_t expected_begin = 0;
    for (Region r : {Region::Fanout, Region::Query, Region::Fanin}) {
      const std::string key(region_name(r));
      const std::string path = "$.regions." + key;
      const json& span = field(*it, key.c_str(), "$.regions");
      if (!span.is_array() || span.size() != 2 || !span[0].is_number_unsigned() ||
          !span[1].is_number_unsigned()) {
        violation(path, "expected [lo, hi)");
      }
      const auto lo = span[0].get<std::size_t>();
      const auto hi = span[1].get<std::size_t>();
      if (lo != expected_begin || hi < lo || hi > gates.size()) {
        violation(path, "regions must be contiguous, ordered and cover every gate");
      }
      for (std::size_t g = lo; g < hi; ++g) tags[g] = r;
      expected_begin = hi;
    }
    if (expected_begin != gates.size()) violation("$.regions", "regions do not cover every gate");
  }

  auto wire_at = [&](const json& value, const std::string& path) {
    const std::string name = string_at(value, path);
    auto w = circuit.find_wire(name);
    if (!w) violation(path, "unknown wire '" + name + "'");
    return *w;
  };

  for (std::size_t i = 0; i < gates.size(); ++i) {
    const std::string path = "$.gates[" + std::to_string(i) + "]";
    const json& jg = gates[i];
    Gate g;
    const std::string kind = string_at(field(jg, "kind", path), path + ".kind");
    auto k = kind_from_name(kind);
    if (!k) violation(path + ".kind", "unknown kind '" + kind + "'");
    g.kind = *k;
    const json& controls = field(jg, "controls", path);
    if (!controls.is_array()) violation(path + ".controls", "expected array");
    for (std::size_t c = 0; c < controls.size(); ++c) {
      const std::string cpath = path + ".controls[" + std::to_string(c) + "]";
      Control ctrl;
      ctrl.wire = wire_at(field(controls[c], "wire", cpath), cpath + ".wire");
      const std::string pol = string_at(field(controls[c], "polarity", cpath), cpath + ".polarity");
      if (pol == "positive") {
        ctrl.polarity = Polarity::Positive;
      } else if (pol == "negative") {
        ctrl.polarity = Polarity::Negative;
      } else {
        violation(cpath + ".polarity", "expected positive|negative");
      }
      g.controls.push_back(ctrl);
    }
    const json& targets = field(jg, "targets", path);
    if (!targets.is_array()) violation(path + ".targets", "expected array");
    for (std::size_t t = 0; t < targets.size(); ++t) {
      g.targets.push_back(wire_at(targets[t], path + ".targets[" + std::to_string(t) + "]"));
    }
    if (auto it = jg.find("condition"); it != jg.end()) {
      g.condition = string_at(*it, path + ".condition");
      if (!circuit.records().contains(g.condition)) {
        violation(path + ".condition", "record '" + g.condition + "' is not produced by an earlier MEASURE_X");
      }
    }
    if (auto it = jg.find("record"); it != jg.end()) g.record = string_at(*it, path + ".record");
    try {
      circuit.append(std::move(g), tags[i]);
    } catch (const Error& e) {
      violation(path, e.what());
    }
  }
  return circuit;
}

// ---------------------------------------------------------------- OpenQASM

std::string export_qasm(const Circuit& circuit) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  for (std::uint32_t i = 0; i < circuit.num_wires(); ++i) {
    out << "// q[" << i << "] = " << circuit.wire_name(WireId{i}) << "\n";
  }
  out << "qreg q[" << circuit.num_wires() << "];\n";
  for (const auto& r : circuit.records()) out << "creg " << r << "[1];\n";

  auto q = [](WireId w) { return "q[" + std::to_string(w.index) + "]"; };
  for (const Gate& g : circuit.gates()) {
    const WireId t = g.targets.front();
    std::vector<WireId> flipped;
    for (const auto& c : g.controls) {
      if (c.polarity == Polarity::Negative) flipped.push_back(c.wire);
    }
    for (const WireId w : flipped) out << "x " << q(w) << ";\n";
    switch (g.kind) {
      case GateKind::X: out << "x " << q(t) << ";\n"; break;
      case GateKind::H: out << "h " << q(t) << ";\n"; break;
      case GateKind::S: out << "s " << q(t) << ";\n"; break;
      case GateKind::Sdg: out << "sdg " << q(t) << ";\n"; break;
      case GateKind::T: out << "t " << q(t) << ";\n"; break;
      case GateKind::Tdg: out << "tdg " << q(t) << ";\n"; break;
      case GateKind::Z: out << "z " << q(t) << ";\n"; break;
      case GateKind::CX: out << "cx " << q(g.controls[0].wire) << "," << q(t) << ";\n"; break;
      case GateKind::CZ: out << "cz " << q(g.controls[0].wire) << "," << q(t) << ";\n"; break;
      case GateKind::MCXFanout:
        for (const WireId target : g.targets) {
          out << "cx " << q(g.controls[0].wire) << "," << q(target) << ";\n";
        }
        break;
      case GateKind::CCX:
        out << "ccx " << q(g.controls[0].wire) << "," << q(g.controls[1].wire) << "," << q(t) << ";\n";
        break;
      case GateKind::CCZ:
        out << "h " << q(t) << ";\nccx " << q(g.controls[0].wire) << "," << q(g.controls[1].wire)
            << "," << q(t) << ";\nh " << q(t) << ";\n";
        break;
      case GateKind::MeasureX:
        out << "h " << q(t) << ";\nmeasure " << q(t) << " -> " << g.record << "[0];\n";
        break;
      case GateKind::ClassicalCZ:
        out << "if(" << g.condition << "==1) cz " << q(g.controls[0].wire) << "," << q(t) << ";\n";
        break;
      case GateKind::ClassicalCX:
        out << "if(" << g.condition << "==1) cx " << q(g.controls[0].wire) << "," << q(t) << ";\n";
        break;
    }
    for (const WireId w : flipped) out << "x " << q(w) << ";\n";
  }
  return out.str();
}

}  // namespace qramforge
