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

#include "qramforge/decompositions.hpp"

#include <algorithm>

namespace qramforge {

namespace {

Gate t(WireId w) { return Gate::single(GateKind::T, w); }
Gate tdg(WireId w) { return Gate::single(GateKind::Tdg, w); }
Gate h(WireId w) { return Gate::single(GateKind::H, w); }

void append_all(GateSequence& out, const GateSequence& more) {
  out.insert(out.end(), more.begin(), more.end());
}

// Standard 7-T network on (c0, c1, t).
GateSequence canonical_core(WireId c0, WireId c1, WireId tw) {
  return {Gate::cx(c1, tw), tdg(tw),          Gate::cx(c0, tw), t(tw),   Gate::cx(c1, tw),
          tdg(tw),          Gate::cx(c0, tw), t(c1),            t(tw),   Gate::cx(c0, c1),
          t(c0),            tdg(c1),          Gate::cx(c0, c1)};
}

// The parallelisable CCZ with q1 as the pass-through wire.
GateSequence shared_core(WireId q0, WireId q1, WireId q2) {
  return {t(q0),            t(q1),            t(q2),
          Gate::cx(q2, q0), tdg(q0),          Gate::cx(q1, q0),
          Gate::cx(q1, q2), t(q0),            tdg(q2),
          Gate::cx(q1, q2), Gate::cx(q2, q0), tdg(q0),
          Gate::cx(q1, q0)};
}

GateSequence and_core(WireId c0, WireId c1, WireId tw) {
  return {t(tw), Gate::cx(c0, tw), tdg(tw), Gate::cx(c1, tw),
          t(tw), Gate::cx(c0, tw), tdg(tw), Gate::cx(c1, tw)};
}

}  // namespace

std::string_view variant_name(CczVariant variant) {
  switch (variant) {
    case CczVariant::Canonical7T: return "canonical";
    case CczVariant::ParallelSharedWire: return "parallel";
    case CczVariant::LogicalAndCompute: return "and";
    case CczVariant::LogicalAndUncompute: return "and_uncompute";
  }
  return "?";
}

std::optional<CczVariant> variant_from_name(std::string_view name) {
  for (auto v : {CczVariant::Canonical7T, CczVariant::ParallelSharedWire,
                 CczVariant::LogicalAndCompute, CczVariant::LogicalAndUncompute}) {
    if (variant_name(v) == name) return v;
  }
  return std::nullopt;
}

int variant_t_count(CczVariant variant) {
  switch (variant) {
    case CczVariant::Canonical7T:
    case CczVariant::ParallelSharedWire:
      return 7;
    case CczVariant::LogicalAndCompute: return 4;
    case CczVariant::LogicalAndUncompute: return 0;
  }
  return 0;
}

GateSequence lower_ccz(CczVariant variant, WireId w0, WireId w1, WireId w2,
                       std::optional<WireId> shared, const std::string& record) {
  switch (variant) {
    case CczVariant::Canonical7T: return canonical_core(w0, w1, w2);
    case CczVariant::ParallelSharedWire: {
      if (!shared || (*shared != w0 && *shared != w1 && *shared != w2)) {
        throw Error(ErrorCode::InvalidSharedWire, "shared wire must be one of the three CCZ wires");
      }
      std::vector<WireId> others;
      for (WireId w : {w0, w1, w2}) {
        if (w != *shared) others.push_back(w);
      }
      return shared_core(others[0], *shared, others[1]);
    }
    case CczVariant::LogicalAndCompute: return and_core(w0, w1, w2);
    case CczVariant::LogicalAndUncompute: return lower_and_uncompute(w0, w1, w2, record);
  }
  return {};
}

GateSequence lower_toffoli(CczVariant variant, WireId c0, WireId c1, WireId target,
                           std::optional<WireId> shared, const std::string& record) {
  if (variant == CczVariant::LogicalAndUncompute) return lower_and_uncompute(c0, c1, target, record);
  GateSequence out{h(target)};
  append_all(out, lower_ccz(variant, c0, c1, target, shared, record));
  out.push_back(h(target));
  return out;
}

GateSequence lower_and_uncompute(WireId c0, WireId c1, WireId target, const std::string& record) {
  return {Gate::measure_x(target, record), Gate::classical_cz(c0, c1, record)};
}

namespace {

Circuit three_wires() {
  Circuit c;
  c.add_wire("q0");
  c.add_wire("q1");
  c.add_wire("q2");
  return c;
}

std::optional<WireId> shared_of(std::optional<std::uint32_t> index) {
  if (!index) return std::nullopt;
  if (*index > 2) throw Error(ErrorCode::InvalidSharedWire, "shared index " + std::to_string(*index));
  return WireId{*index};
}

}  // namespace

Circuit ccz_circuit(CczVariant variant, std::optional<std::uint32_t> shared_index) {
  Circuit c = three_wires();
  c.append(lower_ccz(variant, WireId{0}, WireId{1}, WireId{2}, shared_of(shared_index)));
  return c;
}

Circuit toffoli_circuit(CczVariant variant, std::optional<std::uint32_t> shared_index) {
  Circuit c = three_wires();
  c.append(lower_toffoli(variant, WireId{0}, WireId{1}, WireId{2}, shared_of(shared_index)));
  return c;
}

// ------------------------------------------------------- phase polynomials

int PhasePolynomial::coefficient(std::uint32_t mask) const {
  auto it = terms.find(mask);
  return it == terms.end() ? 0 : it->second;
}

bool PhasePolynomial::parities_restored() const {
  for (std::size_t i = 0; i < parities.size(); ++i) {
    if (parities[i] != (1u << i)) return false;
  }
  return true;
}

PhasePolynomial phase_polynomial_of(const Circuit& circuit) {
  if (circuit.num_wires() > 32) {
    throw Error(ErrorCode::NonLinearFragment, "phase polynomials are limited to 32 wires");
  }
  PhasePolynomial poly;
  poly.parities.resize(circuit.num_wires());
  for (std::uint32_t i = 0; i < circuit.num_wires(); ++i) poly.parities[i] = 1u << i;
  std::map<std::uint32_t, int> acc;
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Gate& g = circuit[i];
    if (auto units = phase_units(g.kind)) {
      acc[poly.parities[g.targets[0].index]] += *units;
    } else if (g.kind == GateKind::CX || g.kind == GateKind::MCXFanout) {
      for (WireId tw : g.targets) poly.parities[tw.index] ^= poly.parities[g.controls[0].wire.index];
    } else {
      throw Error(ErrorCode::NonLinearFragment,
                  std::string(kind_name(g.kind)) + " at gate " + std::to_string(i));
    }
  }
  for (const auto& [mask, value] : acc) {
    const int reduced = ((value % 8) + 8) % 8;
    if (reduced != 0) poly.terms[mask] = reduced;
  }
  return poly;
}

PhasePolynomial ccz_phase_polynomial() {
  PhasePolynomial poly;
  poly.parities = {1, 2, 4};
  poly.terms = {{0b001, 1}, {0b010, 1}, {0b100, 1}, {0b011, 7},
                {0b110, 7}, {0b101, 7}, {0b111, 1}};
  return poly;
}

// ---------------------------------------------------------- shared wires

namespace {

void require_toffoli(const Gate& g, ErrorCode code) {
  if (g.kind != GateKind::CCX) throw Error(code, "expected CCX, got " + std::string(kind_name(g.kind)));
  for (const auto& c : g.controls) {
    if (c.polarity != Polarity::Positive) throw Error(code, "negative controls cannot be lowered here");
  }
}

}  // namespace

GateSequence lower_shared_control(std::span<const Gate> toffolis) {
  if (toffolis.empty()) return {};
  for (const Gate& g : toffolis) require_toffoli(g, ErrorCode::NotSharedControl);

  // The shared control is the control wire present in every gate.
  std::optional<WireId> shared;
  for (const auto& cand : toffolis.front().controls) {
    const bool everywhere = std::all_of(toffolis.begin(), toffolis.end(), [&](const Gate& g) {
      return g.controls[0].wire == cand.wire || g.controls[1].wire == cand.wire;
    });
    if (everywhere) {
      shared = cand.wire;
      break;
    }
  }
  if (!shared) throw Error(ErrorCode::NotSharedControl, "Toffolis do not share a control");

  std::vector<WireId> others;
  std::vector<WireId> targets;
  std::vector<WireId> used{*shared};
  for (const Gate& g : toffolis) {
    const WireId other = g.controls[0].wire == *shared ? g.controls[1].wire : g.controls[0].wire;
    for (WireId w : {other, g.targets[0]}) {
      if (std::find(used.begin(), used.end(), w) != used.end()) {
        throw Error(ErrorCode::NotSharedControl, "Toffolis share more than one wire");
      }
      used.push_back(w);
    }
    others.push_back(other);
    targets.push_back(g.targets[0]);
  }

  GateSequence out;
  auto layer = [&](auto make) {
    for (std::size_t j = 0; j < targets.size(); ++j) out.push_back(make(j));
  };
  layer([&](std::size_t j) { return h(targets[j]); });
  layer([&](std::size_t j) { return t(targets[j]); });
  layer([&](std::size_t j) { return Gate::cx(others[j], targets[j]); });
  layer([&](std::size_t j) { return tdg(targets[j]); });
  out.push_back(Gate::fanout(*shared, targets));
  layer([&](std::size_t j) { return t(targets[j]); });
  layer([&](std::size_t j) { return Gate::cx(others[j], targets[j]); });
  layer([&](std::size_t j) { return tdg(targets[j]); });
  out.push_back(Gate::fanout(*shared, targets));
  layer([&](std::size_t j) { return h(targets[j]); });
  return out;
}

GateSequence phase_gates(int units, WireId wire) {
  units = ((units % 8) + 8) % 8;
  switch (units) {
    case 0: return {};
    case 1: return {t(wire)};
    case 2: return {Gate::single(GateKind::S, wire)};
    case 3: return {Gate::single(GateKind::S, wire), t(wire)};
    case 4: return {Gate::single(GateKind::Z, wire)};
    case 5: return {Gate::single(GateKind::Z, wire), t(wire)};
    case 6: return {Gate::single(GateKind::Sdg, wire)};
    default: return {tdg(wire)};
  }
}

GateSequence lower_shared_target(std::span<const Gate> toffolis) {
  if (toffolis.empty()) return {};
  for (const Gate& g : toffolis) require_toffoli(g, ErrorCode::NotSharedTarget);
  const WireId target = toffolis.front().targets[0];
  std::vector<WireId> first;
  std::vector<WireId> second;
  std::vector<WireId> used{target};
  for (const Gate& g : toffolis) {
    if (g.targets[0] != target) throw Error(ErrorCode::NotSharedTarget, "Toffolis have different targets");
    for (const auto& c : g.controls) {
      if (std::find(used.begin(), used.end(), c.wire) != used.end()) {
        throw Error(ErrorCode::NotSharedTarget, "Toffolis share a control wire");
      }
      used.push_back(c.wire);
    }
    first.push_back(g.controls[0].wire);
    second.push_back(g.controls[1].wire);
  }

  // Per Toffoli this is shared_core(first, target, second); the target-wire
  // pieces of all k copies coincide and are emitted once.
  GateSequence out{h(target)};
  append_all(out, phase_gates(static_cast<int>(toffolis.size()), target));
  auto layer = [&](auto make) {
    for (std::size_t j = 0; j < first.size(); ++j) out.push_back(make(j));
  };
  layer([&](std::size_t j) { return t(first[j]); });
  layer([&](std::size_t j) { return t(second[j]); });
  layer([&](std::size_t j) { return Gate::cx(second[j], first[j]); });
  layer([&](std::size_t j) { return tdg(first[j]); });
  out.push_back(Gate::fanout(target, first));
  out.push_back(Gate::fanout(target, second));
  layer([&](std::size_t j) { return t(first[j]); });
  layer([&](std::size_t j) { return tdg(second[j]); });
  out.push_back(Gate::fanout(target, second));
  layer([&](std::size_t j) { return Gate::cx(second[j], first[j]); });
  layer([&](std::size_t j) { return tdg(first[j]); });
  out.push_back(Gate::fanout(target, first));
  out.push_back(h(target));
  return out;
}

GateSequence pair_lower_shared_control(const Gate& toffoli_a, const Gate& toffoli_b) {
  const Gate pair[] = {toffoli_a, toffoli_b};
  return lower_shared_control(pair);
}

GateSequence pair_lower_shared_target(const Gate& toffoli_a, const Gate& toffoli_b) {
  const Gate pair[] = {toffoli_a, toffoli_b};
  return lower_shared_target(pair);
}

// ------------------------------------------------------------------ passes

Circuit merge_phases(const Circuit& circuit) {
  Circuit out = circuit.empty_copy();
  std::vector<int> pending(circuit.num_wires(), 0);
  std::vector<bool> has_pending(circuit.num_wires(), false);
  Region region = Region::None;

  auto flush = [&](std::uint32_t w) {
    if (!has_pending[w]) return;
    out.append(phase_gates(pending[w], WireId{w}), region);
    pending[w] = 0;
    has_pending[w] = false;
  };
  auto flush_all = [&] {
    for (std::uint32_t w = 0; w < circuit.num_wires(); ++w) flush(w);
  };

  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Gate& g = circuit[i];
    if (circuit.region_of(i) != region) {
      flush_all();
      region = circuit.region_of(i);
    }
    if (auto units = phase_units(g.kind)) {
      const std::uint32_t w = g.targets[0].index;
      pending[w] += *units;
      has_pending[w] = true;
      continue;
    }
    for (WireId w : g.wires()) flush(w.index);
    out.append(g, region);
  }
  flush_all();
  return out;
}

std::optional<SharedRole> shared_role_from_name(std::string_view name) {
  if (name == "target") return SharedRole::Target;
  if (name == "control0") return SharedRole::Control0;
  if (name == "control1") return SharedRole::Control1;
  return std::nullopt;
}

Circuit lower_circuit(const Circuit& circuit, CczVariant variant, SharedRole role) {
  Circuit out = circuit.empty_copy();
  std::size_t and_count = 0;
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Gate& g = circuit[i];
    const Region region = circuit.region_of(i);
    if (g.kind != GateKind::CCX && g.kind != GateKind::CCZ) {
      out.append(g, region);
      continue;
    }
    for (const auto& c : g.controls) {
      if (c.polarity == Polarity::Negative) out.append(Gate::single(GateKind::X, c.wire), region);
    }
    const WireId c0 = g.controls[0].wire;
    const WireId c1 = g.controls[1].wire;
    const WireId tw = g.targets[0];
    const WireId shared = role == SharedRole::Target ? tw : role == SharedRole::Control0 ? c0 : c1;
    std::string record = "and_r" + std::to_string(and_count);
    while (out.records().contains(record)) record += "_";
    ++and_count;
    out.append(g.kind == GateKind::CCX ? lower_toffoli(variant, c0, c1, tw, shared, record)
                                       : lower_ccz(variant, c0, c1, tw, shared, record),
               region);
    for (const auto& c : g.controls) {
      if (c.polarity == Polarity::Negative) out.append(Gate::single(GateKind::X, c.wire), region);
    }
  }
  return out;
}

}  // namespace qramforge
