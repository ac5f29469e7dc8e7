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

#include "qramforge/scheduler.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace qramforge {

namespace {

bool fans_out(GateKind kind) {
  return kind == GateKind::CX || kind == GateKind::MCXFanout || kind == GateKind::ClassicalCX;
}

constexpr long kUnused = -1;

}  // namespace

Schedule schedule_asap(const Circuit& circuit) {
  Schedule s;
  s.moment_of.resize(circuit.size());
  std::vector<long> last(circuit.num_wires(), kUnused);
  // Whether the wire's last moment used it only as a fan-out control.
  std::vector<bool> control_only(circuit.num_wires(), false);
  std::map<std::string, long> measured_at;

  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Gate& g = circuit[i];
    long earliest = 0;
    if (!g.condition.empty()) earliest = measured_at.at(g.condition) + 1;

    long moment = 0;
    if (fans_out(g.kind)) {
      const std::uint32_t c = g.controls[0].wire.index;
      long targets_last = kUnused;
      for (WireId t : g.targets) targets_last = std::max(targets_last, last[t.index]);
      if (control_only[c] && last[c] != kUnused && targets_last < last[c] && earliest <= last[c]) {
        moment = last[c];
      } else {
        moment = std::max({earliest, last[c] + 1, targets_last + 1});
      }
      last[c] = moment;
      control_only[c] = true;
      for (WireId t : g.targets) {
        last[t.index] = moment;
        control_only[t.index] = false;
      }
    } else {
      moment = earliest;
      for (WireId w : g.wires()) moment = std::max(moment, last[w.index] + 1);
      for (WireId w : g.wires()) {
        last[w.index] = moment;
        control_only[w.index] = false;
      }
    }
    if (g.kind == GateKind::MeasureX) measured_at[g.record] = moment;

    const auto m = static_cast<std::size_t>(moment);
    if (s.moments.size() <= m) s.moments.resize(m + 1);
    s.moments[m].push_back(i);
    s.moment_of[i] = m;
  }
  return s;
}

Circuit fuse_fanout_cnots(const Circuit& circuit, const Schedule& schedule) {
  std::vector<std::size_t> order(circuit.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto block = [&](std::size_t i) { return std::make_pair(circuit.region_of(i), schedule.moment_of[i]); };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return block(a) < block(b); });

  Circuit out = circuit.empty_copy();
  for (std::size_t begin = 0; begin < order.size();) {
    std::size_t end = begin;
    while (end < order.size() && block(order[end]) == block(order[begin])) ++end;
    // Gates of one moment are wire-disjoint apart from shared controls, so
    // their relative order is free.
    std::vector<WireId> done;
    for (std::size_t p = begin; p < end; ++p) {
      const Gate& g = circuit[order[p]];
      const Region region = circuit.region_of(order[p]);
      if (g.kind != GateKind::CX && g.kind != GateKind::MCXFanout) {
        out.append(g, region);
        continue;
      }
      const WireId control = g.controls[0].wire;
      if (std::find(done.begin(), done.end(), control) != done.end()) continue;
      done.push_back(control);
      std::vector<WireId> targets;
      for (std::size_t r = p; r < end; ++r) {
        const Gate& other = circuit[order[r]];
        if ((other.kind == GateKind::CX || other.kind == GateKind::MCXFanout) && other.controls[0].wire == control) {
          targets.insert(targets.end(), other.targets.begin(), other.targets.end());
        }
      }
      out.append(targets.size() == 1 ? g : Gate::fanout(control, targets), region);
    }
    begin = end;
  }
  return out;
}

Circuit fuse_fanout_cnots(const Circuit& circuit) { return fuse_fanout_cnots(circuit, schedule_asap(circuit)); }

RegionDepths region_depths(const Circuit& circuit) {
  if (!circuit.has_regions()) throw Error(ErrorCode::MissingRegionTags, "circuit has no region tags");
  RegionDepths d;
  d.fanout = schedule_asap(circuit.region_circuit(Region::Fanout)).depth();
  d.query = schedule_asap(circuit.region_circuit(Region::Query)).depth();
  d.fanin = schedule_asap(circuit.region_circuit(Region::Fanin)).depth();
  d.total = schedule_asap(circuit).depth();
  return d;
}

Circuit expand_ghz_fanout(const Circuit& circuit) {
  std::size_t needed = 0;
  for (const Gate& g : circuit.gates()) {
    if (g.kind == GateKind::MCXFanout && g.targets.size() > 1) needed = std::max(needed, g.targets.size() - 1);
  }
  Circuit out = circuit.empty_copy();
  std::vector<WireId> ancillae;
  for (std::size_t a = 0; a < needed; ++a) {
    const std::string name = "ghz_anc_" + std::to_string(a);
    ancillae.push_back(out.find_wire(name) ? out.wire(name) : out.add_wire(name, WireClass::Ancilla));
  }

  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Gate& g = circuit[i];
    const Region region = circuit.region_of(i);
    if (g.kind != GateKind::MCXFanout) {
      out.append(g, region);
      continue;
    }
    if (g.targets.size() == 1) {
      out.append(Gate::cx(g.controls[0].wire, g.targets[0]), region);
      continue;
    }
    // Doubling tree: every holder of the control value copies it onto one
    // fresh ancilla per layer.
    std::vector<WireId> holders{g.controls[0].wire};
    GateSequence tree;
    std::size_t next = 0;
    while (holders.size() < g.targets.size()) {
      const std::size_t layer = holders.size();
      for (std::size_t h = 0; h < layer && holders.size() < g.targets.size(); ++h) {
        tree.push_back(Gate::cx(holders[h], ancillae[next]));
        holders.push_back(ancillae[next++]);
      }
    }
    out.append(tree, region);
    for (std::size_t t = 0; t < g.targets.size(); ++t) out.append(Gate::cx(holders[t], g.targets[t]), region);
    for (auto it = tree.rbegin(); it != tree.rend(); ++it) out.append(*it, region);
  }
  return out;
}

Circuit apply_parallelisation_template(const Circuit& circuit, std::size_t site) {
  auto mismatch = [&](const std::string& why) {
    return Error(ErrorCode::PatternMismatch, "gate " + std::to_string(site) + ": " + why);
  };
  if (site + 2 >= circuit.size()) throw mismatch("needs three gates");
  const Gate& first = circuit[site];
  const Gate& mid = circuit[site + 1];
  const Gate& last = circuit[site + 2];
  if (first.kind != GateKind::CX || last.kind != GateKind::CX || !(first == last)) {
    throw mismatch("expected matching CX gates around the Toffoli");
  }
  if (mid.kind != GateKind::CCX) throw mismatch("expected a CCX in the middle");
  const WireId c = first.controls[0].wire;
  const WireId x = first.targets[0];
  const Region region = circuit.region_of(site);
  if (circuit.region_of(site + 1) != region || circuit.region_of(site + 2) != region) {
    throw mismatch("pattern crosses a region boundary");
  }

  std::optional<Control> on_x;
  std::optional<Control> other;
  for (const auto& ctl : mid.controls) {
    if (ctl.wire == x) {
      on_x = ctl;
    } else {
      other = ctl;
    }
  }
  if (!on_x || !other) throw mismatch("the CX target is not a Toffoli control");
  if (other->wire == c || mid.targets[0] == c) throw mismatch("the CX control also feeds the Toffoli");

  Circuit out = circuit.empty_copy();
  for (std::size_t i = 0; i < site; ++i) out.append(circuit[i], circuit.region_of(i));
  // t ^= y (x ^ c) splits into t ^= y c and t ^= y x; a negative control on
  // x complements the parity, which is carried by complementing c.
  out.append(Gate::ccx(*other, Control{c, on_x->polarity}, mid.targets[0]), region);
  out.append(Gate::ccx(*other, Control{x, Polarity::Positive}, mid.targets[0]), region);
  for (std::size_t i = site + 3; i < circuit.size(); ++i) out.append(circuit[i], circuit.region_of(i));
  return out;
}

std::string render_moments(const Circuit& circuit, const Schedule& schedule) {
  std::ostringstream out;
  for (std::size_t m = 0; m < schedule.moments.size(); ++m) {
    std::vector<std::size_t> gates = schedule.moments[m];
    auto lowest = [&](std::size_t i) {
      const auto wires = circuit[i].wires();
      return std::min_element(wires.begin(), wires.end())->index;
    };
    std::stable_sort(gates.begin(), gates.end(), [&](std::size_t a, std::size_t b) { return lowest(a) < lowest(b); });
    out << m << ":";
    for (std::size_t i : gates) {
      const Gate& g = circuit[i];
      out << ' ' << kind_name(g.kind) << '(';
      for (std::size_t c = 0; c < g.controls.size(); ++c) {
        if (c) out << ',';
        if (g.controls[c].polarity == Polarity::Negative) out << '!';
        out << circuit.wire_name(g.controls[c].wire);
      }
      if (!g.controls.empty()) out << "->";
      for (std::size_t t = 0; t < g.targets.size(); ++t) {
        if (t) out << ',';
        out << circuit.wire_name(g.targets[t]);
      }
      if (!g.condition.empty()) out << '|' << g.condition;
      if (!g.record.empty()) out << "=>" << g.record;
      out << ')';
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace qramforge
