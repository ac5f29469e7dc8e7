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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qramforge/ir.hpp"

namespace qramforge {

enum class CczVariant : std::uint8_t {
  Canonical7T,
  ParallelSharedWire,  // the shared wire only acts as CX control and carries phases
  LogicalAndCompute,   // 4 T, target must start in |0>, leaves (-i)^{c0 c1}
  LogicalAndUncompute, // X-basis measurement plus conditional CZ, no T
};

std::string_view variant_name(CczVariant variant);
std::optional<CczVariant> variant_from_name(std::string_view name);
int variant_t_count(CczVariant variant);

/// CCZ on (w0, w1, w2). For the AND variants w0 and w1 are the controls and
/// w2 the ancilla. `shared` picks the pass-through wire of
/// ParallelSharedWire and is ignored by the other variants. `record` names the
/// measurement of LogicalAndUncompute.
GateSequence lower_ccz(CczVariant variant, WireId w0, WireId w1, WireId w2,
                       std::optional<WireId> shared = std::nullopt,
                       const std::string& record = "and_r");

/// Toffoli form: H(target), CCZ core, H(target). LogicalAndUncompute has no
/// Hadamard sandwich since MEASURE_X already measures in the X basis.
GateSequence lower_toffoli(CczVariant variant, WireId c0, WireId c1, WireId target,
                           std::optional<WireId> shared = std::nullopt,
                           const std::string& record = "and_r");

GateSequence lower_and_uncompute(WireId c0, WireId c1, WireId target, const std::string& record);

/// Circuit on three fresh wires named q0, q1, q2 holding one lowered CCZ or
/// Toffoli. Convenience wrapper for tests and the CLI.
Circuit ccz_circuit(CczVariant variant, std::optional<std::uint32_t> shared_index = std::nullopt);
Circuit toffoli_circuit(CczVariant variant, std::optional<std::uint32_t> shared_index = std::nullopt);

/// Phase polynomial of a CX + diagonal fragment. Wire i starts with the parity
/// label (1 << i). Coefficients are in units of pi/4, reduced mod 8, keyed by
/// parity bitmask; zero coefficients are omitted.
struct PhasePolynomial {
  std::map<std::uint32_t, int> terms;
  std::vector<std::uint32_t> parities;  // final parity label per wire

  int coefficient(std::uint32_t mask) const;
  bool parities_restored() const;
  bool operator==(const PhasePolynomial&) const = default;
};

PhasePolynomial phase_polynomial_of(const Circuit& circuit);

/// The CCZ polynomial 4xyz = x + y + z - (x^y) - (y^z) - (x^z) + (x^y^z) on
/// wires 0, 1, 2.
PhasePolynomial ccz_phase_polynomial();

/// k logical ANDs that share one positive control. Each Toffoli writes onto a
/// fresh |0> target. The shared control's CX bundles become MCX_FANOUT gates,
/// so the k ANDs take the depth of one. The (-i)^{ab} phase of every AND is
/// left in place.
GateSequence lower_shared_control(std::span<const Gate> toffolis);

/// k Toffolis that share only their target. The shared target plays the
/// pass-through role; its k T gates are merged mod 8 into one Clifford+T run.
GateSequence lower_shared_target(std::span<const Gate> toffolis);

GateSequence pair_lower_shared_control(const Gate& toffoli_a, const Gate& toffoli_b);
GateSequence pair_lower_shared_target(const Gate& toffoli_a, const Gate& toffoli_b);

/// Gates that realise `units` * pi/4 of phase on one wire: at most one
/// Clifford gate and at most one T.
GateSequence phase_gates(int units, WireId wire);

/// Merges runs of T, T_DAG, S, S_DAG, Z that follow each other on a wire,
/// within one region, into the shortest equivalent run.
Circuit merge_phases(const Circuit& circuit);

/// Which wire of a Toffoli acts as the pass-through wire.
enum class SharedRole : std::uint8_t { Target, Control0, Control1 };
std::optional<SharedRole> shared_role_from_name(std::string_view name);

/// Lowers every CCX and CCZ of a circuit with one variant. Region tags and
/// all other gates are kept.
Circuit lower_circuit(const Circuit& circuit, CczVariant variant, SharedRole role = SharedRole::Target);

}  // namespace qramforge
