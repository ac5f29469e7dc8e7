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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qramforge/ir.hpp"

namespace qramforge {

/// Address width q, query exponent n and the classical memory bits m_0 ..
/// m_{2^q - 1}.
struct QramInstance {
  int q = 1;
  int n = 1;
  std::vector<std::uint8_t> memory;

  /// Throws InvalidInstance unless 1 <= n <= q <= 30 and |memory| = 2^q.
  void validate() const;

  std::uint64_t cells() const { return std::uint64_t{1} << q; }
  std::uint64_t queries() const { return std::uint64_t{1} << n; }

  /// Memory given as a string of '0'/'1', character j holding m_j.
  static QramInstance with_bits(int q, int n, std::string_view bits);
  static QramInstance all_ones(int q, int n);
  static QramInstance random(int q, int n, std::uint64_t seed);

  std::string memory_bits() const;
};

struct QramWireLayout {
  std::vector<WireId> address;   // address[i] = a_i
  std::vector<WireId> pointers;  // pointers[j] = b_j
  std::vector<WireId> memory;    // memory[j] = m_j
  WireId target;
};

std::string address_wire_name(int bit);
std::string pointer_wire_name(std::uint64_t cell, int q);
std::string memory_wire_name(std::uint64_t cell, int q);

/// Registers the QRAM wires in display order: a_{q-1} .. a_0, b_0 ..
/// b_{2^q-1}, m_{2^q-1} .. m_0, target.
QramWireLayout add_qram_wires(Circuit& circuit, int q);

/// Finds the QRAM wires of an existing circuit by name. Throws LayoutMismatch
/// when one is missing.
QramWireLayout find_qram_layout(const Circuit& circuit, int q);

enum class FaninMode : std::uint8_t { Measurement, Unitary };
std::optional<FaninMode> fanin_mode_from_name(std::string_view name);

enum class QramFamily : std::uint8_t { Toffoli, Sequential, Parallel };
std::optional<QramFamily> qram_family_from_name(std::string_view name);

/// CX/CCX bucket brigade: FANOUT computes one-hot pointers b_j = [address ==
/// j], QUERY applies CCX(b_j, m_j -> target) for j < 2^n, FANIN undoes FANOUT.
Circuit build_toffoli_bucket_brigade(const QramInstance& instance);

/// The Toffoli-level circuit with every CCX replaced by the canonical 7-T
/// network.
Circuit build_sequential_clifford_t(const QramInstance& instance);

/// Clifford+T bucket brigade with logical-AND FANOUT, constant-depth
/// shared-target QUERY and either measurement-based or unitary FANIN.
Circuit build_parallel_clifford_t(const QramInstance& instance, FaninMode fanin = FaninMode::Measurement);

Circuit build_qram(QramFamily family, const QramInstance& instance, FaninMode fanin = FaninMode::Measurement);

/// Target bit produced for one address and incoming target bit.
int reference_target(const QramInstance& instance, std::uint64_t address, int target);

/// Permutation on (address, target): |a>|t> -> |a>|t ^ m_a> for a < 2^n,
/// identity otherwise. The address occupies the high q bits.
Eigen::MatrixXcd reference_qram_map(const QramInstance& instance);

}  // namespace qramforge
