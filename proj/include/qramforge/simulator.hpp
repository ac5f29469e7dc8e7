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

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qramforge/builders.hpp"
#include "qramforge/ir.hpp"

namespace qramforge {

using Amplitude = std::complex<double>;

/// Absolute tolerance on amplitudes for every equivalence decision.
inline constexpr double kAmplitudeTolerance = 1e-9;
/// Branches below this probability are dropped during enumeration.
inline constexpr double kBranchCutoff = 1e-12;

/// Wire cap for dense simulation, from QRAMFORGE_MAX_SIM_WIRES (default 22).
std::size_t max_sim_wires();

/// Dense state on w wires. The first circuit wire is the most significant
/// bit of the basis index.
class StateVector {
 public:
  explicit StateVector(std::size_t wires, std::uint64_t basis = 0);
  StateVector(std::size_t wires, Eigen::VectorXcd amplitudes);

  std::size_t wires() const { return wires_; }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  Eigen::VectorXcd& amplitudes() { return amp_; }
  Amplitude operator[](std::uint64_t index) const { return amp_(static_cast<Eigen::Index>(index)); }
  double norm() const { return amp_.norm(); }

  /// Applies one unitary gate. Throws NonUnitaryGate for measurement kinds.
  void apply(const Gate& gate);

  /// Bit mask of a wire inside a basis index.
  std::uint64_t mask(WireId wire) const { return std::uint64_t{1} << (wires_ - 1 - wire.index); }

 private:
  std::size_t wires_;
  Eigen::VectorXcd amp_;
};

StateVector apply(StateVector state, const Gate& gate);
StateVector run(const Circuit& circuit, StateVector state);

/// Column k is the circuit applied to basis state k. Throws TooManyWires past
/// max_sim_wires() and NonUnitaryGate on measurements.
Eigen::MatrixXcd unitary_of(const Circuit& circuit, bool check_unitarity = true);

/// Matrix of the gates in `gates` acting on `wires` wires, without a Circuit.
Eigen::MatrixXcd unitary_of_gates(std::size_t wires, std::span<const Gate> gates);

struct Branch {
  std::map<std::string, int> outcomes;  // record -> measured bit
  double probability = 1.0;
  StateVector state;                    // normalised post-measurement state
};

struct BranchSet {
  std::vector<Branch> branches;
  std::size_t dropped = 0;  // branches below kBranchCutoff
};

BranchSet enumerate_measurement_branches(const Circuit& circuit, const StateVector& input);

/// Sparse state as sorted (basis index, amplitude) pairs. Wire i is bit
/// (w - 1 - i) as in StateVector; at most 64 wires.
class SparseState {
 public:
  SparseState(std::size_t wires, std::uint64_t basis);

  std::size_t wires() const { return wires_; }
  const std::vector<std::pair<std::uint64_t, Amplitude>>& terms() const { return terms_; }
  std::uint64_t mask(WireId wire) const { return std::uint64_t{1} << (wires_ - 1 - wire.index); }

  void apply(const Gate& gate);
  /// Keeps the terms whose `wire` bit equals `bit` and returns their total
  /// probability. The state is left unnormalised.
  double project(WireId wire, int bit);
  void scale(double factor);
  double norm_squared() const;

 private:
  void canonicalise();

  std::size_t wires_;
  std::vector<std::pair<std::uint64_t, Amplitude>> terms_;
};

/// Runs a circuit on a basis input, splitting at every MEASURE_X. Branches
/// are returned normalised, with their probability.
struct SparseBranch {
  std::map<std::string, int> outcomes;
  double probability = 1.0;
  SparseState state;
};
std::vector<SparseBranch> run_sparse(const Circuit& circuit, std::uint64_t basis);

enum class EquivalenceLevel : std::uint8_t { Exact, GlobalPhasePerMemory, Inequivalent };
std::string_view equivalence_name(EquivalenceLevel level);

struct EquivalenceVerdict {
  EquivalenceLevel level = EquivalenceLevel::Exact;
  double max_deviation = 0.0;
  std::optional<std::uint64_t> witnessing_input;  // basis index of the full register
  std::optional<std::uint64_t> witness_address;
  std::string witness_memory;
  std::string detail;
  std::size_t memories_checked = 0;
  std::size_t runs = 0;
};

struct VerifyOptions {
  /// Memories to check. Empty: all of them for q <= 2, `random_memories`
  /// seeded samples for q = 3 and `spot_memories` for larger q.
  std::vector<std::vector<std::uint8_t>> memories;
  std::size_t random_memories = 64;
  std::size_t spot_memories = 4;
  std::uint64_t seed = 0x5eed;
};

/// Checks a QRAM circuit against the reference map for every basis address,
/// both target values and each selected memory. Pointers and extra wires
/// must start and end in |0>, memory is unchanged and measured wires are
/// released.
EquivalenceVerdict verify_qram(const Circuit& circuit, const QramInstance& instance,
                               const VerifyOptions& options = {});

}  // namespace qramforge
