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

#include "qramforge/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>

namespace qramforge {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;
constexpr double kDropTolerance = 1e-14;

Amplitude phase_of(int units) {
  switch (((units % 8) + 8) % 8) {
    case 0: return {1.0, 0.0};
    case 1: return {kSqrtHalf, kSqrtHalf};
    case 2: return {0.0, 1.0};
    case 3: return {-kSqrtHalf, kSqrtHalf};
    case 4: return {-1.0, 0.0};
    case 5: return {-kSqrtHalf, -kSqrtHalf};
    case 6: return {0.0, -1.0};
    default: return {kSqrtHalf, -kSqrtHalf};
  }
}

// Gate action expressed on basis indices, shared by both engines.
struct IndexAction {
  enum class Kind { Flip, Phase, Hadamard } kind = Kind::Flip;
  std::uint64_t ones = 0;   // control bits that must be 1
  std::uint64_t zeros = 0;  // control bits that must be 0
  std::uint64_t flip = 0;   // Flip: target bits; Phase/Hadamard: the acted-on bit(s)
  Amplitude phase{1.0, 0.0};

  bool enabled(std::uint64_t i) const { return (i & ones) == ones && (i & zeros) == 0; }
};

template <typename MaskFn>
IndexAction action_of(const Gate& g, MaskFn mask) {
  IndexAction a;
  for (const auto& c : g.controls) {
    (c.polarity == Polarity::Positive ? a.ones : a.zeros) |= mask(c.wire);
  }
  std::uint64_t targets = 0;
  for (WireId t : g.targets) targets |= mask(t);
  switch (g.kind) {
    case GateKind::X:
    case GateKind::CX:
    case GateKind::MCXFanout:
    case GateKind::CCX:
      a.kind = IndexAction::Kind::Flip;
      a.flip = targets;
      break;
    case GateKind::CZ:
    case GateKind::CCZ:
      a.kind = IndexAction::Kind::Phase;
      a.ones |= targets;
      a.phase = -1.0;
      break;
    case GateKind::H:
      a.kind = IndexAction::Kind::Hadamard;
      a.flip = targets;
      break;
    case GateKind::S:
    case GateKind::Sdg:
    case GateKind::T:
    case GateKind::Tdg:
    case GateKind::Z:
      a.kind = IndexAction::Kind::Phase;
      a.ones |= targets;
      a.phase = phase_of(*phase_units(g.kind));
      break;
    case GateKind::MeasureX:
    case GateKind::ClassicalCZ:
    case GateKind::ClassicalCX:
      throw Error(ErrorCode::NonUnitaryGate, std::string(kind_name(g.kind)) + " needs branch enumeration");
  }
  return a;
}

// The unconditional gate a classical gate applies when its record is 1.
Gate unconditioned(const Gate& g) {
  Gate out = g;
  out.condition.clear();
  out.kind = g.kind == GateKind::ClassicalCZ ? GateKind::CZ : GateKind::CX;
  return out;
}

}  // namespace

std::size_t max_sim_wires() {
  if (const char* env = std::getenv("QRAMFORGE_MAX_SIM_WIRES")) {
    char* end = nullptr;
    const unsigned long value = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return value;
  }
  return 22;
}

// ------------------------------------------------------------ dense engine

StateVector::StateVector(std::size_t wires, std::uint64_t basis) : wires_(wires) {
  if (wires > max_sim_wires()) {
    throw Error(ErrorCode::TooManyWires, std::to_string(wires) + " wires exceed the cap of " +
                                             std::to_string(max_sim_wires()));
  }
  const auto dim = Eigen::Index{1} << wires;
  amp_ = Eigen::VectorXcd::Zero(dim);
  amp_(static_cast<Eigen::Index>(basis)) = 1.0;
}

StateVector::StateVector(std::size_t wires, Eigen::VectorXcd amplitudes)
    : wires_(wires), amp_(std::move(amplitudes)) {
  if (amp_.size() != (Eigen::Index{1} << wires)) {
    throw Error(ErrorCode::TooManyWires, "amplitude vector does not match wire count");
  }
}

void StateVector::apply(const Gate& gate) {
  const IndexAction a = action_of(gate, [&](WireId w) { return mask(w); });
  const auto dim = static_cast<std::uint64_t>(amp_.size());
  switch (a.kind) {
    case IndexAction::Kind::Flip:
      for (std::uint64_t i = 0; i < dim; ++i) {
        const std::uint64_t j = i ^ a.flip;
        if (i < j && a.enabled(i)) std::swap(amp_(static_cast<Eigen::Index>(i)), amp_(static_cast<Eigen::Index>(j)));
      }
      break;
    case IndexAction::Kind::Phase:
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (a.enabled(i)) amp_(static_cast<Eigen::Index>(i)) *= a.phase;
      }
      break;
    case IndexAction::Kind::Hadamard:
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & a.flip) continue;
        const auto lo = static_cast<Eigen::Index>(i);
        const auto hi = static_cast<Eigen::Index>(i | a.flip);
        const Amplitude x = amp_(lo);
        const Amplitude y = amp_(hi);
        amp_(lo) = (x + y) * kSqrtHalf;
        amp_(hi) = (x - y) * kSqrtHalf;
      }
      break;
  }
}

StateVector apply(StateVector state, const Gate& gate) {
  state.apply(gate);
  return state;
}

StateVector run(const Circuit& circuit, StateVector state) {
  for (const Gate& g : circuit.gates()) state.apply(g);
  return state;
}

Eigen::MatrixXcd unitary_of_gates(std::size_t wires, std::span<const Gate> gates) {
  if (wires > max_sim_wires()) {
    throw Error(ErrorCode::TooManyWires, std::to_string(wires) + " wires exceed the cap of " +
                                             std::to_string(max_sim_wires()));
  }
  const auto dim = Eigen::Index{1} << wires;
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    StateVector col(wires, static_cast<std::uint64_t>(k));
    for (const Gate& g : gates) col.apply(g);
    u.col(k) = col.amplitudes();
  }
  return u;
}

Eigen::MatrixXcd unitary_of(const Circuit& circuit, bool check_unitarity) {
  Eigen::MatrixXcd u = unitary_of_gates(circuit.num_wires(), circuit.gates());
  if (check_unitarity) {
    const Eigen::MatrixXcd defect = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    const double worst = defect.cwiseAbs().maxCoeff();
    if (worst >= kAmplitudeTolerance) {
      throw Error(ErrorCode::NonUnitaryGate, "unitarity defect " + std::to_string(worst));
    }
  }
  return u;
}

BranchSet enumerate_measurement_branches(const Circuit& circuit, const StateVector& input) {
  BranchSet out;
  std::function<void(std::size_t, StateVector, std::map<std::string, int>, double)> walk =
      [&](std::size_t from, StateVector state, std::map<std::string, int> outcomes, double prob) {
        for (std::size_t i = from; i < circuit.size(); ++i) {
          const Gate& g = circuit[i];
          if (g.kind == GateKind::ClassicalCZ || g.kind == GateKind::ClassicalCX) {
            if (outcomes.at(g.condition) == 1) state.apply(unconditioned(g));
            continue;
          }
          if (g.kind != GateKind::MeasureX) {
            state.apply(g);
            continue;
          }
          const WireId w = g.targets[0];
          state.apply(Gate::single(GateKind::H, w));
          const std::uint64_t m = state.mask(w);
          for (int bit = 0; bit < 2; ++bit) {
            Eigen::VectorXcd amp = state.amplitudes();
            for (Eigen::Index k = 0; k < amp.size(); ++k) {
              const bool set = (static_cast<std::uint64_t>(k) & m) != 0;
              if (set != (bit == 1)) amp(k) = 0.0;
            }
            const double p = amp.squaredNorm();
            if (p < kBranchCutoff) {
              ++out.dropped;
              continue;
            }
            auto next = outcomes;
            next[g.record] = bit;
            walk(i + 1, StateVector(state.wires(), amp / std::sqrt(p)), std::move(next), prob * p);
          }
          return;
        }
        out.branches.push_back(Branch{std::move(outcomes), prob, std::move(state)});
      };
  walk(0, input, {}, 1.0);
  return out;
}

// ----------------------------------------------------------- sparse engine

SparseState::SparseState(std::size_t wires, std::uint64_t basis) : wires_(wires) {
  if (wires > 64) throw Error(ErrorCode::TooManyWires, "sparse states hold at most 64 wires");
  terms_.emplace_back(basis, Amplitude{1.0, 0.0});
}

void SparseState::canonicalise() {
  std::sort(terms_.begin(), terms_.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::pair<std::uint64_t, Amplitude>> merged;
  merged.reserve(terms_.size());
  for (const auto& term : terms_) {
    if (!merged.empty() && merged.back().first == term.first) {
      merged.back().second += term.second;
    } else {
      merged.push_back(term);
    }
  }
  std::erase_if(merged, [](const auto& term) { return std::abs(term.second) < kDropTolerance; });
  terms_ = std::move(merged);
}

void SparseState::apply(const Gate& gate) {
  const IndexAction a = action_of(gate, [&](WireId w) { return mask(w); });
  switch (a.kind) {
    case IndexAction::Kind::Flip:
      for (auto& term : terms_) {
        if (a.enabled(term.first)) term.first ^= a.flip;
      }
      std::sort(terms_.begin(), terms_.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      break;
    case IndexAction::Kind::Phase:
      for (auto& term : terms_) {
        if (a.enabled(term.first)) term.second *= a.phase;
      }
      break;
    case IndexAction::Kind::Hadamard: {
      std::vector<std::pair<std::uint64_t, Amplitude>> next;
      next.reserve(terms_.size() * 2);
      for (const auto& [index, amp] : terms_) {
        const Amplitude half = amp * kSqrtHalf;
        next.emplace_back(index & ~a.flip, half);
        next.emplace_back(index | a.flip, (index & a.flip) ? -half : half);
      }
      terms_ = std::move(next);
      canonicalise();
      break;
    }
  }
}

double SparseState::project(WireId wire, int bit) {
  const std::uint64_t m = mask(wire);
  std::erase_if(terms_, [&](const auto& term) { return ((term.first & m) != 0) != (bit == 1); });
  return norm_squared();
}

void SparseState::scale(double factor) {
  for (auto& term : terms_) term.second *= factor;
}

double SparseState::norm_squared() const {
  double total = 0.0;
  for (const auto& term : terms_) total += std::norm(term.second);
  return total;
}

std::vector<SparseBranch> run_sparse(const Circuit& circuit, std::uint64_t basis) {
  std::vector<SparseBranch> out;
  std::function<void(std::size_t, SparseState, std::map<std::string, int>, double)> walk =
      [&](std::size_t from, SparseState state, std::map<std::string, int> outcomes, double prob) {
        for (std::size_t i = from; i < circuit.size(); ++i) {
          const Gate& g = circuit[i];
          if (g.kind == GateKind::ClassicalCZ || g.kind == GateKind::ClassicalCX) {
            if (outcomes.at(g.condition) == 1) state.apply(unconditioned(g));
            continue;
          }
          if (g.kind != GateKind::MeasureX) {
            state.apply(g);
            continue;
          }
          const WireId w = g.targets[0];
          state.apply(Gate::single(GateKind::H, w));
          for (int bit = 0; bit < 2; ++bit) {
            SparseState branch = state;
            const double p = branch.project(w, bit);
            if (p < kBranchCutoff) continue;
            branch.scale(1.0 / std::sqrt(p));
            auto next = outcomes;
            next[g.record] = bit;
            walk(i + 1, std::move(branch), std::move(next), prob * p);
          }
          return;
        }
        out.push_back(SparseBranch{std::move(outcomes), prob, std::move(state)});
      };
  walk(0, SparseState(circuit.num_wires(), basis), {}, 1.0);
  return out;
}

// ------------------------------------------------------------ verification

std::string_view equivalence_name(EquivalenceLevel level) {
  switch (level) {
    case EquivalenceLevel::Exact: return "EXACT";
    case EquivalenceLevel::GlobalPhasePerMemory: return "GLOBAL_PHASE_PER_MEMORY";
    case EquivalenceLevel::Inequivalent: return "INEQUIVALENT";
  }
  return "?";
}

namespace {

std::vector<std::vector<std::uint8_t>> memories_for(const QramInstance& instance, const VerifyOptions& options) {
  if (!options.memories.empty()) return options.memories;
  std::vector<std::vector<std::uint8_t>> out;
  const std::uint64_t cells = instance.cells();
  if (instance.q <= 2) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells); ++bits) {
      std::vector<std::uint8_t> memory(cells);
      for (std::uint64_t j = 0; j < cells; ++j) memory[j] = static_cast<std::uint8_t>((bits >> j) & 1);
      out.push_back(std::move(memory));
    }
    return out;
  }
  const std::size_t count = instance.q == 3 ? options.random_memories : options.spot_memories;
  std::mt19937_64 gen(options.seed);
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<std::uint8_t> memory(cells);
    for (auto& bit : memory) bit = static_cast<std::uint8_t>(gen() & 1);
    out.push_back(std::move(memory));
  }
  return out;
}

std::string bits_of(const std::vector<std::uint8_t>& memory) {
  std::string out;
  for (auto bit : memory) out += static_cast<char>('0' + bit);
  return out;
}

std::string outcome_key(const std::map<std::string, int>& outcomes) {
  std::string key;
  for (const auto& [record, bit] : outcomes) key += record + "=" + std::to_string(bit) + ";";
  return key;
}

}  // namespace

EquivalenceVerdict verify_qram(const Circuit& circuit, const QramInstance& instance, const VerifyOptions& options) {
  instance.validate();
  const QramWireLayout layout = find_qram_layout(circuit, instance.q);
  if (circuit.num_wires() > 64) throw Error(ErrorCode::TooManyWires, "verification handles at most 64 wires");
  const std::size_t wires = circuit.num_wires();
  auto mask = [&](WireId w) { return std::uint64_t{1} << (wires - 1 - w.index); };

  std::uint64_t measured = 0;
  for (const Gate& g : circuit.gates()) {
    if (g.kind == GateKind::MeasureX) measured |= mask(g.targets[0]);
  }

  EquivalenceVerdict verdict;
  auto fail = [&](std::uint64_t input, std::uint64_t address, const std::string& memory, double deviation,
                  std::string detail) {
    verdict.level = EquivalenceLevel::Inequivalent;
    verdict.max_deviation = std::max(verdict.max_deviation, deviation);
    verdict.witnessing_input = input;
    verdict.witness_address = address;
    verdict.witness_memory = memory;
    verdict.detail = std::move(detail);
  };

  for (const auto& memory : memories_for(instance, options)) {
    QramInstance inst = instance;
    inst.memory = memory;
    inst.validate();
    const std::string memory_bits = bits_of(memory);
    ++verdict.memories_checked;

    std::uint64_t memory_state = 0;
    for (std::uint64_t j = 0; j < inst.cells(); ++j) {
      if (memory[j]) memory_state |= mask(layout.memory[j]);
    }

    // Per outcome pattern: probability and phase of the first input seen.
    std::map<std::string, std::pair<double, Amplitude>> reference;
    std::size_t outcome_patterns = 0;
    bool first_input = true;

    for (std::uint64_t address = 0; address < inst.cells(); ++address) {
      std::uint64_t address_state = 0;
      for (int i = 0; i < inst.q; ++i) {
        if ((address >> i) & 1) address_state |= mask(layout.address[static_cast<std::size_t>(i)]);
      }
      for (int target = 0; target < 2; ++target) {
        const std::uint64_t input = address_state | memory_state | (target ? mask(layout.target) : 0);
        const std::uint64_t expected = address_state | memory_state |
                                       (reference_target(inst, address, target) ? mask(layout.target) : 0);
        const auto branches = run_sparse(circuit, input);
        ++verdict.runs;
        if (first_input) {
          outcome_patterns = branches.size();
        } else if (branches.size() != outcome_patterns) {
          fail(input, address, memory_bits, 1.0, "measurement outcome set depends on the input");
          return verdict;
        }
        for (const auto& branch : branches) {
          const auto& terms = branch.state.terms();
          if (terms.size() != 1) {
            double largest = 0.0;
            for (const auto& term : terms) largest = std::max(largest, std::abs(term.second));
            fail(input, address, memory_bits, 1.0 - largest * largest,
                 "output is a superposition of " + std::to_string(terms.size()) + " basis states");
            return verdict;
          }
          const auto [index, amp] = terms.front();
          if ((index & ~measured) != (expected & ~measured)) {
            fail(input, address, memory_bits, 1.0,
                 (index & mask(layout.target)) != (expected & mask(layout.target))
                     ? "wrong target value"
                     : "pointer, memory or ancilla wires not restored");
            return verdict;
          }
          const std::string key = outcome_key(branch.outcomes);
          auto it = reference.find(key);
          if (it == reference.end()) {
            if (!first_input) {
              fail(input, address, memory_bits, 1.0, "measurement outcome set depends on the input");
              return verdict;
            }
            reference.emplace(key, std::make_pair(branch.probability, amp));
            continue;
          }
          const double prob_dev = std::abs(branch.probability - it->second.first);
          const double phase_dev = std::abs(amp - it->second.second);
          if (prob_dev > kAmplitudeTolerance || phase_dev > kAmplitudeTolerance) {
            fail(input, address, memory_bits, std::max(prob_dev, phase_dev),
                 prob_dev > kAmplitudeTolerance ? "branch probability depends on the input"
                                                : "relative phase between basis inputs");
            return verdict;
          }
        }
        first_input = false;
      }
    }
    for (const auto& [key, ref] : reference) {
      const double dev = std::abs(ref.second - Amplitude{1.0, 0.0});
      if (dev > kAmplitudeTolerance) {
        verdict.level = EquivalenceLevel::GlobalPhasePerMemory;
        verdict.max_deviation = std::max(verdict.max_deviation, dev);
      }
    }
  }
  return verdict;
}

}  // namespace qramforge
