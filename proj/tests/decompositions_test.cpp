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

#include <gtest/gtest.h>

#include <bit>

#include "qramforge/builders.hpp"
#include "qramforge/decompositions.hpp"
#include "qramforge/scheduler.hpp"
#include "qramforge/simulator.hpp"
#include "test_support.hpp"

namespace qramforge {
namespace {

using testing::ccx_matrix;
using testing::ccz_matrix;
using testing::max_abs_diff;

constexpr double kTol = kAmplitudeTolerance;
const std::complex<double> kMinusI{0.0, -1.0};

Circuit wires(std::size_t n) {
  Circuit c;
  for (std::size_t i = 0; i < n; ++i) c.add_wire("q" + std::to_string(i));
  return c;
}

TEST(Variants, ExactCczMatchesOracle) {
  EXPECT_LT(max_abs_diff(unitary_of(ccz_circuit(CczVariant::Canonical7T)), ccz_matrix(3, 0, 1, 2)), kTol);
  for (std::uint32_t s = 0; s < 3; ++s) {
    EXPECT_LT(max_abs_diff(unitary_of(ccz_circuit(CczVariant::ParallelSharedWire, s)), ccz_matrix(3, 0, 1, 2)),
              kTol)
        << "shared " << s;
  }
}

TEST(Variants, ExactToffoliMatchesOracle) {
  EXPECT_LT(max_abs_diff(unitary_of(toffoli_circuit(CczVariant::Canonical7T)), ccx_matrix(3, 0, 1, 2)), kTol);
  for (std::uint32_t s = 0; s < 3; ++s) {
    EXPECT_LT(
        max_abs_diff(unitary_of(toffoli_circuit(CczVariant::ParallelSharedWire, s)), ccx_matrix(3, 0, 1, 2)),
        kTol)
        << "shared " << s;
  }
}

TEST(Variants, CanonicalEqualsParallel) {
  const auto a = unitary_of(ccz_circuit(CczVariant::Canonical7T));
  const auto b = unitary_of(ccz_circuit(CczVariant::ParallelSharedWire, 1));
  EXPECT_LT(max_abs_diff(a, b), kTol);
}

TEST(Variants, TCounts) {
  EXPECT_EQ(t_count(ccz_circuit(CczVariant::Canonical7T).gates()), 7u);
  EXPECT_EQ(t_count(ccz_circuit(CczVariant::ParallelSharedWire, 1).gates()), 7u);
  EXPECT_EQ(t_count(ccz_circuit(CczVariant::LogicalAndCompute).gates()), 4u);
  EXPECT_EQ(t_count(ccz_circuit(CczVariant::LogicalAndUncompute).gates()), 0u);
  for (auto v : {CczVariant::Canonical7T, CczVariant::ParallelSharedWire, CczVariant::LogicalAndCompute,
                 CczVariant::LogicalAndUncompute}) {
    const Circuit c = v == CczVariant::ParallelSharedWire ? ccz_circuit(v, 0) : ccz_circuit(v);
    EXPECT_EQ(static_cast<int>(t_count(c.gates())), variant_t_count(v)) << variant_name(v);
  }
}

TEST(Variants, SharedWireOnlyControlsAndPhases) {
  for (std::uint32_t s = 0; s < 3; ++s) {
    const Circuit c = ccz_circuit(CczVariant::ParallelSharedWire, s);
    const WireId shared{s};
    for (const Gate& g : c.gates()) {
      if (!g.touches(shared)) continue;
      const bool diagonal = phase_units(g.kind).has_value();
      const bool control = g.kind == GateKind::CX && g.controls[0].wire == shared;
      EXPECT_TRUE(diagonal || control) << kind_name(g.kind) << " on shared wire " << s;
    }
  }
}

TEST(Variants, InvalidSharedWire) {
  EXPECT_THROW(lower_ccz(CczVariant::ParallelSharedWire, WireId{0}, WireId{1}, WireId{2}, WireId{5}), Error);
  EXPECT_THROW(lower_ccz(CczVariant::ParallelSharedWire, WireId{0}, WireId{1}, WireId{2}), Error);
  try {
    ccz_circuit(CczVariant::ParallelSharedWire, 3);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidSharedWire);
  }
}

TEST(Variants, NamesRoundTrip) {
  for (auto v : {CczVariant::Canonical7T, CczVariant::ParallelSharedWire, CczVariant::LogicalAndCompute,
                 CczVariant::LogicalAndUncompute}) {
    EXPECT_EQ(variant_from_name(variant_name(v)), v);
  }
  EXPECT_FALSE(variant_from_name("bogus"));
}

// Phase, in units of pi/4, that a polynomial puts on basis input `bits`.
int evaluate(const PhasePolynomial& p, std::uint32_t bits) {
  int total = 0;
  for (const auto& [mask, coeff] : p.terms) total += coeff * (std::popcount(mask & bits) & 1);
  return total % 8;
}

TEST(PhasePolynomial, SharedWireCoreMatchesCczFormula) {
  const PhasePolynomial p = phase_polynomial_of(ccz_circuit(CczVariant::ParallelSharedWire, 1));
  EXPECT_EQ(p, ccz_phase_polynomial());
  EXPECT_TRUE(p.parities_restored());
  // Formula coefficients (+1, +1, +1, -1, -1, -1, +1) mod 8.
  EXPECT_EQ(p.coefficient(0b001), 1);
  EXPECT_EQ(p.coefficient(0b010), 1);
  EXPECT_EQ(p.coefficient(0b100), 1);
  EXPECT_EQ(p.coefficient(0b011), 7);
  EXPECT_EQ(p.coefficient(0b110), 7);
  EXPECT_EQ(p.coefficient(0b101), 7);
  EXPECT_EQ(p.coefficient(0b111), 1);
}

TEST(PhasePolynomial, CczFormulaIsFourXyz) {
  const PhasePolynomial p = ccz_phase_polynomial();
  for (std::uint32_t bits = 0; bits < 8; ++bits) {
    EXPECT_EQ(evaluate(p, bits), bits == 7 ? 4 : 0) << bits;
  }
}

TEST(PhasePolynomial, EveryExactCoreRealisesCcz) {
  for (const Circuit& c : {ccz_circuit(CczVariant::Canonical7T), ccz_circuit(CczVariant::ParallelSharedWire, 0),
                           ccz_circuit(CczVariant::ParallelSharedWire, 2)}) {
    const PhasePolynomial p = phase_polynomial_of(c);
    EXPECT_TRUE(p.parities_restored());
    for (std::uint32_t bits = 0; bits < 8; ++bits) EXPECT_EQ(evaluate(p, bits), bits == 7 ? 4 : 0);
  }
}

TEST(PhasePolynomial, AndCoreDiffersByTwoXy) {
  const PhasePolynomial p = phase_polynomial_of(ccz_circuit(CczVariant::LogicalAndCompute));
  EXPECT_TRUE(p.parities_restored());
  for (std::uint32_t bits = 0; bits < 8; ++bits) {
    const int x = bits & 1;
    const int y = (bits >> 1) & 1;
    EXPECT_EQ(((evaluate(ccz_phase_polynomial(), bits) - evaluate(p, bits)) % 8 + 8) % 8, (2 * x * y) % 8)
        << bits;
  }
  // Cross-check against the matrix: diagonal entries are exp(i pi/4 * phase).
  const auto u = unitary_of(ccz_circuit(CczVariant::LogicalAndCompute));
  const auto expected = testing::diagonal_matrix(3, [&](std::uint64_t bits) {
    return std::polar(1.0, M_PI / 4 * evaluate(p, static_cast<std::uint32_t>(bits)));
  });
  EXPECT_LT(max_abs_diff(u, expected), kTol);
}

TEST(PhasePolynomial, EmptyCircuit) {
  const PhasePolynomial p = phase_polynomial_of(wires(3));
  EXPECT_TRUE(p.terms.empty());
  EXPECT_TRUE(p.parities_restored());
}

TEST(PhasePolynomial, RejectsNonLinearGates) {
  try {
    phase_polynomial_of(toffoli_circuit(CczVariant::Canonical7T));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonLinearFragment);
  }
  Circuit c = wires(3);
  c.append(Gate::ccx(WireId{0}, WireId{1}, WireId{2}));
  EXPECT_THROW(phase_polynomial_of(c), Error);
}

TEST(LogicalAnd, ComputePhase) {
  const Circuit c = toffoli_circuit(CczVariant::LogicalAndCompute);
  for (int a0 = 0; a0 < 2; ++a0) {
    for (int a1 = 0; a1 < 2; ++a1) {
      const std::uint64_t in = (a0 << 2) | (a1 << 1);
      const StateVector out = run(c, StateVector(3, in));
      const std::uint64_t expected = in | (a0 & a1);
      const std::complex<double> phase = (a0 & a1) ? kMinusI : 1.0;
      for (std::uint64_t k = 0; k < 8; ++k) {
        const std::complex<double> want = k == expected ? phase : 0.0;
        EXPECT_LT(std::abs(out[k] - want), kTol) << a0 << a1 << " index " << k;
      }
    }
  }
}

// Amplitudes of the wires other than `wire`, restricted to `wire` == bit.
Eigen::VectorXcd reduce(const StateVector& s, WireId wire, int bit) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(1) << (s.wires() - 1));
  Eigen::Index k = 0;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << s.wires()); ++i) {
    if (((i & s.mask(wire)) != 0) == (bit != 0)) out(k++) = s[i];
  }
  return out;
}

double phase_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::Index k;
  a.cwiseAbs().maxCoeff(&k);
  if (std::abs(b(k)) < kTol) return 1.0;
  const auto rot = a(k) / b(k);
  return (a - rot * b).cwiseAbs().maxCoeff() + std::abs(std::abs(rot) - 1.0);
}

TEST(LogicalAnd, UncomputeRestoresStateInEveryBranch) {
  Circuit c = wires(3);
  c.append(lower_toffoli(CczVariant::LogicalAndCompute, WireId{0}, WireId{1}, WireId{2}));
  c.append(lower_and_uncompute(WireId{0}, WireId{1}, WireId{2}, "r"));
  EXPECT_EQ(t_count(c.gates()) - 4, 0u);
  for (std::uint64_t in : {0b000u, 0b010u, 0b100u, 0b110u}) {
    const BranchSet set = enumerate_measurement_branches(c, StateVector(3, in));
    ASSERT_EQ(set.branches.size(), 2u);
    double total = 0;
    for (const Branch& b : set.branches) {
      total += b.probability;
      EXPECT_NEAR(b.probability, 0.5, kTol);
      const Eigen::VectorXcd pre = reduce(StateVector(3, in), WireId{2}, 0);
      EXPECT_LT(phase_distance(reduce(b.state, WireId{2}, b.outcomes.at("r")), pre), kTol);
    }
    EXPECT_NEAR(total, 1.0, kTol);
  }
}

TEST(LogicalAnd, UncomputeOnSuperpositionLeavesOnlyTheAndPhase) {
  Circuit c = wires(3);
  c.append(Gate::single(GateKind::H, WireId{0}));
  c.append(Gate::single(GateKind::H, WireId{1}));
  c.append(lower_toffoli(CczVariant::LogicalAndCompute, WireId{0}, WireId{1}, WireId{2}));
  c.append(lower_and_uncompute(WireId{0}, WireId{1}, WireId{2}, "r"));
  Eigen::VectorXcd expected(4);
  expected << 0.5, 0.5, 0.5, 0.5 * kMinusI;
  const BranchSet set = enumerate_measurement_branches(c, StateVector(3, 0));
  ASSERT_EQ(set.branches.size(), 2u);
  for (const Branch& b : set.branches) {
    EXPECT_LT((reduce(b.state, WireId{2}, b.outcomes.at("r")) - expected).cwiseAbs().maxCoeff(), kTol);
  }
}

TEST(LogicalAnd, ZeroInputBranchesAreHalfAndCorrectionIsNoOp) {
  Circuit c = wires(3);
  c.append(lower_toffoli(CczVariant::LogicalAndCompute, WireId{0}, WireId{1}, WireId{2}));
  c.append(lower_and_uncompute(WireId{0}, WireId{1}, WireId{2}, "r"));
  const BranchSet set = enumerate_measurement_branches(c, StateVector(3, 0));
  ASSERT_EQ(set.branches.size(), 2u);
  for (const Branch& b : set.branches) {
    EXPECT_NEAR(b.probability, 0.5, kTol);
    const auto reduced = reduce(b.state, WireId{2}, b.outcomes.at("r"));
    EXPECT_NEAR(std::abs(reduced(0)), 1.0, kTol);
  }
}

// Pairs on five wires, checked against products of the oracle matrices.
TEST(Pairs, SharedTargetEqualsCcxProduct) {
  const Gate a = Gate::ccx(WireId{0}, WireId{1}, WireId{4});
  const Gate b = Gate::ccx(WireId{2}, WireId{3}, WireId{4});
  Circuit c = wires(5);
  c.append(pair_lower_shared_target(a, b));
  const Eigen::MatrixXcd expected = ccx_matrix(5, 2, 3, 4) * ccx_matrix(5, 0, 1, 4);
  EXPECT_LT(max_abs_diff(unitary_of(c), expected), kTol);
  // Six T gates per Toffoli off the target wire.
  std::size_t off_target = 0;
  for (const Gate& g : c.gates()) {
    if ((g.kind == GateKind::T || g.kind == GateKind::Tdg) && g.targets[0] != WireId{4}) ++off_target;
  }
  EXPECT_EQ(off_target, 12u);
}

TEST(Pairs, SharedControlEqualsAndProduct) {
  const Gate a = Gate::ccx(WireId{1}, WireId{0}, WireId{2});
  const Gate b = Gate::ccx(WireId{0}, WireId{3}, WireId{4});
  Circuit c = wires(5);
  c.append(pair_lower_shared_control(a, b));
  const Eigen::MatrixXcd u = unitary_of(c);
  const Eigen::MatrixXcd ccx = ccx_matrix(5, 0, 3, 4) * ccx_matrix(5, 1, 0, 2);
  // Logical ANDs are only specified on fresh targets; compare those columns
  // after the per-AND phase (-i)^{ab}.
  for (std::uint64_t bits = 0; bits < 32; ++bits) {
    if (testing::bit(bits, 2) || testing::bit(bits, 4)) continue;
    const auto col = static_cast<Eigen::Index>(((bits & 1) << 4) | (((bits >> 1) & 1) << 3) | (((bits >> 3) & 1) << 1));
    std::complex<double> phase = 1.0;
    if (testing::bit(bits, 0) && testing::bit(bits, 1)) phase *= kMinusI;
    if (testing::bit(bits, 0) && testing::bit(bits, 3)) phase *= kMinusI;
    EXPECT_LT((u.col(col) - phase * ccx.col(col)).cwiseAbs().maxCoeff(), kTol) << bits;
  }
}

TEST(Pairs, SharedControlDepthEqualsOneAnd) {
  Circuit one = wires(3);
  one.append(lower_toffoli(CczVariant::LogicalAndCompute, WireId{0}, WireId{1}, WireId{2}));
  EXPECT_EQ(schedule_asap(one).depth(), 10u);
  Circuit pair = wires(5);
  pair.append(pair_lower_shared_control(Gate::ccx(WireId{0}, WireId{1}, WireId{2}),
                                        Gate::ccx(WireId{0}, WireId{3}, WireId{4})));
  EXPECT_EQ(schedule_asap(pair).depth(), 10u);
  EXPECT_EQ(t_count(pair.gates()), 8u);
}

TEST(Pairs, Errors) {
  const Gate a = Gate::ccx(WireId{0}, WireId{1}, WireId{2});
  try {
    pair_lower_shared_control(a, Gate::ccx(WireId{3}, WireId{4}, WireId{5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSharedControl);
  }
  try {
    pair_lower_shared_target(a, Gate::ccx(WireId{3}, WireId{4}, WireId{5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSharedTarget);
  }
  EXPECT_THROW(pair_lower_shared_target(a, Gate::ccx(WireId{0}, WireId{4}, WireId{2})), Error);
}

TEST(SharedTarget, DepthIsConstantInK) {
  std::optional<std::size_t> depth;
  for (std::size_t k = 1; k <= 16; ++k) {
    Circuit c = wires(2 * k + 1);
    std::vector<Gate> toffolis;
    for (std::size_t j = 0; j < k; ++j) {
      toffolis.push_back(Gate::ccx(WireId{static_cast<std::uint32_t>(2 * j)},
                                   WireId{static_cast<std::uint32_t>(2 * j + 1)},
                                   WireId{static_cast<std::uint32_t>(2 * k)}));
    }
    c.append(lower_shared_target(toffolis));
    const std::size_t d = schedule_asap(c).depth();
    if (!depth) depth = d;
    EXPECT_EQ(d, *depth) << "k=" << k;
  }
}

TEST(SharedTarget, KWayEqualsProductUpToFour) {
  for (std::size_t k = 1; k <= 3; ++k) {
    Circuit c = wires(2 * k + 1);
    std::vector<Gate> toffolis;
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(1 << (2 * k + 1), 1 << (2 * k + 1));
    for (std::size_t j = 0; j < k; ++j) {
      toffolis.push_back(Gate::ccx(WireId{static_cast<std::uint32_t>(2 * j)},
                                   WireId{static_cast<std::uint32_t>(2 * j + 1)},
                                   WireId{static_cast<std::uint32_t>(2 * k)}));
      expected = ccx_matrix(2 * k + 1, 2 * j, 2 * j + 1, 2 * k) * expected;
    }
    c.append(lower_shared_target(toffolis));
    EXPECT_LT(max_abs_diff(unitary_of(c), expected), kTol) << "k=" << k;
  }
}

TEST(PhaseGates, AllUnits) {
  for (int units = -8; units <= 16; ++units) {
    Circuit c = wires(1);
    c.append(phase_gates(units, WireId{0}));
    EXPECT_LE(t_count(c.gates()), 1u);
    EXPECT_LE(c.size(), 2u);
    const auto u = unitary_of(c);
    EXPECT_LT(std::abs(u(0, 0) - 1.0), kTol);
    EXPECT_LT(std::abs(u(1, 1) - std::polar(1.0, M_PI / 4 * units)), kTol) << units;
  }
}

TEST(MergePhases, Rules) {
  auto merged = [](std::vector<GateKind> kinds) {
    Circuit c = wires(1);
    for (GateKind k : kinds) c.append(Gate::single(k, WireId{0}));
    const Circuit m = merge_phases(c);
    std::vector<GateKind> out;
    for (const Gate& g : m.gates()) out.push_back(g.kind);
    return out;
  };
  using K = GateKind;
  EXPECT_EQ(merged({K::T, K::T}), std::vector<K>{K::S});
  EXPECT_EQ(merged({K::T, K::T, K::T, K::T}), std::vector<K>{K::Z});
  EXPECT_TRUE(merged({K::T, K::Tdg}).empty());
  EXPECT_TRUE(merged(std::vector<K>(8, K::T)).empty());
  EXPECT_EQ(merged({K::S, K::T}), (std::vector<K>{K::S, K::T}));
  EXPECT_EQ(merged({K::Sdg, K::T}), std::vector<K>{K::Tdg});
  EXPECT_EQ(merged({K::Z, K::S}), std::vector<K>{K::Sdg});
}

TEST(MergePhases, StopsAtOtherGatesAndRegions) {
  Circuit c = wires(2);
  c.append(Gate::single(GateKind::T, WireId{0}));
  c.append(Gate::cx(WireId{0}, WireId{1}));
  c.append(Gate::single(GateKind::T, WireId{0}));
  EXPECT_EQ(t_count(merge_phases(c).gates()), 2u);

  Circuit r = wires(1);
  r.append(Gate::single(GateKind::T, WireId{0}), Region::Fanout);
  r.append(Gate::single(GateKind::T, WireId{0}), Region::Query);
  const Circuit m = merge_phases(r);
  EXPECT_EQ(t_count(m.gates()), 2u);
  EXPECT_EQ(m.region_span(Region::Query).size(), 1u);
}

TEST(MergePhases, PreservesUnitary) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Circuit c = testing::random_circuit(seed, 4, 60);
    EXPECT_LT(max_abs_diff(unitary_of(c), unitary_of(merge_phases(c))), kTol) << seed;
  }
}

TEST(LowerCircuit, PreservesUnitaryForEveryExactChoice) {
  const Circuit toffoli = build_toffoli_bucket_brigade(QramInstance::with_bits(1, 1, "10"));
  const auto reference = unitary_of(toffoli);
  EXPECT_LT(max_abs_diff(unitary_of(lower_circuit(toffoli, CczVariant::Canonical7T)), reference), kTol);
  for (auto role : {SharedRole::Target, SharedRole::Control0, SharedRole::Control1}) {
    const Circuit lowered = lower_circuit(toffoli, CczVariant::ParallelSharedWire, role);
    EXPECT_LT(max_abs_diff(unitary_of(lowered), reference), kTol);
    EXPECT_EQ(lowered.region_span(Region::Query).size() > 0, true);
  }
}

TEST(LowerCircuit, NegativeControls) {
  Circuit c = wires(4);
  c.append(Gate::ccx(Control{WireId{0}, Polarity::Negative}, Control{WireId{1}}, WireId{3}));
  Gate z = Gate::ccz(WireId{1}, WireId{2}, WireId{3});
  z.controls[1].polarity = Polarity::Negative;
  c.append(z);
  const auto reference = unitary_of(c);
  EXPECT_LT(max_abs_diff(unitary_of(lower_circuit(c, CczVariant::Canonical7T)), reference), kTol);
  EXPECT_LT(max_abs_diff(unitary_of(lower_circuit(c, CczVariant::ParallelSharedWire, SharedRole::Control1)),
                         reference),
            kTol);
}

}  // namespace
}  // namespace qramforge
