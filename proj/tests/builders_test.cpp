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

#include "qramforge/builders.hpp"
#include "qramforge/decompositions.hpp"
#include "qramforge/metrics.hpp"
#include "qramforge/simulator.hpp"
#include "test_support.hpp"

namespace qramforge {
namespace {

std::size_t count_kind(const Circuit& c, Region r, GateKind kind) {
  const RegionSpan span = c.region_span(r);
  std::size_t n = 0;
  for (std::size_t i = span.begin; i < span.end; ++i) n += c[i].kind == kind;
  return n;
}

TEST(Instance, Validation) {
  EXPECT_NO_THROW(QramInstance::all_ones(3, 2).validate());
  EXPECT_THROW(QramInstance::all_ones(2, 3), Error);
  EXPECT_THROW(QramInstance::all_ones(0, 0), Error);
  EXPECT_THROW(QramInstance::with_bits(2, 2, "101"), Error);
  EXPECT_THROW(QramInstance::with_bits(1, 1, "1x"), Error);
  try {
    QramInstance{2, 2, {1, 1}}.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInstance);
  }
}

TEST(Instance, BitsAndRandom) {
  const QramInstance inst = QramInstance::with_bits(2, 2, "1011");
  EXPECT_EQ(inst.memory, (std::vector<std::uint8_t>{1, 0, 1, 1}));
  EXPECT_EQ(inst.memory_bits(), "1011");
  EXPECT_EQ(QramInstance::random(3, 3, 7).memory, QramInstance::random(3, 3, 7).memory);
  EXPECT_NE(QramInstance::random(4, 4, 7).memory, QramInstance::random(4, 4, 8).memory);
}

TEST(Layout, WireNamesAndOrder) {
  Circuit c;
  const QramWireLayout l = add_qram_wires(c, 2);
  EXPECT_EQ(c.num_wires(), 2u + 4 + 4 + 1);
  EXPECT_EQ(c.wire_name(WireId{0}), "a1");
  EXPECT_EQ(c.wire_name(WireId{1}), "a0");
  EXPECT_EQ(c.wire_name(l.pointers[2]), "b_10");
  EXPECT_EQ(c.wire_name(l.memory[1]), "m01");
  EXPECT_EQ(c.wire_name(l.target), "target");
  EXPECT_EQ(c.wire_class(l.address[0]), WireClass::Address);
  EXPECT_EQ(c.wire_class(l.memory[3]), WireClass::Memory);
  EXPECT_LT(l.pointers[0].index, l.pointers[3].index);
  EXPECT_GT(l.memory[0].index, l.memory[3].index);
  const QramWireLayout found = find_qram_layout(c, 2);
  EXPECT_EQ(found.pointers, l.pointers);
  EXPECT_EQ(found.target, l.target);
  try {
    find_qram_layout(c, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LayoutMismatch);
  }
}

TEST(ToffoliBuilder, TwoAddressBitsGateCounts) {
  const Circuit c = build_toffoli_bucket_brigade(QramInstance::all_ones(2, 2));
  EXPECT_EQ(count_kind(c, Region::Fanout, GateKind::CCX), 2u);
  EXPECT_EQ(count_kind(c, Region::Query, GateKind::CCX), 4u);
  EXPECT_EQ(count_kind(c, Region::Fanin, GateKind::CCX), 2u);
  EXPECT_EQ(c.region_span(Region::Query).size(), 4u);
  EXPECT_EQ(c.region_span(Region::Fanout).size(), c.region_span(Region::Fanin).size());
  // Every query Toffoli reads (b_j, m_j) into the target.
  const QramWireLayout l = find_qram_layout(c, 2);
  const RegionSpan q = c.region_span(Region::Query);
  for (std::size_t j = 0; j < 4; ++j) {
    const Gate& g = c[q.begin + j];
    EXPECT_EQ(g.controls[0].wire, l.pointers[j]);
    EXPECT_EQ(g.controls[1].wire, l.memory[j]);
    EXPECT_EQ(g.targets[0], l.target);
  }
}

TEST(ToffoliBuilder, FanoutLevelsAreControlledByTheirAddressBit) {
  const Circuit c = build_toffoli_bucket_brigade(QramInstance::all_ones(3, 3));
  const QramWireLayout l = find_qram_layout(c, 3);
  std::vector<int> per_bit(3, 0);
  const RegionSpan f = c.region_span(Region::Fanout);
  for (std::size_t i = f.begin; i < f.end; ++i) {
    if (c[i].kind != GateKind::CCX) continue;
    for (int k = 0; k < 3; ++k) per_bit[k] += c[i].controls[0].wire == l.address[k];
  }
  EXPECT_EQ(per_bit, (std::vector<int>{0, 2, 4}));
}

TEST(ToffoliBuilder, SingleAddressBit) {
  const Circuit c = build_toffoli_bucket_brigade(QramInstance::all_ones(1, 1));
  EXPECT_EQ(count_kind(c, Region::Fanout, GateKind::CCX), 0u);
  EXPECT_EQ(count_kind(c, Region::Query, GateKind::CCX), 2u);
  // Hand-built one-hot pointers: b_0 = not a_0, b_1 = a_0.
  const QramWireLayout l = find_qram_layout(c, 1);
  const Circuit fanout = c.region_circuit(Region::Fanout);
  for (int a = 0; a < 2; ++a) {
    StateVector s(c.num_wires(), 0);
    if (a) s = apply(s, Gate::single(GateKind::X, l.address[0]));
    s = run(fanout, s);
    std::uint64_t expected = a ? s.mask(l.address[0]) | s.mask(l.pointers[1]) : s.mask(l.pointers[0]);
    EXPECT_NEAR(std::abs(s[expected]), 1.0, kAmplitudeTolerance) << a;
  }
}

TEST(ToffoliBuilder, FewerQueriesThanCells) {
  const Circuit c = build_toffoli_bucket_brigade(QramInstance::all_ones(3, 1));
  EXPECT_EQ(count_kind(c, Region::Query, GateKind::CCX), 2u);
}

TEST(ReferenceMap, Examples) {
  const auto zero = reference_qram_map(QramInstance::with_bits(1, 1, "00"));
  EXPECT_LT(testing::max_abs_diff(zero, Eigen::MatrixXcd::Identity(4, 4)), 1e-12);

  // Index = address * 2 + target.
  const auto one_hot = reference_qram_map(QramInstance::with_bits(1, 1, "10"));
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(1, 0) = expected(0, 1) = expected(2, 2) = expected(3, 3) = 1.0;
  EXPECT_LT(testing::max_abs_diff(one_hot, expected), 1e-12);

  const auto map = reference_qram_map(QramInstance::with_bits(2, 2, "1011"));
  for (int a = 0; a < 4; ++a) {
    const bool flips = a != 1;
    for (int t = 0; t < 2; ++t) {
      const int out = a * 2 + (flips ? 1 - t : t);
      EXPECT_EQ(map(out, a * 2 + t), std::complex<double>(1.0)) << a << t;
    }
  }
  EXPECT_EQ(reference_target(QramInstance::with_bits(2, 1, "0011"), 3, 0), 0);
  EXPECT_EQ(reference_target(QramInstance::with_bits(2, 1, "0111"), 1, 1), 0);
}

TEST(SequentialBuilder, TCounts) {
  EXPECT_EQ(t_count(build_sequential_clifford_t(QramInstance::all_ones(2, 2)).gates()), 56u);
  EXPECT_EQ(t_count(build_sequential_clifford_t(QramInstance::all_ones(3, 3)).gates()), 140u);
}

TEST(SequentialBuilder, SameUnitaryAsToffoliLevel) {
  for (const char* bits : {"00", "01", "10", "11"}) {
    const QramInstance inst = QramInstance::with_bits(1, 1, bits);
    EXPECT_LT(testing::max_abs_diff(unitary_of(build_sequential_clifford_t(inst)),
                                    unitary_of(build_toffoli_bucket_brigade(inst))),
              kAmplitudeTolerance);
  }
}

TEST(ParallelBuilder, RegionTCountsAndMeasurements) {
  const Circuit c = build_parallel_clifford_t(QramInstance::all_ones(2, 2), FaninMode::Measurement);
  const MeasuredCounts m = measure(c);
  EXPECT_EQ(m.fanout_tcount, 8);
  EXPECT_EQ(m.query_tcount, 24);
  EXPECT_EQ(m.fanin_tcount, 0);
  EXPECT_EQ(count_kind(c, Region::Fanin, GateKind::MeasureX), 2u);
  EXPECT_EQ(m.width, 7);
}

TEST(ParallelBuilder, UnitaryFaninIsInverseOfFanout) {
  const Circuit c = build_parallel_clifford_t(QramInstance::all_ones(3, 3), FaninMode::Unitary);
  EXPECT_EQ(c.region_circuit(Region::Fanin), inverse(c.region_circuit(Region::Fanout)));
  EXPECT_TRUE(c.records().empty());
}

TEST(ParallelBuilder, QueryHasOneLoweredToffoliPerQuery) {
  for (int q = 1; q <= 4; ++q) {
    for (int n = 1; n <= q; ++n) {
      const Circuit c = build_parallel_clifford_t(QramInstance::all_ones(q, n));
      // Two control-pair CX gates per lowered Toffoli.
      EXPECT_EQ(count_kind(c, Region::Query, GateKind::CX), 2u << n) << q << n;
      EXPECT_EQ(count_kind(c, Region::Query, GateKind::CCX), 0u);
    }
  }
}

TEST(Verification, ToffoliBuilderAllMemories) {
  for (int q = 1; q <= 2; ++q) {
    for (int n = 1; n <= q; ++n) {
      const QramInstance inst = QramInstance::all_ones(q, n);
      const auto v = verify_qram(build_toffoli_bucket_brigade(inst), inst);
      EXPECT_EQ(v.level, EquivalenceLevel::Exact) << q << n << v.detail;
      EXPECT_EQ(v.memories_checked, std::size_t{1} << (1 << q));
    }
  }
}

TEST(Verification, CliffordTBuilders) {
  for (int q = 1; q <= 2; ++q) {
    const QramInstance inst = QramInstance::all_ones(q, q);
    EXPECT_EQ(verify_qram(build_sequential_clifford_t(inst), inst).level, EquivalenceLevel::Exact);
    for (auto mode : {FaninMode::Measurement, FaninMode::Unitary}) {
      const auto v = verify_qram(build_parallel_clifford_t(inst, mode), inst);
      EXPECT_NE(v.level, EquivalenceLevel::Inequivalent) << q << v.detail;
    }
  }
}

TEST(Names, FamiliesAndModes) {
  EXPECT_EQ(qram_family_from_name("toffoli"), QramFamily::Toffoli);
  EXPECT_EQ(qram_family_from_name("sequential"), QramFamily::Sequential);
  EXPECT_EQ(qram_family_from_name("parallel"), QramFamily::Parallel);
  EXPECT_FALSE(qram_family_from_name("rom"));
  EXPECT_EQ(fanin_mode_from_name("unitary"), FaninMode::Unitary);
  EXPECT_EQ(fanin_mode_from_name("measurement"), FaninMode::Measurement);
}

}  // namespace
}  // namespace qramforge
