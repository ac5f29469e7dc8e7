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

#include "qramforge/builders.hpp"
#include "qramforge/ir.hpp"

namespace qramforge {

enum class CostFamily : std::uint8_t { BbSequential, Qrom, BbParallel };

std::string_view cost_family_name(CostFamily family);
/// Accepts the CSV names and the short aliases bbs, rom, bbp.
std::optional<CostFamily> cost_family_from_name(std::string_view name);

struct ModelValues {
  std::int64_t width = 0;
  std::int64_t tcount = 0;
  std::int64_t depth = 0;
  std::string flags;  // "incomplete_model" when the depth formula has an unknown term
};

/// Closed-form width, T-count and depth of a family at (q, n).
ModelValues cost_model(CostFamily family, int q, int n);

struct MeasuredCounts {
  std::int64_t width = 0;
  std::int64_t tcount = 0;
  std::int64_t depth = 0;
  std::int64_t fanout_tcount = 0;
  std::int64_t query_tcount = 0;
  std::int64_t fanin_tcount = 0;
  std::int64_t fanout_depth = 0;
  std::int64_t query_depth = 0;
  std::int64_t fanin_depth = 0;
};

/// Width counts every wire that is not a memory wire. T-count is taken after
/// merge_phases; depth comes from schedule_asap. Region fields stay zero for
/// untagged circuits. Throws UnknownWireClass on unclassified wires.
MeasuredCounts measure(const Circuit& circuit);

struct ResourceReport {
  CostFamily family = CostFamily::BbParallel;
  int q = 0;
  int n = 0;
  ModelValues model;
  std::optional<MeasuredCounts> measured;

  /// measured - model, field by field. Empty without a measurement.
  std::optional<std::int64_t> width_delta() const;
  std::optional<std::int64_t> tcount_delta() const;
  std::optional<std::int64_t> depth_delta() const;
};

/// Builds the circuit a family stands for. QROM has no circuit.
std::optional<Circuit> build_for_family(CostFamily family, int q, int n);

ResourceReport report_for(CostFamily family, int q, int n, bool build);

struct NPolicy {
  bool equals_q = true;
  int fixed = 1;
  int n_for(int q) const { return equals_q ? q : fixed; }
};
std::optional<NPolicy> n_policy_from_name(std::string_view text);

inline constexpr std::string_view kCsvHeader =
    "family,q,n,width_model,width_measured,tcount_model,tcount_measured,depth_model,depth_measured,"
    "fanout_depth,query_depth,fanin_depth,flags";

/// One row per (family, q), families in the given order, q ascending.
/// Circuits are built and measured for q <= measure_cap. Rows whose fixed n
/// exceeds q are skipped.
std::vector<ResourceReport> sweep(const std::vector<CostFamily>& families, int q_lo, int q_hi,
                                  const NPolicy& policy, int measure_cap = 8);

std::string to_csv(const std::vector<ResourceReport>& rows);

}  // namespace qramforge
