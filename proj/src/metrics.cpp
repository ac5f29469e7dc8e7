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

#include "qramforge/metrics.hpp"

#include <charconv>
#include <sstream>

#include "qramforge/decompositions.hpp"
#include "qramforge/scheduler.hpp"

namespace qramforge {

std::string_view cost_family_name(CostFamily family) {
  switch (family) {
    case CostFamily::BbSequential: return "BB_SEQUENTIAL";
    case CostFamily::Qrom: return "QROM";
    case CostFamily::BbParallel: return "BB_PARALLEL";
  }
  return "?";
}

std::optional<CostFamily> cost_family_from_name(std::string_view name) {
  if (name == "bbs" || name == "BB_SEQUENTIAL") return CostFamily::BbSequential;
  if (name == "rom" || name == "QROM") return CostFamily::Qrom;
  if (name == "bbp" || name == "BB_PARALLEL") return CostFamily::BbParallel;
  return std::nullopt;
}

ModelValues cost_model(CostFamily family, int q, int n) {
  const std::int64_t cells = std::int64_t{1} << q;
  const std::int64_t queries = std::int64_t{1} << n;
  ModelValues m;
  switch (family) {
    case CostFamily::BbSequential:
      m.width = q + cells + 5;
      m.tcount = 21 * cells - 28;
      m.depth = 21 * cells + 2 * q - 26;
      break;
    case CostFamily::Qrom:
      m.width = q + 1;
      m.tcount = 4 * queries - 4;
      m.depth = 10 * queries;
      m.flags = "incomplete_model";
      break;
    case CostFamily::BbParallel:
      m.width = q + cells + 1;
      m.tcount = 4 * cells + 6 * queries;
      m.depth = 10 * q + 10 + 4 * q;
      break;
  }
  return m;
}

MeasuredCounts measure(const Circuit& circuit) {
  MeasuredCounts out;
  for (std::uint32_t w = 0; w < circuit.num_wires(); ++w) {
    const WireClass cls = circuit.wire_class(WireId{w});
    if (cls == WireClass::Unspecified) {
      throw Error(ErrorCode::UnknownWireClass, "wire " + circuit.wire_name(WireId{w}) + " has no class");
    }
    if (cls != WireClass::Memory) ++out.width;
  }
  const Circuit merged = merge_phases(circuit);
  out.tcount = static_cast<std::int64_t>(t_count(merged.gates()));
  out.depth = static_cast<std::int64_t>(schedule_asap(merged).depth());
  if (merged.has_regions()) {
    auto region_t = [&](Region r) {
      const RegionSpan span = merged.region_span(r);
      return static_cast<std::int64_t>(t_count(merged.gates().subspan(span.begin, span.size())));
    };
    out.fanout_tcount = region_t(Region::Fanout);
    out.query_tcount = region_t(Region::Query);
    out.fanin_tcount = region_t(Region::Fanin);
    const RegionDepths d = region_depths(merged);
    out.fanout_depth = static_cast<std::int64_t>(d.fanout);
    out.query_depth = static_cast<std::int64_t>(d.query);
    out.fanin_depth = static_cast<std::int64_t>(d.fanin);
  }
  return out;
}

std::optional<std::int64_t> ResourceReport::width_delta() const {
  if (!measured) return std::nullopt;
  return measured->width - model.width;
}

std::optional<std::int64_t> ResourceReport::tcount_delta() const {
  if (!measured) return std::nullopt;
  return measured->tcount - model.tcount;
}

std::optional<std::int64_t> ResourceReport::depth_delta() const {
  if (!measured) return std::nullopt;
  return measured->depth - model.depth;
}

std::optional<Circuit> build_for_family(CostFamily family, int q, int n) {
  const QramInstance instance = QramInstance::all_ones(q, n);
  switch (family) {
    case CostFamily::BbSequential: return build_sequential_clifford_t(instance);
    case CostFamily::BbParallel: return build_parallel_clifford_t(instance, FaninMode::Measurement);
    case CostFamily::Qrom: return std::nullopt;
  }
  return std::nullopt;
}

ResourceReport report_for(CostFamily family, int q, int n, bool build) {
  ResourceReport r{family, q, n, cost_model(family, q, n), std::nullopt};
  if (build) {
    if (auto circuit = build_for_family(family, q, n)) r.measured = measure(*circuit);
  }
  return r;
}

std::optional<NPolicy> n_policy_from_name(std::string_view text) {
  if (text == "n_equals_q") return NPolicy{true, 0};
  constexpr std::string_view prefix = "fixed:";
  if (text.substr(0, prefix.size()) != prefix) return std::nullopt;
  const std::string_view digits = text.substr(prefix.size());
  int value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || value < 1) return std::nullopt;
  return NPolicy{false, value};
}

std::vector<ResourceReport> sweep(const std::vector<CostFamily>& families, int q_lo, int q_hi,
                                  const NPolicy& policy, int measure_cap) {
  if (q_lo < 1 || q_hi < q_lo || q_hi > 30) {
    throw Error(ErrorCode::InvalidInstance, "q range must satisfy 1 <= lo <= hi <= 30");
  }
  std::vector<ResourceReport> rows;
  for (CostFamily family : families) {
    for (int q = q_lo; q <= q_hi; ++q) {
      const int n = policy.n_for(q);
      if (n > q) continue;
      rows.push_back(report_for(family, q, n, q <= measure_cap));
    }
  }
  return rows;
}

std::string to_csv(const std::vector<ResourceReport>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  auto opt = [](std::optional<std::int64_t> v) { return v ? std::to_string(*v) : std::string(); };
  for (const auto& r : rows) {
    const auto& m = r.measured;
    out << cost_family_name(r.family) << ',' << r.q << ',' << r.n << ',' << r.model.width << ','
        << opt(m ? std::optional(m->width) : std::nullopt) << ',' << r.model.tcount << ','
        << opt(m ? std::optional(m->tcount) : std::nullopt) << ',' << r.model.depth << ','
        << opt(m ? std::optional(m->depth) : std::nullopt) << ','
        << opt(m ? std::optional(m->fanout_depth) : std::nullopt) << ','
        << opt(m ? std::optional(m->query_depth) : std::nullopt) << ','
        << opt(m ? std::optional(m->fanin_depth) : std::nullopt) << ',' << r.model.flags << '\n';
  }
  return out.str();
}

}  // namespace qramforge
