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

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qramforge/ir.hpp"

namespace qramforge {

/// Gates grouped into moments. Gates of one moment touch disjoint wires,
/// except fan-out capable gates (CX, MCX_FANOUT, CLASSICAL_CX) that share
/// only their control.
struct Schedule {
  std::vector<std::vector<std::size_t>> moments;  // gate indices, ascending
  std::vector<std::size_t> moment_of;             // gate index -> moment

  std::size_t depth() const { return moments.size(); }
};

/// Greedy earliest-moment placement in gate order. A gate lands one moment
/// after the last use of any of its wires, except that a fan-out capable gate
/// joins the moment where its control last acted as a fan-out control when
/// its targets are already free there.
Schedule schedule_asap(const Circuit& circuit);

/// Rebuilds a circuit moment by moment, replacing every group of CX and
/// MCX_FANOUT gates that share a control inside one moment and region by a
/// single MCX_FANOUT.
Circuit fuse_fanout_cnots(const Circuit& circuit, const Schedule& schedule);
Circuit fuse_fanout_cnots(const Circuit& circuit);

struct RegionDepths {
  std::size_t fanout = 0;
  std::size_t query = 0;
  std::size_t fanin = 0;
  std::size_t total = 0;  // whole circuit scheduled at once
};

/// Schedules each region on its own. Throws MissingRegionTags.
RegionDepths region_depths(const Circuit& circuit);

/// Replaces every MCX_FANOUT on k >= 2 targets by a CX tree that copies the
/// control onto k - 1 ancillae, one transversal CX layer and the mirrored
/// tree. Ancillae are named ghz_anc_<i>, start and end in |0>, and are shared
/// between fan-outs.
Circuit expand_ghz_fanout(const Circuit& circuit);

/// Rewrites CX(c -> x), CCX(y, x -> t), CX(c -> x) at `site` into
/// CCX(y, c -> t), CCX(y, x -> t). The middle Toffoli may have a negative
/// control on x, which moves onto c. Throws PatternMismatch.
Circuit apply_parallelisation_template(const Circuit& circuit, std::size_t site);

/// One line per moment listing its gates.
std::string render_moments(const Circuit& circuit, const Schedule& schedule);

}  // namespace qramforge
