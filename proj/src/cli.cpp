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

#include "qramforge/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "qramforge/builders.hpp"
#include "qramforge/decompositions.hpp"
#include "qramforge/ir.hpp"
#include "qramforge/metrics.hpp"
#include "qramforge/scheduler.hpp"
#include "qramforge/simulator.hpp"

namespace qramforge {

using nlohmann::json;

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    f << contents;
    f.flush();
    if (!f) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::Io, "write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot rename into " + path);
  }
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << contents;
  } else {
    write_file_atomic(path, contents);
  }
}

QramInstance instance_from(int q, int n, const std::string& memory) {
  if (memory.empty()) return QramInstance::all_ones(q, n);
  constexpr std::string_view prefix = "random:";
  if (memory.rfind(prefix, 0) == 0) {
    const std::string seed = memory.substr(prefix.size());
    if (seed.empty() || seed.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorCode::InvalidInstance, "bad seed in --memory " + memory);
    }
    return QramInstance::random(q, n, std::stoull(seed));
  }
  return QramInstance::with_bits(q, n, memory);
}

// Circuit document plus the optional instance block written by synth.
struct Document {
  Circuit circuit;
  std::optional<QramInstance> instance;
};

Document load(const std::string& path) {
  const std::string text = read_file(path);
  Document doc{parse(text), std::nullopt};
  const json j = json::parse(text);
  if (auto it = j.find("instance"); it != j.end()) {
    try {
      doc.instance = QramInstance::with_bits(it->at("q").get<int>(), it->at("n").get<int>(),
                                             it->at("memory").get<std::string>());
    } catch (const json::exception& e) {
      throw Error(ErrorCode::SchemaViolation, std::string("$.instance: ") + e.what());
    }
  }
  return doc;
}

std::string dump(const Circuit& circuit, const std::optional<QramInstance>& instance) {
  json j = json::parse(serialize(circuit));
  if (instance) j["instance"] = {{"q", instance->q}, {"n", instance->n}, {"memory", instance->memory_bits()}};
  return j.dump(2) + "\n";
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int q = std::stoi(text);
      return {q, q};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--q-range", "expected A..B, got " + text);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bucket brigade QRAM synthesis, lowering, scheduling and verification", "qramforge"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Build a QRAM circuit and write its IR document");
  int synth_q = 2;
  std::optional<int> synth_n;
  std::string synth_family = "toffoli";
  std::string synth_memory;
  std::string synth_fanin = "measurement";
  std::string synth_out;
  synth->add_option("--q", synth_q, "Address width")->required();
  synth->add_option("--n", synth_n, "Query exponent (default q)");
  synth->add_option("--family", synth_family, "toffoli | sequential | parallel");
  synth->add_option("--memory", synth_memory, "Memory bits m_0 m_1 ... or random:SEED (default all ones)");
  synth->add_option("--fanin", synth_fanin, "measurement | unitary (parallel family)");
  synth->add_option("-o,--output", synth_out, "Output file (default stdout)");

  // lower
  auto* lower = app.add_subcommand("lower", "Lower every CCX/CCZ of an IR document to Clifford+T");
  std::string lower_in;
  std::string lower_variant = "canonical";
  std::string lower_shared = "target";
  std::string lower_out;
  lower->add_option("file", lower_in, "IR document")->required();
  lower->add_option("--variant", lower_variant, "canonical | parallel | and");
  lower->add_option("--shared", lower_shared, "target | control0 | control1 (parallel variant)");
  lower->add_option("-o,--output", lower_out, "Output file (default stdout)");

  // schedule
  auto* sched = app.add_subcommand("schedule", "Print the ASAP depth of an IR document");
  std::string sched_in;
  bool sched_ghz = false;
  bool sched_moments = false;
  sched->add_option("file", sched_in, "IR document")->required();
  sched->add_flag("--ghz-expand", sched_ghz, "Expand fan-out gates into GHZ trees first");
  sched->add_flag("--moments", sched_moments, "List the gates of every moment");

  // verify
  auto* verify = app.add_subcommand("verify", "Check a QRAM circuit against the reference map");
  std::string verify_in;
  std::optional<int> verify_q;
  std::optional<int> verify_n;
  std::string verify_memory;
  verify->add_option("file", verify_in, "IR document")->required();
  verify->add_option("--q", verify_q, "Address width (default from the document)");
  verify->add_option("--n", verify_n, "Query exponent (default from the document)");
  verify->add_option("--memory", verify_memory, "Check only this memory (bits or random:SEED)");

  // report
  auto* report = app.add_subcommand("report", "Write the closed-form and measured cost table as CSV");
  std::string report_families = "bbs,rom,bbp";
  std::string report_range = "2..8";
  std::string report_policy = "n_equals_q";
  std::string report_out;
  int report_cap = 8;
  report->add_option("--families", report_families, "Comma separated: bbs, rom, bbp");
  report->add_option("--q-range", report_range, "A..B");
  report->add_option("--n-policy", report_policy, "n_equals_q | fixed:N");
  report->add_option("--measure-cap", report_cap, "Largest q for which circuits are built and measured");
  report->add_option("-o,--output", report_out, "Output file (default stdout)");

  // render / export
  auto* render = app.add_subcommand("render", "Print an ASCII diagram");
  std::string render_in;
  render->add_option("file", render_in, "IR document")->required();

  auto* exporter = app.add_subcommand("export", "Write OpenQASM 2.0");
  std::string export_in;
  std::string export_out;
  exporter->add_option("file", export_in, "IR document")->required();
  exporter->add_option("-o,--output", export_out, "Output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (synth->parsed()) {
      const auto family = qram_family_from_name(synth_family);
      const auto fanin = fanin_mode_from_name(synth_fanin);
      if (!family) throw CLI::ValidationError("--family", "unknown family " + synth_family);
      if (!fanin) throw CLI::ValidationError("--fanin", "unknown mode " + synth_fanin);
      const QramInstance inst = instance_from(synth_q, synth_n.value_or(synth_q), synth_memory);
      emit(synth_out, dump(build_qram(*family, inst, *fanin), inst), out);
    } else if (lower->parsed()) {
      const auto variant = variant_from_name(lower_variant);
      const auto role = shared_role_from_name(lower_shared);
      if (!variant || *variant == CczVariant::LogicalAndUncompute) {
        throw CLI::ValidationError("--variant", "expected canonical, parallel or and");
      }
      if (!role) throw CLI::ValidationError("--shared", "expected target, control0 or control1");
      const Document doc = load(lower_in);
      emit(lower_out, dump(lower_circuit(doc.circuit, *variant, *role), doc.instance), out);
    } else if (sched->parsed()) {
      Circuit c = load(sched_in).circuit;
      if (sched_ghz) c = expand_ghz_fanout(c);
      const Schedule s = schedule_asap(c);
      out << "wires: " << c.num_wires() << "\n";
      out << "gates: " << c.size() << "\n";
      out << "depth: " << s.depth() << "\n";
      if (c.has_regions()) {
        const RegionDepths d = region_depths(c);
        out << "fanout_depth: " << d.fanout << "\n";
        out << "query_depth: " << d.query << "\n";
        out << "fanin_depth: " << d.fanin << "\n";
      }
      if (sched_moments) out << render_moments(c, s);
    } else if (verify->parsed()) {
      const Document doc = load(verify_in);
      const int q = verify_q ? *verify_q : doc.instance ? doc.instance->q : 0;
      const int n = verify_n ? *verify_n : doc.instance ? doc.instance->n : q;
      if (q == 0) throw CLI::ValidationError("--q", "required when the document has no instance block");
      VerifyOptions options;
      if (!verify_memory.empty()) options.memories.push_back(instance_from(q, n, verify_memory).memory);
      const QramInstance inst = QramInstance::all_ones(q, n);
      const EquivalenceVerdict v = verify_qram(doc.circuit, inst, options);
      json j{{"verdict", std::string(equivalence_name(v.level))},
             {"max_deviation", v.max_deviation},
             {"memories_checked", v.memories_checked},
             {"runs", v.runs}};
      j["witnessing_input"] = v.witnessing_input ? json(*v.witnessing_input) : json(nullptr);
      j["witness_address"] = v.witness_address ? json(*v.witness_address) : json(nullptr);
      if (!v.witness_memory.empty()) j["witness_memory"] = v.witness_memory;
      if (!v.detail.empty()) j["detail"] = v.detail;
      out << j.dump() << "\n";
      if (v.level == EquivalenceLevel::Inequivalent) return kExitVerificationFailed;
    } else if (report->parsed()) {
      std::vector<CostFamily> families;
      for (const auto& name : split(report_families, ',')) {
        const auto f = cost_family_from_name(name);
        if (!f) throw CLI::ValidationError("--families", "unknown family " + name);
        families.push_back(*f);
      }
      const auto policy = n_policy_from_name(report_policy);
      if (!policy) throw CLI::ValidationError("--n-policy", "expected n_equals_q or fixed:N");
      const auto [lo, hi] = parse_range(report_range);
      emit(report_out, to_csv(sweep(families, lo, hi, *policy, report_cap)), out);
    } else if (render->parsed()) {
      out << render_ascii(load(render_in).circuit);
    } else if (exporter->parsed()) {
      emit(export_out, export_qasm(load(export_in).circuit), out);
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace qramforge
