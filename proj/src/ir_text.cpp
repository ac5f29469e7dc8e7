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

#include <algorithm>
#include <map>
#include <sstream>

#include "qramforge/ir.hpp"

namespace qramforge {

namespace {

std::string single_token(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "S^-1";
    case GateKind::T: return "T";
    case GateKind::Tdg: return "T^-1";
    case GateKind::Z: return "Z";
    default: return "?";
  }
}

std::string target_token(const Gate& g) {
  switch (g.kind) {
    case GateKind::CX:
    case GateKind::CCX:
      return "X";
    case GateKind::MCXFanout:
      // A single-target fan-out would otherwise read back as a CX.
      return g.targets.size() == 1 ? "F" : "X";
    case GateKind::CZ:
    case GateKind::CCZ:
      return "Z";
    case GateKind::ClassicalCX: return "X[" + g.condition + "]";
    case GateKind::ClassicalCZ: return "Z[" + g.condition + "]";
    case GateKind::MeasureX: return "HM[" + g.record + "]";
    default: return single_token(g.kind);
  }
}

struct Column {
  std::map<std::uint32_t, std::string> tokens;  // wire row -> token
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;
  std::size_t width = 0;
};

Column column_of(const Gate& g) {
  Column col;
  for (const auto& c : g.controls) {
    col.tokens[c.wire.index] = c.polarity == Polarity::Positive ? "@" : "(0)";
  }
  for (const WireId t : g.targets) col.tokens[t.index] = target_token(g);
  col.lo = col.tokens.begin()->first;
  col.hi = col.tokens.rbegin()->first;
  for (const auto& [row, tok] : col.tokens) col.width = std::max(col.width, tok.size());
  return col;
}

}  // namespace

std::string render_ascii(const Circuit& circuit) {
  const std::size_t rows = circuit.num_wires();
  std::size_t name_width = 0;
  for (std::uint32_t r = 0; r < rows; ++r) {
    name_width = std::max(name_width, circuit.wire_name(WireId{r}).size());
  }
  std::vector<std::string> lines(rows);
  std::vector<std::string> spacers(rows > 0 ? rows - 1 : 0);
  for (std::uint32_t r = 0; r < rows; ++r) {
    const std::string& name = circuit.wire_name(WireId{r});
    lines[r] = name + ": " + std::string(name_width - name.size(), '-');
  }
  const std::size_t prefix = name_width + 2;
  for (auto& s : spacers) s.assign(prefix, ' ');

  for (const Gate& g : circuit.gates()) {
    const Column col = column_of(g);
    for (std::uint32_t r = 0; r < rows; ++r) {
      std::string cell = "---";
      if (auto it = col.tokens.find(r); it != col.tokens.end()) {
        cell += it->second;
      } else if (r > col.lo && r < col.hi) {
        cell += "|";
      }
      cell.resize(3 + col.width, '-');
      lines[r] += cell;
    }
    for (std::uint32_t r = 0; r + 1 < rows; ++r) {
      std::string cell(3 + col.width, ' ');
      if (r >= col.lo && r < col.hi) cell[3] = '|';
      spacers[r] += cell;
    }
  }

  std::ostringstream out;
  for (std::uint32_t r = 0; r < rows; ++r) {
    out << lines[r] << "---\n";
    if (r + 1 < rows) {
      std::string s = spacers[r];
      s.erase(s.find_last_not_of(' ') + 1);
      out << s << '\n';
    }
  }
  return out.str();
}

namespace {

struct Token {
  std::uint32_t row;
  std::string text;
};

std::string strip_condition(const std::string& tok, std::string& key) {
  const auto open = tok.find('[');
  if (open == std::string::npos) return tok;
  if (tok.back() != ']') throw Error(ErrorCode::ParseError, "unterminated record in '" + tok + "'");
  key = tok.substr(open + 1, tok.size() - open - 2);
  return tok.substr(0, open);
}

Gate gate_from_tokens(const std::vector<Token>& tokens, std::size_t column) {
  std::vector<Control> controls;
  std::vector<WireId> targets;
  std::string target_kind;
  std::string key;
  for (const auto& t : tokens) {
    if (t.text == "@") {
      controls.push_back({WireId{t.row}, Polarity::Positive});
    } else if (t.text == "(0)") {
      controls.push_back({WireId{t.row}, Polarity::Negative});
    } else {
      std::string k;
      const std::string base = strip_condition(t.text, k);
      if (!target_kind.empty() && target_kind != base) {
        throw Error(ErrorCode::ParseError, "mixed targets in column " + std::to_string(column));
      }
      target_kind = base;
      if (!k.empty()) key = k;
      targets.push_back(WireId{t.row});
    }
  }
  if (targets.empty()) throw Error(ErrorCode::ParseError, "column " + std::to_string(column) + " has no target");

  Gate g;
  g.controls = controls;
  g.targets = targets;
  const std::size_t nc = controls.size();
  if (nc == 0) {
    static const std::map<std::string, GateKind> singles{
        {"X", GateKind::X}, {"H", GateKind::H},     {"S", GateKind::S}, {"S^-1", GateKind::Sdg},
        {"T", GateKind::T}, {"T^-1", GateKind::Tdg}, {"Z", GateKind::Z}, {"HM", GateKind::MeasureX}};
    auto it = singles.find(target_kind);
    if (it == singles.end() || targets.size() != 1) {
      throw Error(ErrorCode::ParseError, "unknown gate '" + target_kind + "' in column " + std::to_string(column));
    }
    g.kind = it->second;
    if (g.kind == GateKind::MeasureX) g.record = key;
    return g;
  }
  if (target_kind == "X" && nc == 1 && targets.size() == 1 && key.empty()) {
    g.kind = GateKind::CX;
  } else if ((target_kind == "X" && nc == 1 && targets.size() > 1) || (target_kind == "F" && nc == 1)) {
    g.kind = GateKind::MCXFanout;
  } else if (target_kind == "X" && nc == 1 && !key.empty()) {
    g.kind = GateKind::ClassicalCX;
    g.condition = key;
  } else if (target_kind == "X" && nc == 2) {
    g.kind = GateKind::CCX;
  } else if (target_kind == "Z" && nc == 1 && key.empty()) {
    g.kind = GateKind::CZ;
  } else if (target_kind == "Z" && nc == 1) {
    g.kind = GateKind::ClassicalCZ;
    g.condition = key;
  } else if (target_kind == "Z" && nc == 2) {
    g.kind = GateKind::CCZ;
  } else {
    throw Error(ErrorCode::ParseError, "unrecognised gate in column " + std::to_string(column));
  }
  return g;
}

}  // namespace

Circuit parse_ascii(std::string_view text) {
  Circuit circuit;
  std::map<std::size_t, std::vector<Token>> columns;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto sep = line.find(": ");
    if (sep == std::string::npos) continue;  // spacer line
    const WireId row = circuit.add_wire(line.substr(0, sep));
    std::size_t p = sep + 2;
    while (p < line.size()) {
      const char ch = line[p];
      if (ch == '-' || ch == '|' || ch == ' ') {
        ++p;
        continue;
      }
      const std::size_t start = p;
      std::string tok;
      while (p < line.size() && line[p] != '-' && line[p] != ' ') {
        tok += line[p++];
        if (tok.back() == '^' && line.compare(p, 2, "-1") == 0) {
          tok += "-1";
          p += 2;
        }
      }
      columns[start].push_back(Token{row.index, tok});
    }
  }
  for (const auto& [column, tokens] : columns) circuit.append(gate_from_tokens(tokens, column));
  return circuit;
}

}  // namespace qramforge
