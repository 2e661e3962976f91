// Copyright 2026 The hardysim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file circuit.hpp
 * @brief The `.circ` circuit description format.
 *
 * Line-oriented, `#` starts a comment:
 *
 *     modes + a b u v g f c d
 *     modes - a b u v g f c d
 *     source (a+,a-) (1/1)/sqrt(2); (b+,b-) (1/1)/sqrt(2)
 *     stage preset_eq2 +
 *     stage bs 1/2 u+ v+ -> c+ d+
 *     stage bs 1/2 u v -> c d -          # bare names, arm given last
 *     stage phase 3 g+
 *     discard g+ g- f+ f-
 *     detect c+ d+ c- d-
 *
 * Mode liveness is checked statically: a stage may only consume modes that
 * the source or an earlier stage produced and that nothing consumed since,
 * and may not produce a mode that is already live elsewhere.
 */

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hardysim/amplitude.hpp"
#include "hardysim/optics.hpp"
#include "hardysim/state.hpp"

namespace hardysim {

enum class PresetKind { eq2, eq5 };

struct PresetStage {
  PresetKind kind = PresetKind::eq2;
  Arm arm = Arm::plus;
  bool operator==(const PresetStage&) const = default;
};

struct BeamSplitterStage {
  Rational t;
  ModeLabel in1, in2, out1, out2;
  bool operator==(const BeamSplitterStage&) const = default;
};

struct PhaseStage {
  long long quarter_turns = 0;
  ModeLabel mode;
  bool operator==(const PhaseStage&) const = default;
};

using Stage = std::variant<PresetStage, BeamSplitterStage, PhaseStage>;

inline std::string_view preset_name(PresetKind kind) {
  return kind == PresetKind::eq2 ? "preset_eq2" : "preset_eq5";
}

inline Arm stage_arm(const Stage& stage) {
  struct Visitor {
    Arm operator()(const PresetStage& s) const { return s.arm; }
    Arm operator()(const BeamSplitterStage& s) const { return s.in1.arm; }
    Arm operator()(const PhaseStage& s) const { return s.mode.arm; }
  };
  return std::visit(Visitor{}, stage);
}

inline ModeTransform stage_transform(const Stage& stage) {
  struct Visitor {
    ModeTransform operator()(const PresetStage& s) const {
      return s.kind == PresetKind::eq2 ? preset_eq2(s.arm) : preset_eq5(s.arm);
    }
    ModeTransform operator()(const BeamSplitterStage& s) const {
      return beamsplitter(s.t, s.in1, s.in2, s.out1, s.out2);
    }
    ModeTransform operator()(const PhaseStage& s) const {
      return phase_shift(s.quarter_turns, s.mode);
    }
  };
  return std::visit(Visitor{}, stage);
}

struct Circuit {
  std::vector<std::string> plus_modes;
  std::vector<std::string> minus_modes;
  TwoPhotonState source;
  std::vector<Stage> stages;
  std::set<ModeLabel> discard;
  std::set<ModeLabel> detectors;

  const std::vector<std::string>& modes(Arm arm) const {
    return arm == Arm::plus ? plus_modes : minus_modes;
  }
  std::vector<std::string>& modes(Arm arm) { return arm == Arm::plus ? plus_modes : minus_modes; }

  bool operator==(const Circuit&) const = default;
};

/// A located diagnostic. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::string code, std::size_t line, std::size_t column, const std::string& message)
      : Error(std::move(code), message), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

  /// `file:line:col: code: message`
  std::string format(std::string_view file) const {
    std::ostringstream out;
    out << file << ':' << line_ << ':' << column_ << ": " << code() << ": " << what();
    return out.str();
  }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> split_tokens(std::string_view line, std::size_t first_column = 1) {
  std::vector<Token> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    out.push_back({line.substr(start, pos - start), start + first_column});
  }
  return out;
}

class CircuitParser {
 public:
  explicit CircuitParser(std::string_view text) : text_(text) {}

  Circuit parse() {
    std::size_t start = 0;
    while (start <= text_.size()) {
      std::size_t end = text_.find('\n', start);
      if (end == std::string_view::npos) end = text_.size();
      ++line_no_;
      std::string_view line = text_.substr(start, end - start);
      if (const auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      parse_line(line);
      start = end + 1;
    }
    if (!have_source_) throw ParseError("missing-source", line_no_, 1, "circuit has no source line");
    check_liveness();
    for (const auto& label : circuit_.detectors) {
      if (circuit_.discard.count(label) != 0) {
        const Located& at = detector_at_.at(label);
        throw ParseError("discard-detect-overlap", at.line, at.column,
                         label.to_string() + " is both discarded and detected");
      }
    }
    return std::move(circuit_);
  }

 private:
  struct Located {
    std::size_t line;
    std::size_t column;
  };

  [[noreturn]] void fail(const std::string& code, std::size_t column, const std::string& message) const {
    throw ParseError(code, line_no_, column, message);
  }

  [[noreturn]] void expected(const Token& at, const std::string& what) const {
    fail("syntax-error", at.column, "expected " + what + ", found '" + std::string(at.text) + "'");
  }

  [[noreturn]] void expected_at_end(std::size_t column, const std::string& what) const {
    fail("syntax-error", column, "expected " + what + ", found end of line");
  }

  std::optional<Arm> arm_token(std::string_view text) const {
    if (text == "+") return Arm::plus;
    if (text == "-") return Arm::minus;
    return std::nullopt;
  }

  bool declared(const ModeLabel& label) const {
    const auto& names = circuit_.modes(label.arm);
    return std::find(names.begin(), names.end(), label.name) != names.end();
  }

  ModeLabel declared_label(std::string_view text, std::size_t column) const {
    ModeLabel label;
    try {
      label = ModeLabel::parse(text);
    } catch (const InvalidLabel& e) {
      fail("syntax-error", column, e.what());
    }
    if (!declared(label)) fail("undeclared-mode", column, label.to_string());
    return label;
  }

  void parse_line(std::string_view line) {
    const std::vector<Token> tokens = split_tokens(line);
    if (tokens.empty()) return;
    const Token& head = tokens[0];
    if (head.text == "modes") {
      parse_modes(tokens);
    } else if (head.text == "source") {
      parse_source(line, head);
    } else if (head.text == "stage") {
      parse_stage(tokens, line.size() + 1);
    } else if (head.text == "discard" || head.text == "detect") {
      parse_label_set(tokens);
    } else {
      expected(head, "'modes', 'source', 'stage', 'discard' or 'detect'");
    }
  }

  void parse_modes(const std::vector<Token>& tokens) {
    if (tokens.size() < 2) expected_at_end(tokens[0].column + 5, "'+' or '-'");
    const auto arm = arm_token(tokens[1].text);
    if (!arm) expected(tokens[1], "'+' or '-'");
    auto& names = circuit_.modes(*arm);
    for (std::size_t k = 2; k < tokens.size(); ++k) {
      const std::string name(tokens[k].text);
      if (!is_valid_mode_name(name)) expected(tokens[k], "a mode name matching [a-z][a-z0-9_]*");
      if (std::find(names.begin(), names.end(), name) != names.end()) {
        fail("duplicate-mode", tokens[k].column, name + arm_suffix(*arm) + " declared twice");
      }
      names.push_back(name);
    }
  }

  void parse_source(std::string_view line, const Token& head) {
    if (have_source_) fail("duplicate-source", head.column, "circuit has more than one source line");
    have_source_ = true;
    std::size_t pos = head.column - 1 + head.text.size();
    std::vector<TwoPhotonState::Entry> entries;
    for (;;) {
      std::size_t end = line.find(';', pos);
      const bool last = end == std::string_view::npos;
      if (last) end = line.size();
      std::string_view entry = line.substr(pos, end - pos);
      const std::size_t entry_column = pos + 1;
      if (!split_tokens(entry).empty()) {
        entries.push_back(parse_source_entry(entry, entry_column));
      } else if (!last || !entries.empty()) {
        fail("syntax-error", entry_column, "expected a source term '(<plus>,<minus>) <amplitude>'");
      }
      if (last) break;
      pos = end + 1;
    }
    try {
      circuit_.source = TwoPhotonState::make(entries);
    } catch (const ArmMismatch& e) {
      fail(e.code(), head.column, e.what());
    }
  }

  TwoPhotonState::Entry parse_source_entry(std::string_view entry, std::size_t column) {
    std::size_t pos = 0;
    auto skip = [&] {
      while (pos < entry.size() && (entry[pos] == ' ' || entry[pos] == '\t')) ++pos;
    };
    skip();
    if (pos >= entry.size() || entry[pos] != '(') {
      fail("syntax-error", column + pos, "expected '(' opening a source key");
    }
    const std::size_t close = entry.find(')', pos);
    const std::size_t comma = entry.find(',', pos);
    if (close == std::string_view::npos || comma == std::string_view::npos || comma > close) {
      fail("syntax-error", column + pos, "expected a key of the form (<plus>,<minus>)");
    }
    const auto trim = [](std::string_view s, std::size_t& offset) {
      while (!s.empty() && s.front() == ' ') {
        s.remove_prefix(1);
        ++offset;
      }
      while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
      return s;
    };
    std::size_t first_at = pos + 1, second_at = comma + 1;
    const std::string_view first = trim(entry.substr(pos + 1, comma - pos - 1), first_at);
    const std::string_view second = trim(entry.substr(comma + 1, close - comma - 1), second_at);
    ModeLabel a = declared_label(first, column + first_at);
    ModeLabel b = declared_label(second, column + second_at);
    if (a.arm == b.arm) {
      fail("arm-mismatch", column + pos,
           "key (" + a.to_string() + "," + b.to_string() + ") pairs two labels on the same arm");
    }
    pos = close + 1;
    skip();
    const std::string_view amp_text = entry.substr(pos);
    if (split_tokens(amp_text).empty()) {
      fail("syntax-error", column + pos, "expected an amplitude after the source key");
    }
    try {
      return {{std::move(a), std::move(b)}, parse_amplitude(amp_text)};
    } catch (const AmplitudeSyntaxError& e) {
      fail(e.code(), column + pos + e.offset(), e.what());
    }
  }

  void parse_stage(const std::vector<Token>& tokens, std::size_t end_column) {
    if (tokens.size() < 2) expected_at_end(end_column, "a stage element");
    const Token& kind = tokens[1];
    const std::size_t line = line_no_;
    if (kind.text == "preset_eq2" || kind.text == "preset_eq5") {
      if (tokens.size() < 3) expected_at_end(end_column, "'+' or '-'");
      const auto arm = arm_token(tokens[2].text);
      if (!arm) expected(tokens[2], "'+' or '-'");
      if (tokens.size() > 3) expected(tokens[3], "end of line");
      const PresetStage stage{kind.text == "preset_eq2" ? PresetKind::eq2 : PresetKind::eq5, *arm};
      const ModeTransform x = stage_transform(stage);
      std::vector<std::string> used = x.inputs();
      for (const auto& name : x.outputs()) used.push_back(name);
      for (const auto& name : used) {
        if (!declared(ModeLabel(name, *arm))) {
          fail("undeclared-mode", kind.column, name + arm_suffix(*arm));
        }
      }
      add_stage(stage, line, kind.column);
    } else if (kind.text == "bs") {
      parse_beamsplitter(tokens, end_column);
    } else if (kind.text == "phase") {
      if (tokens.size() < 4) expected_at_end(end_column, "'phase <quarter-turns> <mode>'");
      if (tokens.size() > 4) expected(tokens[4], "end of line");
      long long turns = 0;
      try {
        std::size_t used = 0;
        turns = std::stoll(std::string(tokens[2].text), &used);
        if (used != tokens[2].text.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        expected(tokens[2], "an integer number of quarter turns");
      }
      const PhaseStage stage{((turns % 4) + 4) % 4, declared_label(tokens[3].text, tokens[3].column)};
      add_stage(stage, line, kind.column);
    } else {
      expected(kind, "'preset_eq2', 'preset_eq5', 'bs' or 'phase'");
    }
  }

  void parse_beamsplitter(const std::vector<Token>& tokens, std::size_t end_column) {
    // stage bs <t> <in1> <in2> -> <out1> <out2> [arm]
    if (tokens.size() < 8) expected_at_end(end_column, "'bs <t> <in1> <in2> -> <out1> <out2> [arm]'");
    if (tokens.size() > 9) expected(tokens[9], "end of line");
    if (tokens[5].text != "->") expected(tokens[5], "'->'");
    std::optional<Arm> arm;
    if (tokens.size() == 9) {
      arm = arm_token(tokens[8].text);
      if (!arm) expected(tokens[8], "'+' or '-'");
    }
    Rational t;
    try {
      t = parse_rational(tokens[2].text);
    } catch (const Error&) {
      expected(tokens[2], "a transmissivity such as 1/2");
    }
    auto label = [&](const Token& tok) {
      std::string text(tok.text);
      const bool suffixed = !text.empty() && (text.back() == '+' || text.back() == '-');
      if (!suffixed) {
        if (!arm) fail("syntax-error", tok.column, "mode '" + text + "' needs an arm suffix");
        text += arm_suffix(*arm);
      }
      ModeLabel out = declared_label(text, tok.column);
      if (arm && out.arm != *arm) {
        fail("arm-mismatch", tok.column, out.to_string() + " is not on the stage arm");
      }
      return out;
    };
    BeamSplitterStage stage{t, label(tokens[3]), label(tokens[4]), label(tokens[6]), label(tokens[7])};
    try {
      (void)stage_transform(stage);
    } catch (const UnsupportedRadical& e) {
      fail(e.code(), tokens[2].column, e.what());
    } catch (const Error& e) {
      fail(e.code(), tokens[1].column, e.what());
    }
    add_stage(std::move(stage), line_no_, tokens[1].column);
  }

  void parse_label_set(const std::vector<Token>& tokens) {
    const bool is_discard = tokens[0].text == "discard";
    auto& target = is_discard ? circuit_.discard : circuit_.detectors;
    for (std::size_t k = 1; k < tokens.size(); ++k) {
      ModeLabel label = declared_label(tokens[k].text, tokens[k].column);
      if (!is_discard) detector_at_.emplace(label, Located{line_no_, tokens[k].column});
      target.insert(std::move(label));
    }
  }

  void add_stage(Stage stage, std::size_t line, std::size_t column) {
    circuit_.stages.push_back(std::move(stage));
    stage_at_.push_back({line, column});
  }

  void check_liveness() const {
    std::set<ModeLabel> live, consumed;
    for (const Arm arm : {Arm::plus, Arm::minus}) {
      for (const auto& name : circuit_.source.support(arm)) live.insert(ModeLabel(name, arm));
    }
    for (std::size_t k = 0; k < circuit_.stages.size(); ++k) {
      const ModeTransform x = stage_transform(circuit_.stages[k]);
      const Located at = stage_at_[k];
      const auto inputs = x.inputs();
      for (const auto& name : inputs) {
        const ModeLabel label(name, x.arm());
        if (live.count(label) != 0) continue;
        if (consumed.count(label) != 0) {
          throw ParseError("double-consume", at.line, at.column,
                           label.to_string() + " was already consumed by an earlier stage");
        }
        throw ParseError("dead-mode", at.line, at.column,
                         label.to_string() + " is not produced by the source or an earlier stage");
      }
      for (const auto& name : inputs) {
        live.erase(ModeLabel(name, x.arm()));
        consumed.insert(ModeLabel(name, x.arm()));
      }
      for (const auto& name : x.outputs()) {
        const ModeLabel label(name, x.arm());
        if (!live.insert(label).second) {
          throw ParseError("live-collision", at.line, at.column,
                           label.to_string() + " is produced while already live");
        }
        consumed.erase(label);
      }
    }
  }

  std::string_view text_;
  std::size_t line_no_ = 0;
  bool have_source_ = false;
  Circuit circuit_;
  std::vector<Located> stage_at_;
  std::map<ModeLabel, Located> detector_at_;
};

}  // namespace detail

/// Parses and validates `.circ` text. Throws ParseError.
inline Circuit parse_circuit(std::string_view text) {
  return detail::CircuitParser(text).parse();
}

/// Canonical text; parse_circuit(render_circuit(c)) == c.
inline std::string render_circuit(const Circuit& c) {
  std::string out;
  for (const Arm arm : {Arm::plus, Arm::minus}) {
    if (c.modes(arm).empty()) continue;
    out += "modes ";
    out += arm_suffix(arm);
    for (const auto& name : c.modes(arm)) out += " " + name;
    out += "\n";
  }
  out += "source";
  bool first = true;
  for (const auto& [key, amp] : c.source.terms()) {
    out += first ? " " : "; ";
    out += key.to_string() + " " + amp.to_string();
    first = false;
  }
  out += "\n";
  struct Visitor {
    std::string operator()(const PresetStage& s) const {
      return std::string(preset_name(s.kind)) + " " + arm_suffix(s.arm);
    }
    std::string operator()(const BeamSplitterStage& s) const {
      return "bs " + format_rational(s.t) + " " + s.in1.to_string() + " " + s.in2.to_string() +
             " -> " + s.out1.to_string() + " " + s.out2.to_string();
    }
    std::string operator()(const PhaseStage& s) const {
      return "phase " + std::to_string(s.quarter_turns) + " " + s.mode.to_string();
    }
  };
  for (const auto& stage : c.stages) out += "stage " + std::visit(Visitor{}, stage) + "\n";
  for (const auto& [keyword, labels] :
       {std::pair{"discard", &c.discard}, std::pair{"detect", &c.detectors}}) {
    if (labels->empty()) continue;
    out += keyword;
    for (const auto& label : *labels) out += " " + label.to_string();
    out += "\n";
  }
  return out;
}

}  // namespace hardysim
