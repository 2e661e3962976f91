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

#pragma once

#include <map>
#include <set>
#include <span>
#include <sstream>
#include <string>

#include "hardysim/circuit.hpp"
#include "hardysim/optics.hpp"
#include "hardysim/state.hpp"
#include "json.hpp"

namespace hardysim {

/// Born-rule weights per detector pair. `kept_weight` is the probability
/// that a run survived post-selection; rows are conditional on survival.
struct OutcomeTable {
  std::map<ModePair, Rational> rows;
  Rational kept_weight = 1;

  Rational total() const {
    Rational sum = 0;
    for (const auto& [key, p] : rows) sum += p;
    return sum;
  }

  Rational probability(const ModePair& key) const {
    auto it = rows.find(key);
    return it == rows.end() ? Rational(0) : it->second;
  }

  nlohmann::json to_json() const {
    nlohmann::json out_rows = nlohmann::json::array();
    for (const auto& [key, p] : rows) {
      out_rows.push_back({{"plus", key.plus}, {"minus", key.minus}, {"p", format_rational(p)}});
    }
    nlohmann::json out;
    out["kept_weight"] = format_rational(kept_weight);
    out["rows"] = out_rows;
    return out;
  }

  std::string to_table() const {
    std::ostringstream out;
    out << "kept_weight " << format_rational(kept_weight) << "\n";
    out << "plus\tminus\tp\n";
    for (const auto& [key, p] : rows) {
      out << key.plus << "+\t" << key.minus << "-\t" << format_rational(p) << "\n";
    }
    return out.str();
  }
};

inline TwoPhotonState evolve_stages(TwoPhotonState state, std::span<const Stage> stages) {
  for (const auto& stage : stages) state = apply_transform(state, stage_transform(stage));
  return state;
}

/// Pushes the source through every stage in order. No post-selection.
inline TwoPhotonState evolve(const Circuit& c) { return evolve_stages(c.source, c.stages); }

struct PostSelection {
  TwoPhotonState state;
  Rational kept_weight;
};

/// Drops every term touching a discarded label. The survivor is not
/// renormalized; its norm^2 is returned as `kept_weight`.
inline PostSelection postselect(const TwoPhotonState& s, const std::set<ModeLabel>& discard) {
  TwoPhotonState kept;
  for (const auto& [key, amp] : s.terms()) {
    const bool dropped = discard.count(ModeLabel(key.plus, Arm::plus)) != 0 ||
                         discard.count(ModeLabel(key.minus, Arm::minus)) != 0;
    if (!dropped) kept.add(key, amp);
  }
  const Rational weight = kept.norm_sq().as_rational();
  return {std::move(kept), weight};
}

inline TwoPhotonState renormalize(const TwoPhotonState& s) {
  if (s.empty()) throw ZeroState("cannot renormalize the zero state");
  const Rational norm = s.norm_sq().as_rational();
  return s.scaled(RadicalComplex(1).div_sqrt(norm));
}

/// Row per term with probability |amp|^2. kept_weight is the state's own
/// norm^2 (1 for a renormalized state).
inline OutcomeTable probabilities(const TwoPhotonState& s) {
  OutcomeTable out;
  for (const auto& [key, amp] : s.terms()) out.rows[key] = amp.norm_sq().as_rational();
  out.kept_weight = out.total();
  return out;
}

/// evolve -> postselect(discard) -> renormalize -> probabilities, with the
/// post-selection success probability as kept_weight.
inline OutcomeTable outcome_table(const Circuit& c) {
  PostSelection kept = postselect(evolve(c), c.discard);
  OutcomeTable table = probabilities(renormalize(kept.state));
  table.kept_weight = kept.kept_weight;
  return table;
}

/// Distribution of the opposite photon's mode given that `given` holds.
/// Only labels with nonzero probability appear.
inline std::map<ModeLabel, Rational> conditional(const TwoPhotonState& s, const ModeLabel& given) {
  const Arm other = opposite(given.arm);
  std::map<ModeLabel, Rational> out;
  Rational marginal = 0;
  for (const auto& [key, amp] : s.terms()) {
    if (key.on(given.arm) != given.name) continue;
    const Rational p = amp.norm_sq().as_rational();
    out[ModeLabel(key.on(other), other)] += p;
    marginal += p;
  }
  if (marginal == 0) {
    throw ZeroConditioningEvent("conditioning event " + given.to_string() + " has probability 0");
  }
  for (auto& [label, p] : out) p /= marginal;
  return out;
}

}  // namespace hardysim
