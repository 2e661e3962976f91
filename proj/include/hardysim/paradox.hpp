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
 * @file paradox.hpp
 * @brief Full-wave trajectory enumeration for two-photon interferometers.
 *
 * A full wave is the one wave-packet per photon that would trigger a
 * detector. It occupies exactly one mode per stage boundary and only moves
 * along edges with nonzero transform amplitude. Trajectories start at the
 * preparation boundary: right after the last stage that produces a
 * discarded mode (or at the source when nothing is discarded), on the
 * post-selected state there.
 *
 * Two rule sets decide which trajectories are admissible:
 *
 * - LOCAL_COUNTERFACTUAL: for each photon, evolve only that photon's arm
 *   from the preparation boundary and condition on the other photon's
 *   initial mode. Any exit with zero conditional probability is forbidden.
 * - CONTEXTUAL: only the fully evolved state constrains; the final pair
 *   must carry a nonzero amplitude.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hardysim/circuit.hpp"
#include "hardysim/engine.hpp"
#include "json.hpp"

namespace hardysim {

enum class RuleSet { local_counterfactual, contextual };

inline std::string_view rule_set_name(RuleSet r) {
  return r == RuleSet::local_counterfactual ? "local" : "contextual";
}

/// Staged DAG of mode names for one photon.
struct ArmGraph {
  /// boundaries[j] = modes reachable after j stages on this arm (sorted).
  std::vector<std::vector<std::string>> boundaries;
  /// edges[j][x] = successors of mode x between boundary j and j+1.
  std::vector<std::map<std::string, std::vector<std::string>>> edges;

  std::size_t depth() const { return edges.size(); }

  /// Number of root-to-leaf paths starting at `root`.
  std::size_t path_count(const std::string& root) const {
    std::map<std::string, std::size_t> counts{{root, 1}};
    for (const auto& step : edges) {
      std::map<std::string, std::size_t> next;
      for (const auto& [name, n] : counts) {
        for (const auto& succ : step.at(name)) next[succ] += n;
      }
      counts = std::move(next);
    }
    std::size_t total = 0;
    for (const auto& [name, n] : counts) total += n;
    return total;
  }

  std::vector<std::vector<std::string>> paths_from(const std::string& root) const {
    std::vector<std::vector<std::string>> out{{root}};
    for (const auto& step : edges) {
      std::vector<std::vector<std::string>> next;
      for (const auto& path : out) {
        for (const auto& succ : step.at(path.back())) {
          next.push_back(path);
          next.back().push_back(succ);
        }
      }
      out = std::move(next);
    }
    return out;
  }
};

struct TrajectoryGraph {
  /// Index of the first stage after the preparation boundary.
  std::size_t first_stage = 0;
  /// Post-selected (not renormalized) state at the preparation boundary.
  TwoPhotonState root_state;
  ArmGraph plus;
  ArmGraph minus;
  /// Root pairs with nonzero amplitude, sorted.
  std::vector<ModePair> joint_roots;

  const ArmGraph& arm(Arm a) const { return a == Arm::plus ? plus : minus; }
  ArmGraph& arm(Arm a) { return a == Arm::plus ? plus : minus; }
};

/// One full-wave path per photon, root first.
struct TrajectoryAssignment {
  std::vector<std::string> plus;
  std::vector<std::string> minus;

  const std::vector<std::string>& on(Arm a) const { return a == Arm::plus ? plus : minus; }
  ModePair root() const { return {plus.front(), minus.front()}; }
  ModePair outcome() const { return {plus.back(), minus.back()}; }

  auto operator<=>(const TrajectoryAssignment&) const = default;
  bool operator==(const TrajectoryAssignment&) const = default;

  nlohmann::json to_json() const {
    auto labels = [](const std::vector<std::string>& path, Arm arm) {
      nlohmann::json out = nlohmann::json::array();
      for (const auto& name : path) out.push_back(name + arm_suffix(arm));
      return out;
    };
    return {{"plus", labels(plus, Arm::plus)}, {"minus", labels(minus, Arm::minus)}};
  }

  std::string to_string() const {
    std::string out;
    for (const Arm a : {Arm::plus, Arm::minus}) {
      out += a == Arm::plus ? "" : " | ";
      for (std::size_t k = 0; k < on(a).size(); ++k) {
        out += (k == 0 ? "" : "->") + on(a)[k] + arm_suffix(a);
      }
    }
    return out;
  }
};

namespace detail {

inline std::size_t preparation_boundary(const Circuit& c) {
  std::size_t boundary = 0;
  for (std::size_t k = 0; k < c.stages.size(); ++k) {
    const ModeTransform x = stage_transform(c.stages[k]);
    for (const auto& name : x.outputs()) {
      if (c.discard.count(ModeLabel(name, x.arm())) != 0) boundary = k + 1;
    }
  }
  return boundary;
}

inline std::vector<Stage> stages_after(const Circuit& c, std::size_t first,
                                       std::optional<Arm> only = std::nullopt) {
  std::vector<Stage> out;
  for (std::size_t k = first; k < c.stages.size(); ++k) {
    if (!only || stage_arm(c.stages[k]) == *only) out.push_back(c.stages[k]);
  }
  return out;
}

}  // namespace detail

inline TrajectoryGraph build_graph(const Circuit& c) {
  TrajectoryGraph g;
  g.first_stage = detail::preparation_boundary(c);
  const TwoPhotonState prepared =
      evolve_stages(c.source, std::span<const Stage>(c.stages).first(g.first_stage));
  g.root_state = postselect(prepared, c.discard).state;
  for (const auto& [key, amp] : g.root_state.terms()) g.joint_roots.push_back(key);

  for (const Arm arm : {Arm::plus, Arm::minus}) {
    ArmGraph& graph = g.arm(arm);
    graph.boundaries.push_back(g.root_state.support(arm));
    for (const auto& stage : detail::stages_after(c, g.first_stage, arm)) {
      const ModeTransform x = stage_transform(stage);
      std::map<std::string, std::vector<std::string>> step;
      std::set<std::string> reached;
      for (const auto& name : graph.boundaries.back()) {
        auto& succ = step[name];
        for (const auto& [out, amp] : x.image(name)) {
          if (amp.is_zero()) continue;
          succ.push_back(out);
          reached.insert(out);
        }
      }
      graph.edges.push_back(std::move(step));
      graph.boundaries.emplace_back(reached.begin(), reached.end());
    }
  }
  return g;
}

/// Every graph-consistent assignment over jointly supported roots, sorted.
inline std::vector<TrajectoryAssignment> enumerate_assignments(const TrajectoryGraph& g) {
  std::vector<TrajectoryAssignment> out;
  for (const auto& root : g.joint_roots) {
    const auto plus_paths = g.plus.paths_from(root.plus);
    const auto minus_paths = g.minus.paths_from(root.minus);
    for (const auto& p : plus_paths) {
      for (const auto& m : minus_paths) out.push_back({p, m});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Feasibility {
  bool feasible = true;
  std::vector<std::string> reasons;
};

/// Precomputed constraint data for one circuit. Cheap to query repeatedly.
class ParadoxAnalysis {
 public:
  explicit ParadoxAnalysis(const Circuit& c) : graph_(build_graph(c)) {
    for (const Arm arm : {Arm::plus, Arm::minus}) {
      single_sided_.emplace(arm, evolve_stages(graph_.root_state,
                                               detail::stages_after(c, graph_.first_stage, arm)));
    }
    full_ = evolve_stages(graph_.root_state, detail::stages_after(c, graph_.first_stage));
  }

  const TrajectoryGraph& graph() const { return graph_; }
  /// State after evolving only `arm` from the preparation boundary.
  const TwoPhotonState& single_sided(Arm arm) const { return single_sided_.at(arm); }
  const TwoPhotonState& fully_evolved() const { return full_; }

  bool consistent_with_graph(const TrajectoryAssignment& a) const {
    if (std::find(graph_.joint_roots.begin(), graph_.joint_roots.end(), a.root()) ==
        graph_.joint_roots.end()) {
      return false;
    }
    for (const Arm arm : {Arm::plus, Arm::minus}) {
      const ArmGraph& g = graph_.arm(arm);
      const auto& path = a.on(arm);
      if (path.size() != g.depth() + 1) return false;
      for (std::size_t j = 0; j < g.depth(); ++j) {
        auto it = g.edges[j].find(path[j]);
        if (it == g.edges[j].end() ||
            std::find(it->second.begin(), it->second.end(), path[j + 1]) == it->second.end()) {
          return false;
        }
      }
    }
    return true;
  }

  Feasibility feasible(const TrajectoryAssignment& a, RuleSet rules) const {
    Feasibility out;
    auto reject = [&](std::string reason) {
      out.feasible = false;
      out.reasons.push_back(std::move(reason));
    };
    if (rules == RuleSet::contextual) {
      if (full_.amplitude(a.outcome()).is_zero()) {
        reject("final pair " + a.outcome().to_string() + " has zero amplitude in the fully evolved state");
      }
      return out;
    }
    if (graph_.root_state.amplitude(a.root()).is_zero()) {
      reject("initial pair " + a.root().to_string() + " has zero amplitude");
      return out;
    }
    for (const Arm arm : {Arm::plus, Arm::minus}) {
      const Arm other = opposite(arm);
      const ModeLabel given(a.on(other).front(), other);
      const ModeLabel exit(a.on(arm).back(), arm);
      const auto dist = conditional(single_sided_.at(arm), given);
      if (dist.count(exit) == 0) {
        reject(std::string(arm_name(arm)) + "-arm evolution: given " + given.to_string() + ", " +
               exit.to_string() + " has conditional probability 0");
      }
    }
    return out;
  }

 private:
  TrajectoryGraph graph_;
  std::map<Arm, TwoPhotonState> single_sided_;
  TwoPhotonState full_;
};

inline Feasibility feasible(const TrajectoryAssignment& a, RuleSet rules, const Circuit& c) {
  return ParadoxAnalysis(c).feasible(a, rules);
}

enum class Verdict { consistent, forbidden_but_predicted, allowed_but_impossible };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::consistent: return "consistent";
    case Verdict::forbidden_but_predicted: return "forbidden-but-predicted";
    default: return "allowed-but-impossible";
  }
}

struct RejectedAssignment {
  TrajectoryAssignment assignment;
  std::vector<std::string> reasons;
};

struct OutcomeVerdict {
  ModePair outcome;
  Rational qm_probability;
  std::vector<TrajectoryAssignment> feasible;
  std::vector<RejectedAssignment> rejected;
  Verdict verdict = Verdict::consistent;
};

struct ParadoxReport {
  RuleSet rules = RuleSet::local_counterfactual;
  std::vector<OutcomeVerdict> outcomes;

  std::vector<ModePair> with_verdict(Verdict v) const {
    std::vector<ModePair> out;
    for (const auto& o : outcomes) {
      if (o.verdict == v) out.push_back(o.outcome);
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& o : outcomes) {
      nlohmann::json feasible = nlohmann::json::array();
      for (const auto& a : o.feasible) feasible.push_back(a.to_json());
      nlohmann::json rejected = nlohmann::json::array();
      for (const auto& r : o.rejected) {
        nlohmann::json entry = r.assignment.to_json();
        entry["reasons"] = r.reasons;
        rejected.push_back(entry);
      }
      nlohmann::json row;
      row["outcome"] = {o.outcome.plus + "+", o.outcome.minus + "-"};
      row["qm_p"] = format_rational(o.qm_probability);
      row["feasible"] = feasible;
      row["rejected"] = rejected;
      row["verdict"] = verdict_name(o.verdict);
      rows.push_back(row);
    }
    nlohmann::json out;
    out["rules"] = rule_set_name(rules);
    out["outcomes"] = rows;
    return out;
  }

  std::string to_table() const {
    std::ostringstream out;
    out << "rules " << rule_set_name(rules) << "\n";
    for (const auto& o : outcomes) {
      out << verdict_name(o.verdict) << ": " << "(" << o.outcome.plus << "+," << o.outcome.minus
          << "-) qm_p=" << format_rational(o.qm_probability) << " feasible=" << o.feasible.size()
          << "\n";
      for (const auto& a : o.feasible) out << "  ok  " << a.to_string() << "\n";
      for (const auto& r : o.rejected) {
        out << "  no  " << r.assignment.to_string();
        for (const auto& reason : r.reasons) out << "; " << reason;
        out << "\n";
      }
    }
    return out.str();
  }
};

/// Exhaustive enumeration with a verdict per final detector pair.
inline ParadoxReport paradox_report(const Circuit& c, RuleSet rules) {
  const ParadoxAnalysis analysis(c);
  const OutcomeTable qm = probabilities(renormalize(analysis.fully_evolved()));

  std::map<ModePair, OutcomeVerdict> by_outcome;
  for (const auto& [key, p] : qm.rows) by_outcome[key].qm_probability = p;
  for (const auto& a : enumerate_assignments(analysis.graph())) {
    OutcomeVerdict& row = by_outcome[a.outcome()];
    Feasibility f = analysis.feasible(a, rules);
    if (f.feasible) {
      row.feasible.push_back(a);
    } else {
      row.rejected.push_back({a, std::move(f.reasons)});
    }
  }

  ParadoxReport report;
  report.rules = rules;
  for (auto& [key, row] : by_outcome) {
    row.outcome = key;
    const bool predicted = row.qm_probability > 0;
    const bool allowed = !row.feasible.empty();
    if (predicted && !allowed) {
      row.verdict = Verdict::forbidden_but_predicted;
    } else if (!predicted && allowed) {
      row.verdict = Verdict::allowed_but_impossible;
    } else {
      row.verdict = Verdict::consistent;
    }
    report.outcomes.push_back(std::move(row));
  }
  return report;
}

struct ProductVerdict {
  bool feasible = true;
  std::optional<ModePair> witness;
  Rational joint;
  Rational product;
};

/// Independent-response check: the only product distribution that could
/// reproduce `t` is the outer product of its marginals. Returns the first
/// cell (in sorted order) where the two differ.
inline ProductVerdict product_test(const OutcomeTable& t) {
  const Rational total = t.total();
  if (total == 0) throw InvalidTable("product test needs a table with positive total weight");
  std::map<std::string, Rational> plus, minus;
  for (const auto& [key, p] : t.rows) {
    plus[key.plus] += p / total;
    minus[key.minus] += p / total;
  }
  for (const auto& [p_name, p_weight] : plus) {
    for (const auto& [m_name, m_weight] : minus) {
      const ModePair cell{p_name, m_name};
      const Rational joint = t.probability(cell) / total;
      const Rational product = p_weight * m_weight;
      if (joint != product) return {false, cell, joint, product};
    }
  }
  return {};
}

}  // namespace hardysim
