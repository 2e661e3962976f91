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

#include "hardysim/engine.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace hardysim {
namespace {

using testing::amp;
namespace oracle = testing::oracle;

const std::map<std::string, int> kOracleIndex = {{"a", oracle::A}, {"b", oracle::B}, {"u", oracle::U},
                                                 {"v", oracle::V}, {"g", oracle::G}, {"f", oracle::F},
                                                 {"c", oracle::C}, {"d", oracle::D}};

// Every exact amplitude matches the oracle matrix and no oracle entry is missing.
void expect_matches_oracle(const TwoPhotonState& s, const oracle::Matrix& psi, double scale = 1.0) {
  oracle::Matrix seen{};
  for (const auto& [key, value] : s.terms()) {
    const int r = kOracleIndex.at(key.plus), c = kOracleIndex.at(key.minus);
    EXPECT_NEAR(std::abs(value.to_float() * scale - psi[r][c]), 0.0, 1e-12) << key.to_string();
    seen[r][c] = 1.0;
  }
  for (int r = 0; r < oracle::kModes; ++r)
    for (int c = 0; c < oracle::kModes; ++c)
      if (seen[r][c] == 0.0) EXPECT_NEAR(std::abs(psi[r][c]), 0.0, 1e-12);
}

TEST(EvolveTest, PreparationMatchesOracle) {
  Circuit c = testing::corpus_circuit("hardy_full.circ");
  c.stages.resize(2);
  expect_matches_oracle(evolve(c), oracle::prepared());
}

TEST(EvolveTest, FullCircuitRestrictionIsScaledDetectedState) {
  const Circuit c = testing::corpus_circuit("hardy_full.circ");
  const TwoPhotonState out = evolve(c);
  expect_matches_oracle(out, oracle::detected());
  TwoPhotonState restricted;
  for (const auto& [key, value] : out.terms()) {
    const bool cd_plus = key.plus == "c" || key.plus == "d";
    const bool cd_minus = key.minus == "c" || key.minus == "d";
    if (cd_plus && cd_minus) restricted.add(key, value);
  }
  EXPECT_EQ(restricted, testing::detected_state().scaled(sqrt_rational(Rational(1, 6))));
}

TEST(EvolveTest, ReducedCircuit) {
  const TwoPhotonState out = evolve(testing::corpus_circuit("hardy_reduced.circ"));
  EXPECT_EQ(out, testing::state_of({{"c", "d", "i/sqrt(2)"}, {"d", "c", "i/sqrt(2)"}}));
}

TEST(EvolveTest, ZeroStagesLeavesSourceUnchanged) {
  Circuit c = testing::corpus_circuit("hardy_full.circ");
  c.stages.clear();
  EXPECT_EQ(evolve(c), c.source);
}

TEST(EvolveTest, SingleSidedStates) {
  EXPECT_EQ(apply_transform(testing::prepared_state(), preset_eq5(Arm::minus)),
            testing::minus_detected_state());
  EXPECT_EQ(apply_transform(apply_transform(testing::prepared_state(), preset_eq5(Arm::plus)),
                            preset_eq5(Arm::minus)),
            testing::detected_state());
  for (const char* name : {"hardy_detect_plus_inner.circ", "hardy_detect_minus_inner.circ"}) {
    const Circuit c = testing::corpus_circuit(name);
    const auto kept = renormalize(postselect(evolve(c), c.discard).state);
    EXPECT_EQ(kept, std::string(name) == "hardy_detect_plus_inner.circ" ? testing::minus_detected_state()
                                                                          : testing::plus_detected_state());
  }
}

TEST(PostselectTest, PreparationSurvivor) {
  Circuit c = testing::corpus_circuit("hardy_full.circ");
  c.stages.resize(2);
  const PostSelection kept = postselect(evolve(c), c.discard);
  EXPECT_EQ(kept.state, testing::prepared_state().scaled(sqrt_rational(Rational(1, 6))));
  EXPECT_EQ(kept.state.amplitude({"v", "v"}), amp("1/sqrt(18)"));
  EXPECT_EQ(kept.kept_weight, Rational(1, 6));
  EXPECT_NEAR(oracle::kept_weight(oracle::prepared()), 1.0 / 6.0, 1e-12);
}

TEST(PostselectTest, EmptyAndFullDiscard) {
  const auto s = testing::detected_state();
  const PostSelection none = postselect(s, {});
  EXPECT_EQ(none.state, s);
  EXPECT_EQ(none.kept_weight, Rational(1));
  std::set<ModeLabel> all;
  for (const char* n : {"c", "d"}) {
    all.insert(ModeLabel(n, Arm::plus));
    all.insert(ModeLabel(n, Arm::minus));
  }
  const PostSelection everything = postselect(s, all);
  EXPECT_TRUE(everything.state.empty());
  EXPECT_EQ(everything.kept_weight, Rational(0));
}

TEST(PostselectTest, WeightsAddUp) {
  const Circuit c = testing::corpus_circuit("hardy_full.circ");
  const TwoPhotonState s = evolve(c);
  const Rational kept = postselect(s, c.discard).kept_weight;
  TwoPhotonState dropped;
  for (const auto& [key, value] : s.terms()) {
    const bool hit = c.discard.count(ModeLabel(key.plus, Arm::plus)) ||
                     c.discard.count(ModeLabel(key.minus, Arm::minus));
    if (hit) dropped.add(key, value);
  }
  EXPECT_EQ(kept + dropped.norm_sq().as_rational(), s.norm_sq().as_rational());
}

TEST(RenormalizeTest, Values) {
  Circuit c = testing::corpus_circuit("hardy_full.circ");
  c.stages.resize(2);
  EXPECT_EQ(renormalize(postselect(evolve(c), c.discard).state), testing::prepared_state());
  EXPECT_EQ(renormalize(testing::detected_state()), testing::detected_state());
  EXPECT_THROW(renormalize(TwoPhotonState()), ZeroState);
  EXPECT_THROW(renormalize(testing::state_of(
                   {{"u", "u", "1"}, {"v", "v", "1"}, {"c", "c", "1"}, {"d", "d", "1"}, {"u", "v", "1"}})),
               UnsupportedRadical);
}

TEST(ProbabilitiesTest, DetectedState) {
  const OutcomeTable t = probabilities(testing::detected_state());
  EXPECT_EQ(t.rows.size(), 4u);
  EXPECT_EQ(t.probability({"c", "c"}), Rational(3, 4));
  EXPECT_EQ(t.probability({"c", "d"}), Rational(1, 12));
  EXPECT_EQ(t.probability({"d", "c"}), Rational(1, 12));
  EXPECT_EQ(t.probability({"d", "d"}), Rational(1, 12));
  EXPECT_EQ(t.total(), Rational(1));
}

TEST(ProbabilitiesTest, PreparedAndUnitStates) {
  const OutcomeTable t = probabilities(testing::prepared_state());
  EXPECT_EQ(t.probability({"v", "v"}), Rational(1, 3));
  EXPECT_EQ(t.probability({"v", "u"}), Rational(1, 3));
  EXPECT_EQ(t.probability({"u", "v"}), Rational(1, 3));
  EXPECT_EQ(t.probability({"u", "u"}), Rational(0));
  EXPECT_EQ(probabilities(testing::state_of({{"c", "c", "i"}})).probability({"c", "c"}), Rational(1));
  EXPECT_THROW(probabilities(testing::state_of({{"c", "c", "1+sqrt(2)"}})), NotRational);
}

TEST(OutcomeTableTest, FullCircuit) {
  const OutcomeTable t = outcome_table(testing::corpus_circuit("hardy_full.circ"));
  EXPECT_EQ(t.kept_weight, Rational(1, 6));
  EXPECT_EQ(t.probability({"d", "d"}), Rational(1, 12));
  EXPECT_EQ(t.to_json().dump(),
            R"({"kept_weight":"1/6","rows":[{"minus":"c","p":"3/4","plus":"c"},)"
            R"({"minus":"d","p":"1/12","plus":"c"},{"minus":"c","p":"1/12","plus":"d"},)"
            R"({"minus":"d","p":"1/12","plus":"d"}]})");
}

TEST(ConditionalTest, StructuralZeros) {
  const auto given_v_minus = conditional(testing::plus_detected_state(), ModeLabel("v", Arm::minus));
  EXPECT_EQ(given_v_minus, (std::map<ModeLabel, Rational>{{ModeLabel("c", Arm::plus), 1}}));
  const auto given_v_plus = conditional(testing::minus_detected_state(), ModeLabel("v", Arm::plus));
  EXPECT_EQ(given_v_plus, (std::map<ModeLabel, Rational>{{ModeLabel("c", Arm::minus), 1}}));
  const auto given_u_plus = conditional(testing::prepared_state(), ModeLabel("u", Arm::plus));
  EXPECT_EQ(given_u_plus, (std::map<ModeLabel, Rational>{{ModeLabel("v", Arm::minus), 1}}));
}

TEST(ConditionalTest, SplitDistributionAndZeroEvent) {
  const auto given_u_minus = conditional(testing::plus_detected_state(), ModeLabel("u", Arm::minus));
  EXPECT_EQ(given_u_minus, (std::map<ModeLabel, Rational>{{ModeLabel("c", Arm::plus), Rational(1, 2)},
                                                          {ModeLabel("d", Arm::plus), Rational(1, 2)}}));
  EXPECT_THROW(conditional(testing::prepared_state(), ModeLabel("c", Arm::plus)), ZeroConditioningEvent);
}

}  // namespace
}  // namespace hardysim
