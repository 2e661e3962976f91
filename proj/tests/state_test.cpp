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

#include "hardysim/state.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace hardysim {
namespace {

using testing::amp;
using testing::state_of;

ModeLabel plus(const char* n) { return ModeLabel(n, Arm::plus); }
ModeLabel minus(const char* n) { return ModeLabel(n, Arm::minus); }

TEST(ModeLabelTest, ParseAndValidate) {
  EXPECT_EQ(ModeLabel::parse("v+"), plus("v"));
  EXPECT_EQ(ModeLabel::parse("out_2-"), minus("out_2"));
  EXPECT_THROW(ModeLabel::parse("v"), InvalidLabel);
  EXPECT_THROW(ModeLabel::parse("2v+"), InvalidLabel);
  EXPECT_THROW(ModeLabel::parse("+"), InvalidLabel);
  EXPECT_THROW(ModeLabel("V", Arm::plus), InvalidLabel);
}

TEST(StateMakeTest, InitialState) {
  const auto s = TwoPhotonState::make({{{plus("a"), minus("a")}, amp("1/sqrt(2)")},
                                       {{plus("b"), minus("b")}, amp("1/sqrt(2)")}});
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.amplitude({"a", "a"}), amp("(1/2)*sqrt(2)"));
  EXPECT_EQ(s, testing::initial_state());
}

TEST(StateMakeTest, DuplicatesSumAndCancel) {
  const auto s = TwoPhotonState::make({{{plus("a"), minus("a")}, amp("1/2")},
                                       {{plus("a"), minus("a")}, amp("-1/2")}});
  EXPECT_TRUE(s.empty());
}

TEST(StateMakeTest, AcceptsEitherKeyOrder) {
  const auto s = TwoPhotonState::make({{{minus("u"), plus("v")}, RadicalComplex(1)}});
  EXPECT_EQ(s.amplitude({"v", "u"}), RadicalComplex(1));
}

TEST(StateMakeTest, ArmMismatch) {
  EXPECT_THROW(TwoPhotonState::make({{{plus("a"), plus("b")}, RadicalComplex(1)}}), ArmMismatch);
}

TEST(StateNormTest, Values) {
  EXPECT_EQ(testing::initial_state().norm_sq(), RadicalComplex(1));
  EXPECT_EQ(TwoPhotonState().norm_sq(), RadicalComplex());
  EXPECT_EQ(testing::detected_state().norm_sq(), RadicalComplex(1));
}

TEST(StateScaleTest, Values) {
  const auto s = testing::prepared_state();
  EXPECT_EQ(s.scaled(RadicalComplex(1)), s);
  const auto rotated = s.scaled(RadicalComplex::i());
  EXPECT_EQ(rotated.amplitude({"v", "v"}), amp("i/sqrt(3)"));
  EXPECT_EQ(rotated.amplitude({"v", "u"}), amp("-1/sqrt(3)"));
  EXPECT_EQ(rotated.amplitude({"u", "v"}), amp("-1/sqrt(3)"));
  EXPECT_TRUE(s.scaled(RadicalComplex()).empty());
}

TEST(StateEqualTest, Values) {
  const auto eq8 = testing::detected_state();
  EXPECT_EQ(eq8, eq8);
  EXPECT_NE(eq8, state_of({{"c", "c", "-3/sqrt(12)"}, {"c", "d", "i/sqrt(12)"}, {"d", "c", "i/sqrt(12)"}}));
  EXPECT_EQ(state_of({{"c", "c", "(-3)/sqrt(12)"}}), state_of({{"c", "c", "-sqrt(3)/2"}}));
}

TEST(StateRenderTest, TermsAreSortedByPlusThenMinus) {
  const auto s = testing::prepared_state();
  EXPECT_EQ(s.to_string(),
            "(u+,v-) (1/3)*sqrt(3)*i\n"
            "(v+,u-) (1/3)*sqrt(3)*i\n"
            "(v+,v-) (1/3)*sqrt(3)\n");
  const auto json = s.to_json();
  ASSERT_EQ(json["terms"].size(), 3u);
  EXPECT_EQ(json["terms"][1]["plus"], "v");
  EXPECT_EQ(json["terms"][1]["minus"], "u");
  EXPECT_EQ(json["terms"][1]["amp"], "(1/3)*sqrt(3)*i");
}

TEST(StatePropertyTest, ScalingMultipliesNorm) {
  testing::Generator gen(11);
  for (int trial = 0; trial < 100; ++trial) {
    TwoPhotonState s;
    for (int k = 0; k < 4; ++k) {
      s.add({std::string(1, static_cast<char>('a' + gen.integer(0, 2))),
             std::string(1, static_cast<char>('a' + gen.integer(0, 2)))},
            gen.radical_complex());
    }
    const RadicalComplex k = gen.radical_complex();
    EXPECT_EQ(s.scaled(k).norm_sq(), k.norm_sq() * s.norm_sq());
    // Re-canonicalizing through make() is a no-op.
    std::vector<TwoPhotonState::Entry> entries;
    for (const auto& [key, a] : s.terms()) {
      entries.push_back({{ModeLabel(key.plus, Arm::plus), ModeLabel(key.minus, Arm::minus)}, a});
    }
    EXPECT_EQ(TwoPhotonState::make(entries), s);
  }
}

}  // namespace
}  // namespace hardysim
