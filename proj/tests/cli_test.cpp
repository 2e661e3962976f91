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

#include "hardysim/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"

namespace hardysim {
namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

void expect_golden(const std::string& name, const std::string& actual) {
  const std::string expected = testing::read_text(std::string(HARDYSIM_GOLDEN_DIR) + "/" + name);
  ASSERT_FALSE(expected.empty()) << "missing golden file " << name;
  EXPECT_EQ(actual, expected) << name;
}

const std::string kFull = testing::corpus_path("hardy_full.circ");
const std::string kReduced = testing::corpus_path("hardy_reduced.circ");

TEST(CliTest, CheckOk) {
  const CliResult r = run({"check", kFull});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("4 stages"), std::string::npos);
  EXPECT_TRUE(r.err.empty());
}

TEST(CliTest, CheckBadModeWritesOnlyTheDiagnostic) {
  const CliResult r = run({"check", testing::corpus_path("bad_mode.circ")});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.empty());
  const std::string suffix = "bad_mode.circ:18:11: undeclared-mode: q+\n";
  ASSERT_GE(r.err.size(), suffix.size());
  EXPECT_EQ(r.err.substr(r.err.size() - suffix.size()), suffix);
}

TEST(CliTest, ProbsTable) {
  const CliResult r = run({"probs", kFull});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("kept_weight 1/6"), std::string::npos);
  EXPECT_NE(r.out.find("d+\td-\t1/12"), std::string::npos);
}

TEST(CliTest, ProbsCsv) {
  const CliResult r = run({"probs", kFull, "--format=csv"});
  EXPECT_EQ(r.out, "plus,minus,p\nc+,c-,3/4\nc+,d-,1/12\nd+,c-,1/12\nd+,d-,1/12\n# kept_weight=1/6\n");
}

TEST(CliTest, ParadoxVerdictLine) {
  const CliResult local = run({"paradox", kFull, "--rules=local"});
  EXPECT_EQ(local.code, 0);
  EXPECT_NE(local.out.find("forbidden-but-predicted: (d+,d-)"), std::string::npos);
  const CliResult contextual = run({"paradox", kFull, "--rules", "contextual"});
  EXPECT_EQ(contextual.out.find("forbidden-but-predicted"), std::string::npos);
}

TEST(CliTest, JsonGoldenFiles) {
  expect_golden("probs_hardy_full.json", run({"probs", kFull, "--format=json"}).out);
  expect_golden("paradox_hardy_full_local.json", run({"paradox", kFull, "--format=json"}).out);
  expect_golden("evolve_hardy_reduced.json", run({"evolve", kReduced, "--format=json"}).out);
  expect_golden("evolve_hardy_full_postselected.json",
                run({"evolve", kFull, "--postselect", "--format=json"}).out);
  expect_golden("sample_hardy_full.json", run({"sample", kFull, "--format=json"}).out);
}

TEST(CliTest, JsonIsParseable) {
  const auto j = nlohmann::json::parse(run({"probs", kFull, "--format=json"}).out);
  EXPECT_EQ(j["kept_weight"], "1/6");
  const auto s = nlohmann::json::parse(run({"sample", kFull, "--format=json", "--n=100", "--seed=9"}).out);
  EXPECT_EQ(s["n"], 100);
  EXPECT_EQ(s["seed"], 9);
}

TEST(CliTest, SampleCsv) {
  const CliResult r = run({"sample", kFull, "--format=csv", "--n=1200", "--seed=5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("outcome_plus,outcome_minus,count,expected\n", 0), 0u);
  EXPECT_NE(r.out.find("# n=1200,seed=5,"), std::string::npos);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate", kFull}).code, 2);
  EXPECT_EQ(run({"probs"}).code, 2);
  EXPECT_EQ(run({"probs", kFull, "--format=xml"}).code, 2);
  EXPECT_EQ(run({"paradox", kFull, "--rules=bohm"}).code, 2);
  EXPECT_EQ(run({"sample", kFull, "--n=0"}).code, 2);
  EXPECT_EQ(run({"check", kFull, "extra"}).code, 2);
}

TEST(CliTest, MissingFileIsADiagnostic) {
  const CliResult r = run({"check", "/nonexistent/x.circ"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("io-error"), std::string::npos);
}

}  // namespace
}  // namespace hardysim
