// Copyright 2026 The iacloop Authors.
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


#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "iacloop/feedback_loop.hpp"
#include "iacloop/linter.hpp"
#include "iacloop/located_json.hpp"
#include "iacloop/prompt_format.hpp"
#include "iacloop/synthetic_backend.hpp"
#include "oracles.hpp"

namespace iacloop::llm {
namespace {

const schema::SchemaStore& store() { return schema::builtin_core_schemas(); }

const std::vector<DefectKind> kErrorKinds = {DefectKind::kDropRequired, DefectKind::kWrongType,
                                             DefectKind::kBadIntrinsicGetAZs,
                                             DefectKind::kUnknownTopKey, DefectKind::kBadEnum};

SyntheticParams params(double p_fix, double p_spawn, double stubborn, int defects,
                       std::uint64_t seed) {
  SyntheticParams p;
  p.p_fix = p_fix;
  p.p_spawn = p_spawn;
  p.stubborn_fraction = stubborn;
  p.initial_defects_min = defects;
  p.initial_defects_max = defects;
  p.kinds = kErrorKinds;
  p.seed = seed;
  return p;
}

lint::LintReport lint_text(const std::string& text) {
  return lint::lint_template(json::parse_located(text), store());
}

// Prompts that select each base template once, found by comparing the
// clean output of a zero-defect backend.
std::vector<std::string> one_prompt_per_base() {
  std::vector<std::string> prompts;
  std::set<std::string> seen;
  SyntheticBackend probe(params(0.5, 0, 0, 0, 1), store());
  for (int i = 0; prompts.size() < base_templates().size() && i < 1000; ++i) {
    const std::string prompt = "case " + std::to_string(i);
    if (seen.insert(probe.initial_generation(prompt)).second) prompts.push_back(prompt);
  }
  return prompts;
}

TEST(SyntheticParams, Validation) {
  SyntheticParams p;
  EXPECT_NO_THROW(p.validate());
  p.p_fix = 1.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = SyntheticParams();
  p.initial_defects_min = 5;
  p.initial_defects_max = 4;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = SyntheticParams();
  p.kinds.clear();
  EXPECT_THROW(SyntheticBackend(p, store()), std::invalid_argument);
}

TEST(SyntheticBackend, InitialDefectsAreLinterVisible) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SyntheticBackend b(params(0.5, 0, 0, 10, seed), store());
    const std::string text = b.initial_generation("make a vpc");
    const lint::LintReport r = lint_text(text);
    EXPECT_EQ(b.live_defects().size(), 10u);
    EXPECT_EQ(r.error_count(), 10u);
    EXPECT_EQ(r.warning_count(), 0u);
  }
}

TEST(SyntheticBackend, FullRepairLintsClean) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SyntheticBackend b(params(1.0, 0, 0, 3, seed), store());
    const std::string first = b.initial_generation("x");
    const json::LocatedNode tree = json::parse_located(first);
    const lint::LintReport r = lint::lint_template(tree, store());
    ASSERT_EQ(r.error_count(), 3u);
    const std::string next = b.synthetic_step(tree, r);
    EXPECT_TRUE(lint_text(next).empty()) << next;
    EXPECT_TRUE(b.live_defects().empty());
  }
}

TEST(SyntheticBackend, NoRepairLeavesTemplateUnchanged) {
  SyntheticBackend b(params(0.0, 0.5, 0, 6, 3), store());
  const std::string first = b.initial_generation("x");
  const json::LocatedNode tree = json::parse_located(first);
  const std::string next = b.synthetic_step(tree, lint::lint_template(tree, store()));
  EXPECT_EQ(next, first);
}

TEST(SyntheticBackend, UnflaggedDefectsAreNotRepaired) {
  SyntheticBackend b(params(1.0, 0, 0, 4, 9), store());
  const std::string first = b.initial_generation("x");
  const json::LocatedNode tree = json::parse_located(first);
  EXPECT_EQ(b.synthetic_step(tree, lint::LintReport()), first);
}

TEST(SyntheticBackend, StubbornDefectsPersist) {
  SyntheticBackend b(params(1.0, 0, 1.0, 5, 2), store());
  std::string text = b.initial_generation("x");
  for (int i = 0; i < 4; ++i) {
    const json::LocatedNode tree = json::parse_located(text);
    text = b.synthetic_step(tree, lint::lint_template(tree, store()));
  }
  EXPECT_EQ(lint_text(text).error_count(), 5u);
}

TEST(SyntheticBackend, DeterministicForSeedAndConversation) {
  const loop::BenchmarkCase c = loop::BenchmarkCase::make("c", "deploy a vpc");
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    SyntheticParams p;
    p.seed = seed;
    SyntheticBackend a(p, store()), b(p, store());
    const Conversation msgs = loop::build_initial_messages(c);
    const std::string ra = llm::generate(msgs, {}, a);
    EXPECT_EQ(ra, llm::generate(msgs, {}, b));
    const ExtractedTemplate t = extract_template(ra);
    const lint::LintReport r = lint::lint_template(t.root, store());
    if (r.empty()) continue;
    const Conversation fb =
        loop::build_feedback_messages(t.text, r, prompt::kFeedbackFileAlias);
    EXPECT_EQ(llm::generate(fb, {}, a), llm::generate(fb, {}, b));
  }
}

TEST(SyntheticBackend, FeedbackBeforeGenerationFails) {
  SyntheticBackend b(SyntheticParams{}, store());
  const Conversation fb = {{Role::kSystem, std::string(prompt::kSystemPrompt)},
                           {Role::kUser, std::string(prompt::kFeedbackTemplateHeader) + "{}" +
                                             std::string(prompt::kFeedbackLintHeader) + "x"}};
  EXPECT_THROW(llm::generate(fb, {}, b), GatewayError);
}

// One repair round over 100 seeded defects (five base templates with 20
// each) removes a Binomial(100, 0.5) number of them.
TEST(SyntheticBackendMonteCarlo, OneStepHalvesHundredDefects) {
  const std::vector<std::string> prompts = one_prompt_per_base();
  ASSERT_EQ(prompts.size(), 5u);
  std::vector<double> remaining;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    SyntheticBackend b(params(0.5, 0, 0, 20, mix64(77, seed, 0, 0)), store());
    std::size_t before = 0, after = 0;
    for (const std::string& prompt : prompts) {
      const json::LocatedNode tree = json::parse_located(b.initial_generation(prompt));
      const lint::LintReport r = lint::lint_template(tree, store());
      before += r.error_count();
      after += lint_text(b.synthetic_step(tree, r)).error_count();
    }
    ASSERT_EQ(before, 100u);
    remaining.push_back(static_cast<double>(after));
  }
  const auto ms = testing::two_pass(remaining);
  EXPECT_NEAR(ms.mean, 50.0, 5.0);
  // Binomial spread: sd 5, so the mean of 1000 has SE about 0.158.
  EXPECT_NEAR(ms.mean, 50.0, 3 * ms.std / std::sqrt(1000.0));
  EXPECT_NEAR(ms.std, 5.0, 0.5);
}

// E_t = E_0 (f + (1 - f)(1 - p_fix)^t) with no spawning.
TEST(SyntheticBackendMonteCarlo, DecayToStubbornFloor) {
  constexpr int kSeeds = 400;
  constexpr int kSteps = 6;
  constexpr double kPFix = 0.5, kStubborn = 0.25, kE0 = 16;
  std::vector<std::vector<double>> errors(kSteps + 1);
  for (int s = 0; s < kSeeds; ++s) {
    SyntheticBackend b(params(kPFix, 0, kStubborn, 16, mix64(99, s, 0, 0)), store());
    std::string text = b.initial_generation("deploy");
    for (int t = 0; t <= kSteps; ++t) {
      const json::LocatedNode tree = json::parse_located(text);
      const lint::LintReport r = lint::lint_template(tree, store());
      errors[t].push_back(static_cast<double>(r.error_count()));
      if (t < kSteps) text = b.synthetic_step(tree, r);
    }
  }
  for (int t = 0; t <= kSteps; ++t) {
    const auto ms = testing::two_pass(errors[t]);
    const double expect = kE0 * (kStubborn + (1 - kStubborn) * std::pow(1 - kPFix, t));
    const double se = ms.std / std::sqrt(static_cast<double>(kSeeds));
    EXPECT_LE(std::abs(ms.mean - expect), std::max(3 * se, 1e-9)) << "t=" << t;
  }
}

}  // namespace
}  // namespace iacloop::llm
