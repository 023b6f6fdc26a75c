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

#include <random>
#include <string>
#include <vector>

#include "iacloop/backends.hpp"
#include "iacloop/feedback_loop.hpp"
#include "iacloop/linter.hpp"
#include "iacloop/prompt_format.hpp"
#include "iacloop/synthetic_backend.hpp"
#include "oracles.hpp"

namespace iacloop::loop {
namespace {

using testing::fixtures_dir;
using testing::read_file;

const schema::SchemaStore& store() { return schema::builtin_core_schemas(); }

constexpr const char* kSystem =
    "You are an expert AWS CloudFormation engineer. Respond with a single JSON "
    "CloudFormation template and no other text.";

// Wraps a backend and keeps a copy of every conversation it was sent.
class Recorder : public llm::Backend {
 public:
  explicit Recorder(llm::Backend& inner) : inner_(inner) {}
  std::string complete(std::span<const llm::ChatMessage> c,
                       const llm::GenerationConfig& cfg) override {
    seen.emplace_back(c.begin(), c.end());
    return inner_.complete(c, cfg);
  }
  std::vector<llm::Conversation> seen;

 private:
  llm::Backend& inner_;
};

class Failing : public llm::Backend {
 public:
  explicit Failing(std::size_t ok_calls, llm::Backend& inner) : ok_(ok_calls), inner_(inner) {}
  std::string complete(std::span<const llm::ChatMessage> c,
                       const llm::GenerationConfig& cfg) override {
    if (ok_ == 0) throw llm::TransportError("boom", 502, "");
    --ok_;
    return inner_.complete(c, cfg);
  }

 private:
  std::size_t ok_;
  llm::Backend& inner_;
};

llm::ScriptedBackend script(const char* name) {
  return llm::ScriptedBackend::from_directory(fixtures_dir() / "scripts" / name);
}

// The JSON object inside a script response, located by hand.
std::string object_text(const std::string& response) {
  return response.substr(response.find('{'), response.rfind('}') - response.find('{') + 1);
}

const BenchmarkCase kCase = BenchmarkCase::make("web", "Create an EC2 instance");

constexpr const char* kRendered0 =
    "E1001 Top level template section 'Resource' is not valid\n"
    "Error location - template.json:3:15\n\n"
    "E3003 'ImageId' is a required property\n"
    "Error location - template.json:7:21\n\n"
    "E3012 'yes' is not of type 'boolean'\n"
    "Error location - template.json:9:23";
constexpr const char* kRendered1 =
    "E1001 Top level template section 'Resource' is not valid\n"
    "Error location - template.json:3:15";

TEST(BenchmarkCase, Validation) {
  EXPECT_THROW(BenchmarkCase::make("", "p"), std::invalid_argument);
  EXPECT_THROW(BenchmarkCase::make("id", ""), std::invalid_argument);
}

TEST(Messages, Initial) {
  const llm::Conversation c = build_initial_messages(kCase);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].role, llm::Role::kSystem);
  EXPECT_EQ(c[0].content, kSystem);
  EXPECT_EQ(c[1].role, llm::Role::kUser);
  EXPECT_EQ(c[1].content, kCase.prompt);
}

TEST(Messages, FeedbackCarriesTemplateAndDiagnostics) {
  const std::string text = read_file(fixtures_dir() / "getazs" / "my_iac.json");
  const lint::LintReport r = lint::lint_template(json::parse_located(text), store());
  const llm::Conversation c = build_feedback_messages(text, r, "path/to/my_iac.json");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].content, kSystem);
  EXPECT_EQ(c[1].content,
            "Here is a CloudFormation template:\n" + text + "\nRunning cfn-lint produced:\n" +
                read_file(fixtures_dir() / "getazs" / "expected.txt") +
                "\nModify the template to fix these problems. Respond with only the corrected "
                "JSON template.");
  EXPECT_THROW(build_feedback_messages(text, lint::LintReport(), "a"), std::invalid_argument);
}

TEST(Messages, ThreeDiagnosticsThreeEntries) {
  const std::string response = read_file(fixtures_dir() / "scripts" / "counts-3-1-0" / "000.txt");
  const std::string text = object_text(response);
  const lint::LintReport r = lint::lint_template(json::parse_located(text), store());
  ASSERT_EQ(r.diagnostics().size(), 3u);
  const std::string body = build_feedback_messages(text, r, "template.json")[1].content;
  EXPECT_NE(body.find(kRendered0), std::string::npos);
  std::size_t entries = 0;
  for (std::size_t p = body.find("Error location - "); p != std::string::npos;
       p = body.find("Error location - ", p + 1)) {
    ++entries;
  }
  EXPECT_EQ(entries, 3u);
}

TEST(RunLoop, ScriptedCountsWithEarlyStop) {
  llm::ScriptedBackend inner = script("counts-3-1-0");
  Recorder backend(inner);
  LoopConfig cfg;
  cfg.early_stop = true;
  const LoopTrace trace = run_loop(kCase, backend, store(), cfg, 4);

  const auto file = [](int i) {
    return read_file(fixtures_dir() / "scripts" / "counts-3-1-0" /
                     ("00" + std::to_string(i) + ".txt"));
  };
  LoopTrace expected{"web", 4, {}};
  expected.records.push_back({0, object_text(file(0)), 3, 0, kRendered0, false});
  expected.records.push_back({1, object_text(file(1)), 1, 0, kRendered1, false});
  expected.records.push_back({2, object_text(file(2)), 0, 0, "", false});
  EXPECT_EQ(trace, expected);

  ASSERT_EQ(backend.seen.size(), 3u);
  EXPECT_EQ(backend.seen[0], build_initial_messages(kCase));
  const std::string feedback1 = "Here is a CloudFormation template:\n" + object_text(file(0)) +
                                "\nRunning cfn-lint produced:\n" + kRendered0 +
                                "\nModify the template to fix these problems. Respond with only "
                                "the corrected JSON template.";
  EXPECT_EQ(backend.seen[1][1].content, feedback1);
  EXPECT_EQ(backend.seen[1][0].content, kSystem);
  EXPECT_EQ(backend.seen[2].size(), 2u);
}

TEST(RunLoop, WithoutEarlyStopRunsAllIterations) {
  llm::ScriptedBackend backend = script("counts-3-1-0-padded");
  const LoopTrace trace = run_loop(kCase, backend, store(), LoopConfig{});
  ASSERT_EQ(trace.records.size(), 11u);
  std::vector<std::size_t> counts;
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    EXPECT_EQ(trace.records[i].index, i);
    counts.push_back(trace.records[i].error_count);
  }
  EXPECT_EQ(counts, (std::vector<std::size_t>{3, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
  // Nothing is fed back once the template is clean.
  EXPECT_EQ(backend.calls(), 3u);
  for (std::size_t i = 3; i < 11; ++i) {
    EXPECT_EQ(trace.records[i].template_text, trace.records[2].template_text);
  }
}

TEST(RunLoop, ExtractionFailureCarriesCounts) {
  llm::ScriptedBackend backend(
      {read_file(fixtures_dir() / "scripts" / "counts-3-1-0" / "000.txt"), "I cannot help.",
       read_file(fixtures_dir() / "scripts" / "counts-3-1-0" / "002.txt")});
  LoopConfig cfg;
  cfg.max_iterations = 2;
  const LoopTrace trace = run_loop(kCase, backend, store(), cfg);
  ASSERT_EQ(trace.records.size(), 3u);
  EXPECT_TRUE(trace.records[1].extraction_failed);
  EXPECT_EQ(trace.records[1].template_text, "I cannot help.");
  EXPECT_EQ(trace.records[1].error_count, 3u);
  EXPECT_EQ(trace.records[1].diagnostics_rendered, kRendered0);
  EXPECT_EQ(trace.records[2].error_count, 0u);
}

TEST(RunLoop, BackendFailureKeepsPartialTrace) {
  llm::ScriptedBackend inner = script("counts-3-1-0");
  Failing backend(1, inner);
  try {
    run_loop(kCase, backend, store(), LoopConfig{});
    FAIL() << "expected BackendFailure";
  } catch (const BackendFailure& e) {
    ASSERT_EQ(e.partial_trace().records.size(), 1u);
    EXPECT_EQ(e.partial_trace().records[0].error_count, 3u);
    EXPECT_EQ(e.partial_trace().case_id, "web");
  }
  llm::ScriptedBackend short_script({"{}"});
  EXPECT_THROW(run_loop(kCase, short_script, store(), LoopConfig{}), BackendFailure);
}

TEST(RunLoop, WarningsCanBeWithheld) {
  const std::string warn_only =
      R"({"Parameters": {"Env": {"Type": "String"}}, "Resources": {"B": {"Type": "AWS::S3::Bucket"}}})";
  llm::ScriptedBackend backend({warn_only});
  LoopConfig cfg;
  cfg.max_iterations = 3;
  cfg.include_warnings_in_feedback = false;
  const LoopTrace trace = run_loop(kCase, backend, store(), cfg);
  ASSERT_EQ(trace.records.size(), 4u);
  EXPECT_EQ(backend.calls(), 1u);
  for (const IterationRecord& r : trace.records) EXPECT_EQ(r.warning_count, 1u);
  LoopConfig bad;
  bad.max_iterations = 0;
  EXPECT_THROW(run_loop(kCase, backend, store(), bad), std::invalid_argument);
}

// Counts always equal a fresh lint of the recorded template, and traces
// have iterations + 1 records when early stop is off.
TEST(RunLoopProperty, RecordsMatchIndependentRelint) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    llm::SyntheticParams p;
    p.seed = seed;
    llm::SyntheticBackend backend(p, store());
    LoopConfig cfg;
    cfg.max_iterations = 6;
    const LoopTrace trace = run_loop(kCase, backend, store(), cfg);
    ASSERT_EQ(trace.records.size(), 7u);
    for (const IterationRecord& r : trace.records) {
      ASSERT_FALSE(r.extraction_failed);
      const lint::LintReport again =
          lint::lint_template(json::parse_located(r.template_text), store());
      EXPECT_EQ(again.error_count(), r.error_count);
      EXPECT_EQ(again.warning_count(), r.warning_count);
      EXPECT_EQ(lint::format_report(again, "template.json"), r.diagnostics_rendered);
    }
  }
}

TEST(RunLoopProperty, CleanRecordIsTerminalWithEarlyStop) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    llm::SyntheticParams p;
    p.seed = seed;
    p.stubborn_fraction = 0;
    llm::SyntheticBackend backend(p, store());
    LoopConfig cfg;
    cfg.early_stop = true;
    const LoopTrace trace = run_loop(kCase, backend, store(), cfg);
    for (std::size_t i = 0; i + 1 < trace.records.size(); ++i) {
      EXPECT_GT(trace.records[i].error_count + trace.records[i].warning_count, 0u);
    }
  }
}

TEST(TraceJson, RoundTrip) {
  llm::ScriptedBackend backend = script("counts-3-1-0");
  LoopConfig cfg;
  cfg.early_stop = true;
  LoopTrace trace = run_loop(kCase, backend, store(), cfg, 2);
  trace.records.push_back({3, "raw \"text\"\n", 0, 0, "", true});
  for (int indent : {-1, 2}) EXPECT_EQ(trace_from_json(trace_to_json(trace, indent)), trace);
  const auto doc = json::parse_located(trace_to_json(trace));
  EXPECT_NE(doc.find("case_id"), nullptr);
  EXPECT_NE(doc.find("generation_index"), nullptr);
  const auto& rec = doc.find("records")->as_array()[0];
  for (const char* key : {"index", "error_count", "warning_count", "extraction_failed",
                          "template_text", "diagnostics_rendered"}) {
    EXPECT_NE(rec.find(key), nullptr) << key;
  }
  EXPECT_THROW(trace_from_json("{}"), std::runtime_error);
  EXPECT_THROW(trace_from_json("nope"), std::runtime_error);
}

}  // namespace
}  // namespace iacloop::loop
