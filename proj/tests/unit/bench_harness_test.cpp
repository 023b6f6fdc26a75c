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

#include <cstdio>
#include <filesystem>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "iacloop/bench_harness.hpp"
#include "oracles.hpp"

namespace iacloop::bench {
namespace {

namespace fs = std::filesystem;
using testing::data_dir;
using testing::fixtures_dir;
using testing::TempDir;

const schema::SchemaStore& store() { return schema::builtin_core_schemas(); }

constexpr const char* kVpcPrompt =
    "Create a AWS CloudFormation template that deploys a VPC with a pair of private subnets "
    "spread across two Availabilty Zones. It deploys a VPC Endpoint for CloudFormation so an "
    "instance in the private subnet can use cfn-signal for its CreationPolicy.";

TEST(LoadCases, ShippedDataset) {
  const auto cases = load_cases(data_dir() / "cases");
  ASSERT_EQ(cases.size(), 33u);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    ids.insert(cases[i].id);
    EXPECT_FALSE(cases[i].prompt.empty());
    if (i > 0) EXPECT_LT(cases[i - 1].id, cases[i].id);
  }
  EXPECT_EQ(ids.size(), 33u);
  EXPECT_EQ(cases[0].id, "01-vpc-private-subnets-endpoint");
  EXPECT_EQ(cases[0].prompt, kVpcPrompt);
}

TEST(LoadCases, Errors) {
  TempDir empty("cases-empty");
  EXPECT_THROW(load_cases(empty.path()), EmptyDataset);
  EXPECT_THROW(load_cases(empty / "missing"), IoError);
  write_text_file(empty / "notes.md", "ignored");
  EXPECT_THROW(load_cases(empty.path()), EmptyDataset);
}

TEST(LoadCases, StripsTrailingNewlinesAndSorts) {
  TempDir dir("cases");
  write_text_file(dir / "b.txt", "second\r\n");
  write_text_file(dir / "a.txt", "first\nline\n\n");
  const auto cases = load_cases(dir.path());
  ASSERT_EQ(cases.size(), 2u);
  EXPECT_EQ(cases[0].id, "a");
  EXPECT_EQ(cases[0].prompt, "first\nline");
  EXPECT_EQ(cases[1].prompt, "second");
}

TEST(BackendKind, Names) {
  for (BackendKind k : {BackendKind::kSynthetic, BackendKind::kScripted, BackendKind::kHttp}) {
    EXPECT_EQ(parse_backend_kind(backend_kind_name(k)), k);
  }
  EXPECT_EQ(parse_backend_kind("gpt"), std::nullopt);
}

BenchmarkConfig scripted_config(int iterations) {
  BenchmarkConfig cfg;
  cfg.trials = 1;
  cfg.generations_per_case = 1;
  cfg.iterations = iterations;
  cfg.backend.kind = BackendKind::kScripted;
  cfg.backend.script_dir = fixtures_dir() / "scripts" / "counts-3-1-0-padded";
  return cfg;
}

TEST(RunBenchmark, SingleScriptedCell) {
  const BenchmarkConfig cfg = scripted_config(3);
  const std::vector<loop::BenchmarkCase> cases = {loop::BenchmarkCase::make("c", "p")};
  const BenchmarkResult r =
      run_benchmark(cfg, cases, make_backend_factory(cfg.backend, store()), store());
  ASSERT_EQ(r.trials.size(), 1u);
  EXPECT_EQ(r.trials[0].per_iteration_totals,
            (std::vector<IterationTotals>{{3, 0}, {1, 0}, {0, 0}, {0, 0}}));
  EXPECT_EQ(r.trials[0].completed_cells, 1u);
  EXPECT_TRUE(r.aborted.empty());
}

TEST(RunBenchmark, IdenticalCellsAddUp) {
  BenchmarkConfig cfg = scripted_config(3);
  cfg.generations_per_case = 2;
  const std::vector<loop::BenchmarkCase> cases = {loop::BenchmarkCase::make("c", "p")};
  const BenchmarkResult r =
      run_benchmark(cfg, cases, make_backend_factory(cfg.backend, store()), store());
  EXPECT_EQ(r.trials[0].per_iteration_totals,
            (std::vector<IterationTotals>{{6, 0}, {2, 0}, {0, 0}, {0, 0}}));
  EXPECT_EQ(r.trials[0].completed_cells, 2u);
}

TEST(RunBenchmark, EarlyStopCarriesLastRecordForward) {
  BenchmarkConfig cfg = scripted_config(5);
  cfg.early_stop = true;
  const std::vector<loop::BenchmarkCase> cases = {loop::BenchmarkCase::make("c", "p")};
  const BenchmarkResult r =
      run_benchmark(cfg, cases, make_backend_factory(cfg.backend, store()), store());
  EXPECT_EQ(r.traces.at(0).records.size(), 3u);
  EXPECT_EQ(r.trials[0].per_iteration_totals.size(), 6u);
  EXPECT_EQ(r.trials[0].per_iteration_totals.back(), (IterationTotals{0, 0}));
}

BenchmarkConfig synthetic_config(int parallelism) {
  BenchmarkConfig cfg;
  cfg.trials = 2;
  cfg.generations_per_case = 2;
  cfg.iterations = 4;
  cfg.master_seed = 17;
  cfg.parallelism = parallelism;
  return cfg;
}

TEST(RunBenchmark, ParallelismDoesNotChangeResults) {
  const auto cases = load_cases(data_dir() / "cases");
  std::string serial;
  for (int par : {1, 8, 3}) {
    const BenchmarkConfig cfg = synthetic_config(par);
    const BenchmarkResult r =
        run_benchmark(cfg, cases, make_backend_factory(cfg.backend, store()), store());
    const std::string json = results_to_json(make_results_document(cfg, r));
    if (serial.empty()) {
      serial = json;
    } else {
      EXPECT_EQ(json, serial) << "parallelism " << par;
    }
  }
}

TEST(RunBenchmark, TotalsEqualResummedTraces) {
  const auto cases = load_cases(data_dir() / "cases");
  BenchmarkConfig cfg = synthetic_config(4);
  TempDir traces("traces");
  cfg.traces_dir = traces.path();
  const BenchmarkResult r =
      run_benchmark(cfg, cases, make_backend_factory(cfg.backend, store()), store());
  const std::size_t per_trial = cases.size() * 2;
  ASSERT_EQ(r.traces.size(), 2 * per_trial);
  for (std::size_t t = 0; t < 2; ++t) {
    // Oracle: direct sum over the persisted trace files of this trial.
    std::vector<IterationTotals> sums(5);
    std::size_t files = 0;
    for (std::size_t c = 0; c < cases.size(); ++c) {
      for (std::size_t g = 0; g < 2; ++g) {
        char name[256];
        std::snprintf(name, sizeof name, "t%02zu_%s_g%02zu.json", t, cases[c].id.c_str(), g);
        const loop::LoopTrace trace =
            loop::trace_from_json(testing::read_file(traces / name));
        ASSERT_EQ(trace.records.size(), 5u);
        for (std::size_t i = 0; i < 5; ++i) {
          sums[i].errors += trace.records[i].error_count;
          sums[i].warnings += trace.records[i].warning_count;
        }
        ++files;
      }
    }
    EXPECT_EQ(files, per_trial);
    EXPECT_EQ(r.trials[t].per_iteration_totals, sums);
    EXPECT_EQ(sum_traces(std::span(r.traces).subspan(t * per_trial, per_trial), 4), sums);
  }
}

TEST(RunBenchmark, GenerationsDifferAndTrialsRegenerate) {
  const std::vector<loop::BenchmarkCase> cases = {loop::BenchmarkCase::make("c", "deploy a vpc")};
  BenchmarkConfig cfg = synthetic_config(1);
  const BenchmarkResult r =
      run_benchmark(cfg, cases, make_backend_factory(cfg.backend, store()), store());
  ASSERT_EQ(r.traces.size(), 4u);
  std::set<std::string> initial;
  for (const auto& t : r.traces) initial.insert(t.records[0].template_text);
  EXPECT_GT(initial.size(), 1u);
}

class AlwaysFails : public llm::Backend {
 public:
  std::string complete(std::span<const llm::ChatMessage>, const llm::GenerationConfig&) override {
    throw llm::TransportError("down", 503, "");
  }
};

TEST(RunBenchmark, AbortedCellsAreExcludedAndListed) {
  const std::vector<loop::BenchmarkCase> cases = {loop::BenchmarkCase::make("a", "p"),
                                                  loop::BenchmarkCase::make("b", "p")};
  BenchmarkConfig cfg = scripted_config(3);
  cfg.trials = 2;
  const BackendFactory scripted = make_backend_factory(cfg.backend, store());
  const BackendFactory factory = [&](const CellContext& cell) -> std::unique_ptr<llm::Backend> {
    if (cell.case_index == 1 && cell.trial == 0) return std::make_unique<AlwaysFails>();
    return scripted(cell);
  };
  const BenchmarkResult r = run_benchmark(cfg, cases, factory, store());
  ASSERT_EQ(r.aborted.size(), 1u);
  EXPECT_EQ(r.aborted[0].case_id, "b");
  EXPECT_EQ(r.aborted[0].trial, 0u);
  EXPECT_EQ(r.aborted[0].records_completed, 0u);
  EXPECT_EQ(r.trials[0].completed_cells, 1u);
  EXPECT_EQ(r.trials[0].aborted_cells, 1u);
  EXPECT_EQ(r.trials[0].per_iteration_totals[0], (IterationTotals{3, 0}));
  EXPECT_EQ(r.trials[1].per_iteration_totals[0], (IterationTotals{6, 0}));

  const ResultsDocument doc = make_results_document(cfg, r);
  EXPECT_EQ(results_from_json(results_to_json(doc)).aborted, r.aborted);
}

TEST(BenchmarkConfig, Validation) {
  BenchmarkConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  for (int BenchmarkConfig::*field : {&BenchmarkConfig::trials, &BenchmarkConfig::iterations,
                                      &BenchmarkConfig::generations_per_case,
                                      &BenchmarkConfig::parallelism}) {
    BenchmarkConfig bad;
    bad.*field = 0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
  }
}

TEST(ResultsJson, RoundTripWithoutSecrets) {
  const auto cases = load_cases(data_dir() / "cases");
  BenchmarkConfig cfg = synthetic_config(2);
  cfg.backend.http.api_key = "sk-secret";
  const BenchmarkResult r =
      run_benchmark(cfg, cases, make_backend_factory(cfg.backend, store()), store());
  const ResultsDocument doc = make_results_document(cfg, r);
  ASSERT_TRUE(doc.stats.has_value());
  const std::string text = results_to_json(doc);
  EXPECT_EQ(text.find("sk-secret"), std::string::npos);
  EXPECT_EQ(text.find("parallelism"), std::string::npos);
  const ResultsDocument back = results_from_json(text);
  EXPECT_EQ(back.trials, doc.trials);
  EXPECT_EQ(back.plateau_index, doc.plateau_index);
  EXPECT_EQ(results_to_json(back), text);
  ASSERT_TRUE(back.stats.has_value());
  for (std::size_t i = 0; i < doc.stats->iterations.size(); ++i) {
    EXPECT_NEAR(back.stats->iterations[i].mean_errors, doc.stats->iterations[i].mean_errors, 1e-9);
    EXPECT_NEAR(back.stats->iterations[i].std_errors, doc.stats->iterations[i].std_errors, 1e-9);
  }
  EXPECT_THROW(results_from_json("[]"), std::runtime_error);
}

TEST(ResultsJson, SingleTrialHasNullStats) {
  const BenchmarkConfig cfg = scripted_config(3);
  const std::vector<loop::BenchmarkCase> cases = {loop::BenchmarkCase::make("c", "p")};
  const BenchmarkResult r =
      run_benchmark(cfg, cases, make_backend_factory(cfg.backend, store()), store());
  const ResultsDocument doc = make_results_document(cfg, r);
  EXPECT_FALSE(doc.stats.has_value());
  EXPECT_FALSE(doc.plateau_index.has_value());
  const auto parsed = json::parse_located(results_to_json(doc));
  EXPECT_TRUE(parsed.find("stats")->is_null());
  EXPECT_TRUE(parsed.find("plateau_index")->is_null());
}

}  // namespace
}  // namespace iacloop::bench
