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

#ifndef IACLOOP_BENCH_HARNESS_HPP_
#define IACLOOP_BENCH_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iacloop/backends.hpp"
#include "iacloop/feedback_loop.hpp"
#include "iacloop/schema_store.hpp"
#include "iacloop/stats.hpp"
#include "iacloop/synthetic_backend.hpp"

namespace iacloop::bench {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyDataset : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One prompt per *.txt file, id = file stem, sorted by id. Trailing
// newlines are stripped from prompts.
std::vector<loop::BenchmarkCase> load_cases(const std::filesystem::path& dir);

enum class BackendKind { kSynthetic, kScripted, kHttp };

const char* backend_kind_name(BackendKind kind);
std::optional<BackendKind> parse_backend_kind(std::string_view name);

struct BackendSettings {
  BackendKind kind = BackendKind::kSynthetic;
  // Seed is overwritten per cell.
  llm::SyntheticParams synthetic;
  std::filesystem::path script_dir;
  llm::HttpEndpoint http;
};

struct CellContext {
  std::size_t trial = 0;
  std::size_t case_index = 0;
  std::size_t generation = 0;
  std::uint64_t seed = 0;
};

using BackendFactory = std::function<std::unique_ptr<llm::Backend>(const CellContext&)>;

// Fresh backend per cell. Scripted backends reread the same script
// directory for every cell; synthetic ones get the cell seed.
BackendFactory make_backend_factory(const BackendSettings& settings,
                                    const schema::SchemaStore& store);

struct BenchmarkConfig {
  std::filesystem::path cases_dir;
  int generations_per_case = 5;
  int iterations = 10;
  int trials = 6;
  std::uint64_t master_seed = 0;
  BackendSettings backend;
  int parallelism = 1;
  bool early_stop = false;
  bool include_warnings_in_feedback = true;
  llm::GenerationConfig generation;
  // When set, one trace JSON per cell is written here.
  std::optional<std::filesystem::path> traces_dir;

  // Throws std::invalid_argument unless all counts are >= 1.
  void validate() const;
};

struct CellFailure {
  std::size_t trial = 0;
  std::string case_id;
  std::size_t generation = 0;
  std::string message;
  std::size_t records_completed = 0;

  friend bool operator==(const CellFailure&, const CellFailure&) = default;
};

struct BenchmarkResult {
  std::vector<TrialResult> trials;
  std::vector<CellFailure> aborted;
  // Completed traces in (trial, case, generation) order.
  std::vector<loop::LoopTrace> traces;
};

// Runs trials x cases x generations loop cells, `parallelism` at a time.
// Results depend only on the config and master seed.
BenchmarkResult run_benchmark(const BenchmarkConfig& cfg,
                              const std::vector<loop::BenchmarkCase>& cases,
                              const BackendFactory& factory, const schema::SchemaStore& store);

// Per-iteration totals for one trial, recomputed from its traces. Short
// traces (early stop) carry their last record forward.
std::vector<IterationTotals> sum_traces(std::span<const loop::LoopTrace> traces,
                                        std::size_t iterations);

// results.json: {config, trials, stats, plateau_index, aborted_cells}.
// stats and plateau_index are null with fewer than two trials.
struct ResultsDocument {
  BenchmarkConfig config;
  std::vector<TrialResult> trials;
  std::optional<AggregateStats> stats;
  std::optional<std::size_t> plateau_index;
  std::vector<CellFailure> aborted;
};

ResultsDocument make_results_document(const BenchmarkConfig& cfg, const BenchmarkResult& result);
std::string results_to_json(const ResultsDocument& doc);
// Throws std::runtime_error on malformed input.
ResultsDocument results_from_json(std::string_view text);

std::string stats_to_csv(const AggregateStats& stats);
std::string stats_to_json(const AggregateStats& stats);

struct SvgOptions {
  bool skip_initial = false;  // drop iteration 0 from the chart
};

// 800x500 bar chart of mean errors per iteration with +/-1 std whiskers.
// Bars carry class="bar", whiskers class="whisker".
std::string stats_to_svg(const AggregateStats& stats, const SvgOptions& options = {});

enum class ExportFormat { kCsv, kJson, kSvg };

// Throws IoError when the file cannot be written.
void export_stats(const AggregateStats& stats, ExportFormat format,
                  const std::filesystem::path& out_path, const SvgOptions& svg = {});

void write_text_file(const std::filesystem::path& path, std::string_view content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace iacloop::bench

#endif  // IACLOOP_BENCH_HARNESS_HPP_
