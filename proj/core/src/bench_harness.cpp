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

#include "iacloop/bench_harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "iacloop/seed.hpp"

namespace iacloop::bench {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return buf.str();
}

void write_text_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("error writing " + path.string());
}

std::vector<loop::BenchmarkCase> load_cases(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("cases directory not found: " + dir.string());
  std::vector<fs::path> files;
  for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
    if (it->is_regular_file() && it->path().extension() == ".txt") files.push_back(it->path());
  }
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
  if (files.empty()) throw EmptyDataset("no *.txt prompt files in " + dir.string());
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.stem() < b.stem(); });

  std::vector<loop::BenchmarkCase> cases;
  cases.reserve(files.size());
  for (const fs::path& f : files) {
    std::string prompt = read_text_file(f);
    while (!prompt.empty() && (prompt.back() == '\n' || prompt.back() == '\r')) prompt.pop_back();
    try {
      cases.push_back(loop::BenchmarkCase::make(f.stem().string(), std::move(prompt)));
    } catch (const std::invalid_argument& e) {
      throw IoError(f.string() + ": " + e.what());
    }
  }
  return cases;
}

const char* backend_kind_name(BackendKind kind) {
  switch (kind) {
    case BackendKind::kSynthetic:
      return "synthetic";
    case BackendKind::kScripted:
      return "scripted";
    case BackendKind::kHttp:
      return "http";
  }
  return "unknown";
}

std::optional<BackendKind> parse_backend_kind(std::string_view name) {
  for (BackendKind k : {BackendKind::kSynthetic, BackendKind::kScripted, BackendKind::kHttp}) {
    if (name == backend_kind_name(k)) return k;
  }
  return std::nullopt;
}

BackendFactory make_backend_factory(const BackendSettings& settings,
                                    const schema::SchemaStore& store) {
  switch (settings.kind) {
    case BackendKind::kSynthetic: {
      settings.synthetic.validate();
      return [params = settings.synthetic, &store](const CellContext& cell) {
        llm::SyntheticParams p = params;
        p.seed = cell.seed;
        return std::make_unique<llm::SyntheticBackend>(std::move(p), store);
      };
    }
    case BackendKind::kScripted: {
      // Read once up front so a bad directory fails before any cell runs.
      auto script = llm::ScriptedBackend::from_directory(settings.script_dir).script();
      return [script = std::move(script)](const CellContext&) -> std::unique_ptr<llm::Backend> {
        return std::make_unique<llm::ScriptedBackend>(script);
      };
    }
    case BackendKind::kHttp:
      return [endpoint = settings.http](const CellContext&) -> std::unique_ptr<llm::Backend> {
        return std::make_unique<llm::HttpBackend>(endpoint);
      };
  }
  throw std::invalid_argument("unknown backend kind");
}

void BenchmarkConfig::validate() const {
  if (generations_per_case < 1) throw std::invalid_argument("generations_per_case must be >= 1");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (parallelism < 1) throw std::invalid_argument("parallelism must be >= 1");
}

std::vector<IterationTotals> sum_traces(std::span<const loop::LoopTrace> traces,
                                        std::size_t iterations) {
  std::vector<IterationTotals> totals(iterations + 1);
  for (const loop::LoopTrace& trace : traces) {
    if (trace.records.empty()) continue;
    for (std::size_t t = 0; t <= iterations; ++t) {
      const loop::IterationRecord& r = trace.records[std::min(t, trace.records.size() - 1)];
      totals[t].errors += r.error_count;
      totals[t].warnings += r.warning_count;
    }
  }
  return totals;
}

namespace {

struct CellOutcome {
  std::optional<loop::LoopTrace> trace;
  std::string failure;
  std::size_t records_completed = 0;
};

std::string trace_file_name(std::size_t trial, const std::string& case_id, std::size_t gen) {
  char prefix[32];
  std::snprintf(prefix, sizeof prefix, "t%02zu_", trial);
  char suffix[32];
  std::snprintf(suffix, sizeof suffix, "_g%02zu.json", gen);
  return prefix + case_id + suffix;
}

}  // namespace

BenchmarkResult run_benchmark(const BenchmarkConfig& cfg,
                              const std::vector<loop::BenchmarkCase>& cases,
                              const BackendFactory& factory, const schema::SchemaStore& store) {
  cfg.validate();
  if (cases.empty()) throw EmptyDataset("benchmark needs at least one case");
  if (cfg.traces_dir) {
    std::error_code ec;
    fs::create_directories(*cfg.traces_dir, ec);
    if (ec) throw IoError("cannot create " + cfg.traces_dir->string() + ": " + ec.message());
  }

  const auto trials = static_cast<std::size_t>(cfg.trials);
  const auto gens = static_cast<std::size_t>(cfg.generations_per_case);
  const std::size_t per_trial = cases.size() * gens;
  const std::size_t total = trials * per_trial;

  loop::LoopConfig loop_cfg;
  loop_cfg.max_iterations = cfg.iterations;
  loop_cfg.early_stop = cfg.early_stop;
  loop_cfg.include_warnings_in_feedback = cfg.include_warnings_in_feedback;
  loop_cfg.generation = cfg.generation;

  std::vector<CellOutcome> outcomes(total);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
      CellContext cell;
      cell.trial = i / per_trial;
      cell.case_index = (i % per_trial) / gens;
      cell.generation = i % gens;
      cell.seed = mix64(cfg.master_seed, cell.trial, cell.case_index, cell.generation);
      const loop::BenchmarkCase& c = cases[cell.case_index];
      CellOutcome& out = outcomes[i];
      try {
        std::unique_ptr<llm::Backend> backend = factory(cell);
        out.trace = loop::run_loop(c, *backend, store, loop_cfg, cell.generation);
        out.records_completed = out.trace->records.size();
      } catch (const loop::BackendFailure& e) {
        out.failure = e.what();
        out.records_completed = e.partial_trace().records.size();
      } catch (const std::exception& e) {
        out.failure = e.what();
      }
      if (cfg.traces_dir && out.trace) {
        try {
          write_text_file(*cfg.traces_dir / trace_file_name(cell.trial, c.id, cell.generation),
                          loop::trace_to_json(*out.trace));
        } catch (const IoError& e) {
          out.failure = e.what();
          out.trace.reset();
        }
      }
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(cfg.parallelism), total);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  // Serial reduction in (trial, case, generation) order.
  BenchmarkResult result;
  result.trials.resize(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<loop::LoopTrace> completed;
    TrialResult& tr = result.trials[t];
    tr.trial_index = t;
    for (std::size_t k = 0; k < per_trial; ++k) {
      CellOutcome& out = outcomes[t * per_trial + k];
      if (out.trace) {
        completed.push_back(std::move(*out.trace));
      } else {
        result.aborted.push_back(CellFailure{t, cases[k / gens].id, k % gens, out.failure,
                                             out.records_completed});
      }
    }
    tr.completed_cells = completed.size();
    tr.aborted_cells = per_trial - completed.size();
    tr.per_iteration_totals = sum_traces(completed, static_cast<std::size_t>(cfg.iterations));
    for (loop::LoopTrace& trace : completed) result.traces.push_back(std::move(trace));
  }
  return result;
}

// --- results.json -----------------------------------------------------------

namespace {

Json config_to_json(const BenchmarkConfig& cfg) {
  Json backend = {{"kind", backend_kind_name(cfg.backend.kind)}};
  switch (cfg.backend.kind) {
    case BackendKind::kSynthetic: {
      const llm::SyntheticParams& p = cfg.backend.synthetic;
      Json kinds = Json::array();
      for (llm::DefectKind k : p.kinds) kinds.push_back(llm::defect_kind_name(k));
      backend["p_fix"] = p.p_fix;
      backend["p_spawn"] = p.p_spawn;
      backend["stubborn_fraction"] = p.stubborn_fraction;
      backend["initial_defects_min"] = p.initial_defects_min;
      backend["initial_defects_max"] = p.initial_defects_max;
      backend["kinds"] = std::move(kinds);
      break;
    }
    case BackendKind::kScripted:
      backend["script_dir"] = cfg.backend.script_dir.generic_string();
      break;
    case BackendKind::kHttp:
      backend["base_url"] = cfg.backend.http.base_url;
      backend["model"] = cfg.generation.model;
      backend["temperature"] = cfg.generation.temperature;
      break;
  }
  // Parallelism and credentials are deliberately not echoed: the document
  // must be identical across schedules and safe to share.
  return Json{
      {"cases_dir", cfg.cases_dir.generic_string()},
      {"generations_per_case", cfg.generations_per_case},
      {"iterations", cfg.iterations},
      {"trials", cfg.trials},
      {"master_seed", cfg.master_seed},
      {"early_stop", cfg.early_stop},
      {"include_warnings_in_feedback", cfg.include_warnings_in_feedback},
      {"backend", std::move(backend)},
  };
}

BenchmarkConfig config_from_json(const Json& j) {
  BenchmarkConfig cfg;
  cfg.cases_dir = j.at("cases_dir").get<std::string>();
  cfg.generations_per_case = j.at("generations_per_case").get<int>();
  cfg.iterations = j.at("iterations").get<int>();
  cfg.trials = j.at("trials").get<int>();
  cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
  cfg.early_stop = j.at("early_stop").get<bool>();
  cfg.include_warnings_in_feedback = j.at("include_warnings_in_feedback").get<bool>();
  const Json& b = j.at("backend");
  const std::string kind = b.at("kind").get<std::string>();
  auto parsed = parse_backend_kind(kind);
  if (!parsed) throw std::runtime_error("unknown backend kind '" + kind + "'");
  cfg.backend.kind = *parsed;
  switch (*parsed) {
    case BackendKind::kSynthetic: {
      llm::SyntheticParams& p = cfg.backend.synthetic;
      p.p_fix = b.at("p_fix").get<double>();
      p.p_spawn = b.at("p_spawn").get<double>();
      p.stubborn_fraction = b.at("stubborn_fraction").get<double>();
      p.initial_defects_min = b.at("initial_defects_min").get<int>();
      p.initial_defects_max = b.at("initial_defects_max").get<int>();
      p.kinds.clear();
      for (const Json& k : b.at("kinds")) {
        auto dk = llm::parse_defect_kind(k.get<std::string>());
        if (!dk) throw std::runtime_error("unknown defect kind " + k.dump());
        p.kinds.push_back(*dk);
      }
      break;
    }
    case BackendKind::kScripted:
      cfg.backend.script_dir = b.at("script_dir").get<std::string>();
      break;
    case BackendKind::kHttp:
      cfg.backend.http.base_url = b.at("base_url").get<std::string>();
      cfg.generation.model = b.at("model").get<std::string>();
      cfg.generation.temperature = b.at("temperature").get<double>();
      break;
  }
  return cfg;
}

Json stats_json(const AggregateStats& stats) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < stats.iterations.size(); ++i) {
    const IterationStats& s = stats.iterations[i];
    rows.push_back({{"iteration", i},
                    {"mean_errors", s.mean_errors},
                    {"std_errors", s.std_errors},
                    {"mean_warnings", s.mean_warnings},
                    {"std_warnings", s.std_warnings}});
  }
  return Json{{"iterations", std::move(rows)}};
}

AggregateStats stats_from_json(const Json& j) {
  AggregateStats stats;
  for (const Json& r : j.at("iterations")) {
    stats.iterations.push_back({r.at("mean_errors").get<double>(), r.at("std_errors").get<double>(),
                                r.at("mean_warnings").get<double>(),
                                r.at("std_warnings").get<double>()});
  }
  return stats;
}

}  // namespace

std::string stats_to_json(const AggregateStats& stats) { return stats_json(stats).dump(2); }

ResultsDocument make_results_document(const BenchmarkConfig& cfg, const BenchmarkResult& result) {
  ResultsDocument doc;
  doc.config = cfg;
  doc.trials = result.trials;
  doc.aborted = result.aborted;
  if (result.trials.size() >= 2) {
    doc.stats = aggregate(result.trials);
    const std::vector<double> means = doc.stats->mean_errors();
    if (means.size() >= 3) doc.plateau_index = detect_plateau(means);
  }
  return doc;
}

std::string results_to_json(const ResultsDocument& doc) {
  Json trials = Json::array();
  for (const TrialResult& t : doc.trials) {
    Json totals = Json::array();
    for (const IterationTotals& it : t.per_iteration_totals) {
      totals.push_back({{"errors", it.errors}, {"warnings", it.warnings}});
    }
    trials.push_back({{"trial_index", t.trial_index},
                      {"completed_cells", t.completed_cells},
                      {"aborted_cells", t.aborted_cells},
                      {"per_iteration_totals", std::move(totals)}});
  }
  Json aborted = Json::array();
  for (const CellFailure& f : doc.aborted) {
    aborted.push_back({{"trial", f.trial},
                       {"case_id", f.case_id},
                       {"generation", f.generation},
                       {"records_completed", f.records_completed},
                       {"message", f.message}});
  }
  Json out = {
      {"config", config_to_json(doc.config)},
      {"trials", std::move(trials)},
      {"stats", doc.stats ? stats_json(*doc.stats) : Json(nullptr)},
      {"plateau_index", doc.plateau_index ? Json(*doc.plateau_index) : Json(nullptr)},
      {"aborted_cells", std::move(aborted)},
  };
  return out.dump(2) + "\n";
}

ResultsDocument results_from_json(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    ResultsDocument doc;
    doc.config = config_from_json(j.at("config"));
    for (const Json& t : j.at("trials")) {
      TrialResult tr;
      tr.trial_index = t.at("trial_index").get<std::size_t>();
      tr.completed_cells = t.at("completed_cells").get<std::size_t>();
      tr.aborted_cells = t.at("aborted_cells").get<std::size_t>();
      for (const Json& it : t.at("per_iteration_totals")) {
        tr.per_iteration_totals.push_back(
            {it.at("errors").get<std::size_t>(), it.at("warnings").get<std::size_t>()});
      }
      doc.trials.push_back(std::move(tr));
    }
    if (!j.at("stats").is_null()) doc.stats = stats_from_json(j.at("stats"));
    if (!j.at("plateau_index").is_null()) doc.plateau_index = j.at("plateau_index").get<std::size_t>();
    for (const Json& f : j.at("aborted_cells")) {
      doc.aborted.push_back(CellFailure{f.at("trial").get<std::size_t>(),
                                        f.at("case_id").get<std::string>(),
                                        f.at("generation").get<std::size_t>(),
                                        f.at("message").get<std::string>(),
                                        f.at("records_completed").get<std::size_t>()});
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed results JSON: ") + e.what());
  }
}

}  // namespace iacloop::bench
