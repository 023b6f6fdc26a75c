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

#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "iacloop/backends.hpp"
#include "iacloop/linter.hpp"
#include "iacloop/located_json.hpp"
#include "iacloop/schema_store.hpp"
#include "iacloop/synthetic_backend.hpp"

namespace iacloop::cli {

namespace fs = std::filesystem;
using json::LocatedNode;

namespace {

std::string where(std::string_view file, const json::SourceSpan& span) {
  return std::string(file) + ":" + std::to_string(span.line) + ":" + std::to_string(span.column);
}

[[noreturn]] void config_fail(std::string_view file, const LocatedNode& node,
                              const std::string& message) {
  throw ConfigError(where(file, node.span()) + ": " + message);
}

double number_of(std::string_view file, const LocatedNode& node, std::string_view key) {
  if (!node.is_number()) config_fail(file, node, "'" + std::string(key) + "' must be a number");
  return node.as_number().value;
}

int int_of(std::string_view file, const LocatedNode& node, std::string_view key) {
  const double v = number_of(file, node, key);
  if (v != static_cast<double>(static_cast<int>(v))) {
    config_fail(file, node, "'" + std::string(key) + "' must be an integer");
  }
  return static_cast<int>(v);
}

const std::string& string_of(std::string_view file, const LocatedNode& node, std::string_view key) {
  if (!node.is_string()) config_fail(file, node, "'" + std::string(key) + "' must be a string");
  return node.as_string();
}

void apply_synthetic(std::string_view file, const LocatedNode& node, llm::SyntheticParams& p) {
  if (!node.is_object()) config_fail(file, node, "'synthetic' must be an object");
  for (const json::Member& m : node.as_object()) {
    const LocatedNode& v = m.value;
    if (m.key == "p_fix") {
      p.p_fix = number_of(file, v, m.key);
    } else if (m.key == "p_spawn") {
      p.p_spawn = number_of(file, v, m.key);
    } else if (m.key == "stubborn_fraction") {
      p.stubborn_fraction = number_of(file, v, m.key);
    } else if (m.key == "initial_defects_min") {
      p.initial_defects_min = int_of(file, v, m.key);
    } else if (m.key == "initial_defects_max") {
      p.initial_defects_max = int_of(file, v, m.key);
    } else if (m.key == "kinds") {
      if (!v.is_array()) config_fail(file, v, "'kinds' must be an array");
      p.kinds.clear();
      for (const LocatedNode& k : v.as_array()) {
        auto kind = llm::parse_defect_kind(string_of(file, k, "kinds"));
        if (!kind) config_fail(file, k, "unknown defect kind '" + k.as_string() + "'");
        p.kinds.push_back(*kind);
      }
    } else {
      throw ConfigError(where(file, m.key_span) + ": unknown key 'synthetic." + m.key + "'");
    }
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    config_fail(file, node, e.what());
  }
}

}  // namespace

GlobalConfig parse_global_config(std::string_view text, std::string_view file_name) {
  LocatedNode root;
  try {
    root = json::parse_located(text);
  } catch (const json::JsonError& e) {
    throw ConfigError(std::string(file_name) + ": " + e.what());
  }
  if (!root.is_object()) config_fail(file_name, root, "config must be a JSON object");

  GlobalConfig cfg;
  for (const json::Member& m : root.as_object()) {
    const LocatedNode& v = m.value;
    if (m.key == "schemas_dir") {
      cfg.schemas_dir = string_of(file_name, v, m.key);
    } else if (m.key == "backend") {
      auto kind = bench::parse_backend_kind(string_of(file_name, v, m.key));
      if (!kind) config_fail(file_name, v, "unknown backend '" + v.as_string() + "'");
      cfg.backend = *kind;
    } else if (m.key == "synthetic") {
      apply_synthetic(file_name, v, cfg.synthetic);
    } else if (m.key == "script_dir") {
      cfg.script_dir = string_of(file_name, v, m.key);
    } else if (m.key == "api_base_url") {
      cfg.api_base_url = string_of(file_name, v, m.key);
    } else if (m.key == "model") {
      cfg.generation.model = string_of(file_name, v, m.key);
    } else if (m.key == "temperature") {
      cfg.generation.temperature = number_of(file_name, v, m.key);
      if (cfg.generation.temperature < 0) config_fail(file_name, v, "temperature must be >= 0");
    } else if (m.key == "max_retries") {
      cfg.generation.max_retries = int_of(file_name, v, m.key);
      if (cfg.generation.max_retries < 0) config_fail(file_name, v, "max_retries must be >= 0");
    } else if (m.key == "timeout_seconds") {
      cfg.generation.timeout_seconds = number_of(file_name, v, m.key);
      if (cfg.generation.timeout_seconds <= 0) {
        config_fail(file_name, v, "timeout_seconds must be positive");
      }
    } else if (m.key == "parallelism") {
      cfg.parallelism = int_of(file_name, v, m.key);
      if (cfg.parallelism < 1) config_fail(file_name, v, "parallelism must be >= 1");
    } else if (m.key == "verbosity") {
      cfg.verbosity = int_of(file_name, v, m.key);
    } else {
      throw ConfigError(where(file_name, m.key_span) + ": unknown key '" + m.key + "'");
    }
  }
  return cfg;
}

GlobalConfig load_global_config(const fs::path& path) {
  std::string text;
  try {
    text = bench::read_text_file(path);
  } catch (const bench::IoError& e) {
    throw ConfigError(e.what());
  }
  return parse_global_config(text, path.string());
}

namespace {

// Flag values that override the config file when given.
struct SharedFlags {
  std::string config_path;
  std::string api_base_url;
  int verbosity = 0;
  std::string schemas_dir;
  std::string backend;
  std::string script_dir;
  std::string model;
  double temperature = 1.0;
  int max_retries = 3;
  double p_fix = 0;
  double p_spawn = 0;
  double stubborn_fraction = 0;
  int defects_min = 0;
  int defects_max = 0;
  bool no_warnings_feedback = false;
  std::uint64_t seed = 0;
};

bool given(const CLI::App& app, std::string_view name) {
  const CLI::Option* opt = app.get_option_no_throw(std::string(name));
  return opt != nullptr && opt->count() > 0;
}

void add_schemas_flag(CLI::App& sub, SharedFlags& f) {
  sub.add_option("--schemas", f.schemas_dir, "Directory of resource schema files")
      ->check(CLI::ExistingDirectory);
}

void add_backend_flags(CLI::App& sub, SharedFlags& f) {
  sub.add_option("--backend", f.backend, "Generation backend")
      ->check(CLI::IsMember({"http", "scripted", "synthetic"}));
  sub.add_option("--script-dir", f.script_dir, "Scripted backend: directory of 000.txt, 001.txt, ...");
  sub.add_option("--model", f.model, "HTTP backend: model name");
  sub.add_option("--temperature", f.temperature, "HTTP backend: sampling temperature")
      ->check(CLI::NonNegativeNumber);
  sub.add_option("--max-retries", f.max_retries, "HTTP backend: retries on 5xx or timeout")
      ->check(CLI::NonNegativeNumber);
  sub.add_option("--seed", f.seed, "Synthetic backend master seed");
  sub.add_option("--p-fix", f.p_fix, "Synthetic backend: repair probability")
      ->check(CLI::Range(0.0, 1.0));
  sub.add_option("--p-spawn", f.p_spawn, "Synthetic backend: spawn probability per repair")
      ->check(CLI::Range(0.0, 1.0));
  sub.add_option("--stubborn-fraction", f.stubborn_fraction,
                 "Synthetic backend: fraction of unrepairable initial defects")
      ->check(CLI::Range(0.0, 1.0));
  sub.add_option("--defects-min", f.defects_min, "Synthetic backend: fewest initial defects")
      ->check(CLI::NonNegativeNumber);
  sub.add_option("--defects-max", f.defects_max, "Synthetic backend: most initial defects")
      ->check(CLI::NonNegativeNumber);
  sub.add_flag("--no-warnings-feedback", f.no_warnings_feedback,
               "Feed back errors only; warnings are still counted");
}

// Defaults < config file < flags.
GlobalConfig resolve(const CLI::App& root, const CLI::App& sub, const SharedFlags& f) {
  GlobalConfig cfg;
  if (!f.config_path.empty()) cfg = load_global_config(f.config_path);
  if (given(root, "--api-base-url")) cfg.api_base_url = f.api_base_url;
  if (given(root, "--verbose")) cfg.verbosity = f.verbosity;
  if (given(sub, "--schemas")) cfg.schemas_dir = f.schemas_dir;
  if (given(sub, "--backend")) cfg.backend = *bench::parse_backend_kind(f.backend);
  if (given(sub, "--script-dir")) cfg.script_dir = f.script_dir;
  if (given(sub, "--model")) cfg.generation.model = f.model;
  if (given(sub, "--temperature")) cfg.generation.temperature = f.temperature;
  if (given(sub, "--max-retries")) cfg.generation.max_retries = f.max_retries;
  if (given(sub, "--p-fix")) cfg.synthetic.p_fix = f.p_fix;
  if (given(sub, "--p-spawn")) cfg.synthetic.p_spawn = f.p_spawn;
  if (given(sub, "--stubborn-fraction")) cfg.synthetic.stubborn_fraction = f.stubborn_fraction;
  if (given(sub, "--defects-min")) cfg.synthetic.initial_defects_min = f.defects_min;
  if (given(sub, "--defects-max")) cfg.synthetic.initial_defects_max = f.defects_max;
  try {
    cfg.synthetic.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("synthetic parameters: ") + e.what());
  }
  return cfg;
}

schema::SchemaStore load_store(const GlobalConfig& cfg, std::ostream& err) {
  if (!cfg.schemas_dir) return schema::builtin_core_schemas();
  schema::LoadResult loaded = schema::load_schema_dir(*cfg.schemas_dir);
  for (const schema::LoadIssue& issue : loaded.report.issues) {
    err << (issue.severity == schema::IssueSeverity::kError ? "schema error: " : "schema warning: ")
        << issue.file;
    if (!issue.property.empty()) err << " (" << issue.property << ")";
    err << ": " << issue.message << "\n";
  }
  return std::move(loaded.store);
}

bench::BackendSettings backend_settings(const GlobalConfig& cfg, std::uint64_t seed) {
  bench::BackendSettings s;
  s.kind = cfg.backend;
  s.synthetic = cfg.synthetic;
  s.synthetic.seed = seed;
  if (cfg.backend == bench::BackendKind::kScripted) {
    if (!cfg.script_dir) throw ConfigError("the scripted backend needs --script-dir");
    s.script_dir = *cfg.script_dir;
  }
  s.http.base_url = cfg.api_base_url;
  s.http.api_key = llm::api_key_from_environment().value_or("");
  return s;
}

// --- lint ---------------------------------------------------------------

struct LintArgs {
  std::string file;
  bool strict_types = false;
  std::string format = "text";
};

int run_lint(const GlobalConfig& cfg, const LintArgs& args, std::ostream& out, std::ostream& err) {
  schema::SchemaStore store = load_store(cfg, err);
  const std::string text = bench::read_text_file(args.file);
  json::LocatedNode root;
  try {
    root = json::parse_located(text);
  } catch (const json::JsonError& e) {
    err << args.file << ":" << e.span().line << ":" << e.span().column << ": " << e.what() << "\n";
    return kExitRuntime;
  }
  lint::LintOptions options;
  options.strict_unknown_types = args.strict_types;
  const lint::LintReport report = lint::lint_template(root, store, options);

  if (args.format == "json") {
    nlohmann::ordered_json diags = nlohmann::ordered_json::array();
    for (const lint::Diagnostic& d : report.diagnostics()) {
      diags.push_back({{"code", d.code.str()},
                       {"severity", lint::severity_name(d.severity())},
                       {"message", d.message},
                       {"line", d.span.line},
                       {"column", d.span.column},
                       {"byte_offset", d.span.byte_offset},
                       {"pointer", d.pointer}});
    }
    nlohmann::ordered_json doc = {{"file", args.file},
                                  {"error_count", report.error_count()},
                                  {"warning_count", report.warning_count()},
                                  {"diagnostics", std::move(diags)}};
    out << doc.dump(2) << "\n";
  } else if (!report.empty()) {
    out << lint::format_report(report, args.file) << "\n";
  }
  return report.error_count() > 0 ? kExitLintErrors : kExitOk;
}

// --- loop ---------------------------------------------------------------

struct LoopArgs {
  std::string prompt_file;
  std::string case_id;
  std::size_t generation = 0;
  int iterations = 10;
  bool early_stop = false;
  std::string out;
};

int run_loop_cmd(const GlobalConfig& cfg, const SharedFlags& f, const LoopArgs& args,
                 std::ostream& out, std::ostream& err) {
  schema::SchemaStore store = load_store(cfg, err);
  std::string prompt = bench::read_text_file(args.prompt_file);
  while (!prompt.empty() && (prompt.back() == '\n' || prompt.back() == '\r')) prompt.pop_back();
  const std::string id =
      args.case_id.empty() ? fs::path(args.prompt_file).stem().string() : args.case_id;
  const loop::BenchmarkCase c = loop::BenchmarkCase::make(id, prompt);

  const bench::BackendSettings settings = backend_settings(cfg, f.seed);
  bench::BackendFactory factory = bench::make_backend_factory(settings, store);
  bench::CellContext cell;
  cell.generation = args.generation;
  cell.seed = f.seed;
  std::unique_ptr<llm::Backend> backend = factory(cell);

  loop::LoopConfig loop_cfg;
  loop_cfg.max_iterations = args.iterations;
  loop_cfg.early_stop = args.early_stop;
  loop_cfg.include_warnings_in_feedback = !f.no_warnings_feedback;
  loop_cfg.generation = cfg.generation;

  try {
    const loop::LoopTrace trace = loop::run_loop(c, *backend, store, loop_cfg, args.generation);
    bench::write_text_file(args.out, loop::trace_to_json(trace) + "\n");
    const loop::IterationRecord& last = trace.records.back();
    if (cfg.verbosity > 0) {
      for (const loop::IterationRecord& r : trace.records) {
        err << "iteration " << r.index << ": " << r.error_count << " errors, " << r.warning_count
            << " warnings" << (r.extraction_failed ? " (no template)" : "") << "\n";
      }
    }
    out << trace.records.size() << " records; final " << last.error_count << " errors, "
        << last.warning_count << " warnings\n";
    return kExitOk;
  } catch (const loop::BackendFailure& e) {
    bench::write_text_file(args.out, loop::trace_to_json(e.partial_trace()) + "\n");
    err << "backend failure after " << e.partial_trace().records.size()
        << " records: " << e.what() << "\n";
    return kExitRuntime;
  }
}

// --- bench --------------------------------------------------------------

struct BenchArgs {
  std::string cases;
  int trials = 6;
  int generations = 5;
  int iterations = 10;
  std::string out;
  int parallel = 1;
  bool early_stop = false;
  std::string traces_dir;
};

int run_bench(const CLI::App& sub, const GlobalConfig& cfg, const SharedFlags& f,
              const BenchArgs& args, std::ostream& out, std::ostream& err) {
  schema::SchemaStore store = load_store(cfg, err);
  bench::BenchmarkConfig bc;
  bc.cases_dir = args.cases;
  bc.trials = args.trials;
  bc.generations_per_case = args.generations;
  bc.iterations = args.iterations;
  bc.master_seed = f.seed;
  bc.backend = backend_settings(cfg, f.seed);
  bc.parallelism = given(sub, "--parallel") ? args.parallel : cfg.parallelism;
  bc.early_stop = args.early_stop;
  bc.include_warnings_in_feedback = !f.no_warnings_feedback;
  bc.generation = cfg.generation;
  if (!args.traces_dir.empty()) bc.traces_dir = fs::path(args.traces_dir);
  try {
    bc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  const std::vector<loop::BenchmarkCase> cases = bench::load_cases(bc.cases_dir);
  if (cfg.verbosity > 0) {
    err << "loaded " << cases.size() << " cases; running "
        << cases.size() * static_cast<std::size_t>(bc.generations_per_case * bc.trials)
        << " cells on " << bc.parallelism << " threads\n";
  }
  const bench::BackendFactory factory = bench::make_backend_factory(bc.backend, store);
  const bench::BenchmarkResult result = bench::run_benchmark(bc, cases, factory, store);
  const bench::ResultsDocument doc = bench::make_results_document(bc, result);
  bench::write_text_file(args.out, bench::results_to_json(doc));

  for (const bench::CellFailure& failure : result.aborted) {
    err << "aborted cell trial=" << failure.trial << " case=" << failure.case_id
        << " generation=" << failure.generation << ": " << failure.message << "\n";
  }
  out << "cells: " << result.traces.size() << " completed, " << result.aborted.size()
      << " aborted\n";
  if (doc.stats) {
    out << "mean errors:";
    for (double m : doc.stats->mean_errors()) out << ' ' << m;
    out << "\n";
    out << "plateau index: "
        << (doc.plateau_index ? std::to_string(*doc.plateau_index) : std::string("none")) << "\n";
  }
  return result.traces.empty() ? kExitRuntime : kExitOk;
}

// --- report -------------------------------------------------------------

struct ReportArgs {
  std::string in;
  std::string csv;
  std::string svg;
  std::string json;
  bool skip_initial = false;
};

int run_report(const ReportArgs& args, std::ostream& out, std::ostream& err) {
  const bench::ResultsDocument doc = bench::results_from_json(bench::read_text_file(args.in));
  if (!doc.stats) {
    err << args.in << " has no aggregate statistics (fewer than two trials)\n";
    return kExitRuntime;
  }
  if (args.csv.empty() && args.svg.empty() && args.json.empty()) {
    out << bench::stats_to_csv(*doc.stats);
    return kExitOk;
  }
  if (!args.csv.empty()) bench::export_stats(*doc.stats, bench::ExportFormat::kCsv, args.csv);
  if (!args.json.empty()) bench::export_stats(*doc.stats, bench::ExportFormat::kJson, args.json);
  if (!args.svg.empty()) {
    bench::export_stats(*doc.stats, bench::ExportFormat::kSvg, args.svg,
                        bench::SvgOptions{args.skip_initial});
  }
  return kExitOk;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lint CloudFormation templates and run lint-driven repair loops", "iacloop"};
  app.require_subcommand(1);
  app.fallthrough();

  SharedFlags flags;
  app.add_option("--config", flags.config_path, "JSON config file (flags override it)");
  app.add_option("--api-base-url", flags.api_base_url,
                 "Chat completions endpoint base, default https://api.openai.com");
  app.add_option("-v,--verbose", flags.verbosity, "Verbosity level")->check(CLI::NonNegativeNumber);

  LintArgs lint_args;
  CLI::App* lint_cmd = app.add_subcommand("lint", "Lint one template; exit 2 when errors remain");
  lint_cmd->add_option("file", lint_args.file, "Template JSON file")->required();
  add_schemas_flag(*lint_cmd, flags);
  lint_cmd->add_flag("--strict-types", lint_args.strict_types, "Report unknown resource types (E3002)");
  lint_cmd->add_option("--format", lint_args.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  LoopArgs loop_args;
  CLI::App* loop_cmd = app.add_subcommand("loop", "Run the feedback loop for one prompt");
  loop_cmd->add_option("--prompt-file", loop_args.prompt_file, "Prompt text file")->required();
  loop_cmd->add_option("--case-id", loop_args.case_id, "Case id (default: prompt file stem)");
  loop_cmd->add_option("--generation", loop_args.generation, "Generation index recorded in the trace");
  loop_cmd->add_option("--iterations", loop_args.iterations, "Feedback rounds, default 10")
      ->check(CLI::PositiveNumber);
  loop_cmd->add_flag("--early-stop", loop_args.early_stop, "Stop at the first clean template");
  loop_cmd->add_option("--out", loop_args.out, "Trace JSON output path")->required();
  add_schemas_flag(*loop_cmd, flags);
  add_backend_flags(*loop_cmd, flags);

  BenchArgs bench_args;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run the benchmark protocol over a case set");
  bench_cmd->add_option("--cases", bench_args.cases, "Directory of *.txt prompts")->required();
  bench_cmd->add_option("--trials", bench_args.trials, "Trials, default 6")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--generations", bench_args.generations, "Generations per case, default 5")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--iterations", bench_args.iterations, "Feedback rounds, default 10")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", bench_args.out, "results.json output path")->required();
  bench_cmd->add_option("--parallel", bench_args.parallel, "Worker threads, default 1")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--early-stop", bench_args.early_stop, "Stop each cell at its first clean template");
  bench_cmd->add_option("--traces-dir", bench_args.traces_dir, "Write one trace JSON per cell here");
  add_schemas_flag(*bench_cmd, flags);
  add_backend_flags(*bench_cmd, flags);

  ReportArgs report_args;
  CLI::App* report_cmd = app.add_subcommand("report", "Export statistics from results.json");
  report_cmd->add_option("--in", report_args.in, "results.json path")->required();
  report_cmd->add_option("--csv", report_args.csv, "CSV output path");
  report_cmd->add_option("--svg", report_args.svg, "SVG chart output path");
  report_cmd->add_option("--json", report_args.json, "JSON statistics output path");
  report_cmd->add_flag("--skip-initial", report_args.skip_initial, "Omit iteration 0 from the chart");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return kExitUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (sub == report_cmd) return run_report(report_args, out, err);
    const GlobalConfig cfg = resolve(app, *sub, flags);
    if (sub == lint_cmd) return run_lint(cfg, lint_args, out, err);
    if (sub == loop_cmd) return run_loop_cmd(cfg, flags, loop_args, out, err);
    return run_bench(*sub, cfg, flags, bench_args, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace iacloop::cli
