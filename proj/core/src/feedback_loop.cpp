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

#include "iacloop/feedback_loop.hpp"

#include <optional>

#include "iacloop/linter.hpp"
#include "iacloop/prompt_format.hpp"

namespace iacloop::loop {

BenchmarkCase BenchmarkCase::make(std::string id, std::string prompt) {
  if (id.empty()) throw std::invalid_argument("benchmark case id must not be empty");
  if (prompt.empty()) throw std::invalid_argument("benchmark case '" + id + "' has an empty prompt");
  return BenchmarkCase{std::move(id), std::move(prompt)};
}

llm::Conversation build_initial_messages(const BenchmarkCase& c) {
  if (c.prompt.empty()) throw std::invalid_argument("benchmark case prompt must not be empty");
  return {
      {llm::Role::kSystem, std::string(prompt::kSystemPrompt)},
      {llm::Role::kUser, c.prompt},
  };
}

llm::Conversation build_feedback_messages(std::string_view prev_template,
                                          const lint::LintReport& report,
                                          std::string_view file_alias) {
  if (report.empty()) {
    throw std::invalid_argument("feedback requires at least one diagnostic");
  }
  std::string body;
  body += prompt::kFeedbackTemplateHeader;
  body += prev_template;
  body += prompt::kFeedbackLintHeader;
  body += lint::format_report(report, file_alias);
  body += prompt::kFeedbackInstruction;
  return {
      {llm::Role::kSystem, std::string(prompt::kSystemPrompt)},
      {llm::Role::kUser, std::move(body)},
  };
}

LoopTrace run_loop(const BenchmarkCase& c, llm::Backend& backend,
                   const schema::SchemaStore& store, const LoopConfig& cfg,
                   std::size_t generation_index) {
  if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");

  LoopTrace trace{c.id, generation_index, {}};
  std::optional<std::string> last_template;
  lint::LintReport last_report;

  for (std::size_t i = 0; i <= static_cast<std::size_t>(cfg.max_iterations); ++i) {
    llm::Conversation conversation;
    if (!last_template) {
      conversation = build_initial_messages(c);
    } else {
      lint::LintReport shown = last_report.filtered(cfg.include_warnings_in_feedback);
      if (shown.empty()) {
        // Only unreported warnings remain: nothing to feed back, the template
        // carries over unchanged.
        IterationRecord carried;
        carried.index = i;
        carried.template_text = *last_template;
        carried.error_count = last_report.error_count();
        carried.warning_count = last_report.warning_count();
        carried.diagnostics_rendered =
            lint::format_report(last_report, prompt::kFeedbackFileAlias);
        trace.records.push_back(std::move(carried));
        continue;
      }
      conversation = build_feedback_messages(*last_template, shown, prompt::kFeedbackFileAlias);
    }

    std::string response;
    try {
      response = llm::generate(conversation, cfg.generation, backend);
    } catch (const llm::GatewayError& e) {
      throw BackendFailure(e.what(), std::move(trace));
    }

    IterationRecord record;
    record.index = i;
    try {
      llm::ExtractedTemplate extracted = llm::extract_template(response);
      lint::LintReport report = lint::lint_template(extracted.root, store);
      record.template_text = std::move(extracted.text);
      record.error_count = report.error_count();
      record.warning_count = report.warning_count();
      record.diagnostics_rendered = lint::format_report(report, prompt::kFeedbackFileAlias);
      last_template = record.template_text;
      last_report = std::move(report);
    } catch (const llm::NoTemplateFound&) {
      record.extraction_failed = true;
      record.template_text = std::move(response);
      if (!trace.records.empty()) {
        record.error_count = trace.records.back().error_count;
        record.warning_count = trace.records.back().warning_count;
        record.diagnostics_rendered = trace.records.back().diagnostics_rendered;
      }
    }
    const bool clean = !record.extraction_failed && record.error_count == 0 &&
                       record.warning_count == 0;
    trace.records.push_back(std::move(record));
    if (cfg.early_stop && clean) break;
  }
  return trace;
}

}  // namespace iacloop::loop
