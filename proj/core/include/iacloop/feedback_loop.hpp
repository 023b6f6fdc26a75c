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

#ifndef IACLOOP_FEEDBACK_LOOP_HPP_
#define IACLOOP_FEEDBACK_LOOP_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iacloop/diagnostic.hpp"
#include "iacloop/gateway.hpp"
#include "iacloop/schema_store.hpp"

namespace iacloop::loop {

struct BenchmarkCase {
  std::string id;
  std::string prompt;

  // Throws std::invalid_argument on an empty id or prompt.
  static BenchmarkCase make(std::string id, std::string prompt);
};

struct IterationRecord {
  std::size_t index = 0;
  // The extracted template, or the raw response when extraction failed.
  std::string template_text;
  std::size_t error_count = 0;
  std::size_t warning_count = 0;
  std::string diagnostics_rendered;
  bool extraction_failed = false;

  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct LoopTrace {
  std::string case_id;
  std::size_t generation_index = 0;
  std::vector<IterationRecord> records;

  friend bool operator==(const LoopTrace&, const LoopTrace&) = default;
};

struct LoopConfig {
  int max_iterations = 10;
  bool early_stop = false;
  bool include_warnings_in_feedback = true;
  llm::GenerationConfig generation;
};

// A backend call failed. Carries everything recorded before the failure.
class BackendFailure : public std::runtime_error {
 public:
  BackendFailure(const std::string& what, LoopTrace partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const LoopTrace& partial_trace() const { return partial_; }

 private:
  LoopTrace partial_;
};

llm::Conversation build_initial_messages(const BenchmarkCase& c);

// Fresh two-message conversation carrying the previous template and every
// diagnostic in `report`. Throws std::invalid_argument on an empty report.
llm::Conversation build_feedback_messages(std::string_view prev_template,
                                          const lint::LintReport& report,
                                          std::string_view file_alias);

// Record 0 is the initial generation, each further record one feedback
// round. Throws BackendFailure if the backend raises.
LoopTrace run_loop(const BenchmarkCase& c, llm::Backend& backend,
                   const schema::SchemaStore& store, const LoopConfig& cfg,
                   std::size_t generation_index = 0);

std::string trace_to_json(const LoopTrace& trace, int indent = 2);
// Throws std::runtime_error on malformed input.
LoopTrace trace_from_json(std::string_view text);

}  // namespace iacloop::loop

#endif  // IACLOOP_FEEDBACK_LOOP_HPP_
