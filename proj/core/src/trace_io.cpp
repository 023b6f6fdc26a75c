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

#include <nlohmann/json.hpp>

#include "iacloop/feedback_loop.hpp"

namespace iacloop::loop {

using Json = nlohmann::ordered_json;

std::string trace_to_json(const LoopTrace& trace, int indent) {
  Json records = Json::array();
  for (const IterationRecord& r : trace.records) {
    records.push_back({
        {"index", r.index},
        {"error_count", r.error_count},
        {"warning_count", r.warning_count},
        {"extraction_failed", r.extraction_failed},
        {"template_text", r.template_text},
        {"diagnostics_rendered", r.diagnostics_rendered},
    });
  }
  Json doc = {
      {"case_id", trace.case_id},
      {"generation_index", trace.generation_index},
      {"records", std::move(records)},
  };
  return doc.dump(indent);
}

LoopTrace trace_from_json(std::string_view text) {
  try {
    const Json doc = Json::parse(text);
    LoopTrace trace;
    trace.case_id = doc.at("case_id").get<std::string>();
    trace.generation_index = doc.at("generation_index").get<std::size_t>();
    for (const Json& r : doc.at("records")) {
      IterationRecord record;
      record.index = r.at("index").get<std::size_t>();
      record.error_count = r.at("error_count").get<std::size_t>();
      record.warning_count = r.at("warning_count").get<std::size_t>();
      record.extraction_failed = r.at("extraction_failed").get<bool>();
      record.template_text = r.at("template_text").get<std::string>();
      record.diagnostics_rendered = r.at("diagnostics_rendered").get<std::string>();
      trace.records.push_back(std::move(record));
    }
    return trace;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed trace JSON: ") + e.what());
  }
}

}  // namespace iacloop::loop
