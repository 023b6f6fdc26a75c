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

#include "iacloop/diagnostic.hpp"

#include <algorithm>
#include <stdexcept>

namespace iacloop::lint {

const char* severity_name(Severity s) { return s == Severity::kError ? "error" : "warning"; }

DiagCode::DiagCode(std::string_view code) : code_(code) {
  if (!is_valid(code)) {
    throw std::invalid_argument("diagnostic code must match [EW][0-9]{4}: " + code_);
  }
}

bool DiagCode::is_valid(std::string_view code) {
  if (code.size() != 5 || (code[0] != 'E' && code[0] != 'W')) return false;
  return std::all_of(code.begin() + 1, code.end(), [](char c) { return c >= '0' && c <= '9'; });
}

LintReport::LintReport(std::vector<Diagnostic> diagnostics) : diagnostics_(std::move(diagnostics)) {
  std::stable_sort(diagnostics_.begin(), diagnostics_.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     if (a.span.byte_offset != b.span.byte_offset) {
                       return a.span.byte_offset < b.span.byte_offset;
                     }
                     return a.code < b.code;
                   });
  for (const Diagnostic& d : diagnostics_) {
    if (d.severity() == Severity::kError) {
      ++error_count_;
    } else {
      ++warning_count_;
    }
  }
}

LintReport LintReport::filtered(bool include_warnings) const {
  if (include_warnings) return *this;
  std::vector<Diagnostic> kept;
  std::copy_if(diagnostics_.begin(), diagnostics_.end(), std::back_inserter(kept),
               [](const Diagnostic& d) { return d.severity() == Severity::kError; });
  return LintReport(std::move(kept));
}

std::string format_diagnostic(const Diagnostic& d, std::string_view file_path) {
  std::string out;
  out.reserve(d.message.size() + file_path.size() + 48);
  out += d.code.str();
  out += ' ';
  out += d.message;
  out += "\nError location - ";
  out += file_path;
  out += ':';
  out += std::to_string(d.span.line);
  out += ':';
  out += std::to_string(d.span.column);
  return out;
}

std::string format_report(const LintReport& report, std::string_view file_path) {
  std::string out;
  for (const Diagnostic& d : report.diagnostics()) {
    if (!out.empty()) out += "\n\n";
    out += format_diagnostic(d, file_path);
  }
  return out;
}

std::pair<std::size_t, std::size_t> report_counts(const LintReport& report) {
  return {report.error_count(), report.warning_count()};
}

}  // namespace iacloop::lint
