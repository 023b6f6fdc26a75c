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

#ifndef IACLOOP_DIAGNOSTIC_HPP_
#define IACLOOP_DIAGNOSTIC_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iacloop/located_json.hpp"

namespace iacloop::lint {

enum class Severity { kError, kWarning };

const char* severity_name(Severity s);

// A letter and four digits. The letter fixes the severity: E is an error,
// W a warning.
class DiagCode {
 public:
  // Throws std::invalid_argument unless `code` matches ^[EW][0-9]{4}$.
  explicit DiagCode(std::string_view code);

  const std::string& str() const { return code_; }
  Severity severity() const { return code_[0] == 'E' ? Severity::kError : Severity::kWarning; }

  static bool is_valid(std::string_view code);

  friend bool operator==(const DiagCode&, const DiagCode&) = default;
  friend auto operator<=>(const DiagCode&, const DiagCode&) = default;

 private:
  std::string code_;
};

struct Diagnostic {
  DiagCode code;
  std::string message;
  json::SourceSpan span;
  std::string pointer;  // RFC 6901 pointer to the offending node

  Severity severity() const { return code.severity(); }

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// Diagnostics ordered by (byte offset, code); counts partition them by
// severity. An empty report means the template is schematically valid.
class LintReport {
 public:
  LintReport() = default;
  explicit LintReport(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
  std::size_t error_count() const { return error_count_; }
  std::size_t warning_count() const { return warning_count_; }
  bool empty() const { return diagnostics_.empty(); }

  // Errors only, or everything, preserving order.
  LintReport filtered(bool include_warnings) const;

  friend bool operator==(const LintReport&, const LintReport&) = default;

 private:
  std::vector<Diagnostic> diagnostics_;
  std::size_t error_count_ = 0;
  std::size_t warning_count_ = 0;
};

// Two lines, no trailing newline:
//   E1015 {'Fn::GetAZs': ''} is not of type 'string'
//   Error location - path/to/my_iac.json:1:4575
std::string format_diagnostic(const Diagnostic& d, std::string_view file_path);

// format_diagnostic for each entry, separated by one blank line.
std::string format_report(const LintReport& report, std::string_view file_path);

std::pair<std::size_t, std::size_t> report_counts(const LintReport& report);

}  // namespace iacloop::lint

#endif  // IACLOOP_DIAGNOSTIC_HPP_
