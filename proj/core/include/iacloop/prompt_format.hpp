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

#ifndef IACLOOP_PROMPT_FORMAT_HPP_
#define IACLOOP_PROMPT_FORMAT_HPP_

#include <string_view>

// Fixed prompt strings shared by the feedback loop (which writes them) and
// the synthetic backend (which reads them back).
namespace iacloop::prompt {

inline constexpr std::string_view kSystemPrompt =
    "You are an expert AWS CloudFormation engineer. Respond with a single JSON "
    "CloudFormation template and no other text.";

inline constexpr std::string_view kFeedbackTemplateHeader = "Here is a CloudFormation template:\n";
inline constexpr std::string_view kFeedbackLintHeader = "\nRunning cfn-lint produced:\n";
inline constexpr std::string_view kFeedbackInstruction =
    "\nModify the template to fix these problems. Respond with only the corrected JSON "
    "template.";

// File name shown in fed-back diagnostics, independent of host paths.
inline constexpr std::string_view kFeedbackFileAlias = "template.json";

}  // namespace iacloop::prompt

#endif  // IACLOOP_PROMPT_FORMAT_HPP_
