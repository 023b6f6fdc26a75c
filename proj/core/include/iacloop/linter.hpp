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

#ifndef IACLOOP_LINTER_HPP_
#define IACLOOP_LINTER_HPP_

#include <optional>
#include <string_view>
#include <vector>

#include "iacloop/diagnostic.hpp"
#include "iacloop/located_json.hpp"
#include "iacloop/schema_store.hpp"

namespace iacloop::lint {

struct LintOptions {
  // Also report E3002 when the store itself is not strict.
  bool strict_unknown_types = false;
};

struct RuleInfo {
  std::string_view code;
  std::string_view summary;
};

// Every rule lint_template applies, in code order.
const std::vector<RuleInfo>& rule_registry();

// Top-level keys accepted by E1001.
const std::vector<std::string_view>& template_sections();

// The intrinsic function an object stands for, if it is a single-key object
// keyed by one of Ref, Fn::GetAtt, Fn::GetAZs, Fn::Join, Fn::Sub, Fn::Select.
std::optional<std::string_view> intrinsic_name(const json::LocatedNode& node);

// Never throws; problems in the template become diagnostics.
LintReport lint_template(const json::LocatedNode& root, const schema::SchemaStore& store,
                         const LintOptions& options = {});

}  // namespace iacloop::lint

#endif  // IACLOOP_LINTER_HPP_
