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

#ifndef IACLOOP_DEFECTS_HPP_
#define IACLOOP_DEFECTS_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "iacloop/diagnostic.hpp"
#include "iacloop/schema_store.hpp"

namespace iacloop::llm {

// Editable template document with stable key order.
class MutableTemplate {
 public:
  // Throws json::JsonError on invalid input.
  static MutableTemplate parse(std::string_view text);

  MutableTemplate(const MutableTemplate& other);
  MutableTemplate& operator=(const MutableTemplate& other);
  MutableTemplate(MutableTemplate&&) noexcept;
  MutableTemplate& operator=(MutableTemplate&&) noexcept;
  ~MutableTemplate();

  // Two-space indented JSON.
  std::string dump() const;

  friend bool operator==(const MutableTemplate& a, const MutableTemplate& b);

  struct Impl;
  Impl& impl() { return *impl_; }
  const Impl& impl() const { return *impl_; }

 private:
  explicit MutableTemplate(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

enum class DefectKind {
  kDropRequired,
  kWrongType,
  kBadIntrinsicGetAZs,
  kUnknownTopKey,
  kUnusedParameter,
  kBadEnum,
};

const char* defect_kind_name(DefectKind kind);
std::optional<DefectKind> parse_defect_kind(std::string_view name);
const std::vector<DefectKind>& all_defect_kinds();

struct DefectSpec {
  DefectKind kind = DefectKind::kWrongType;
  std::string target_pointer;

  friend bool operator==(const DefectSpec&, const DefectSpec&) = default;
};

// A defect that is currently present in a template.
struct LiveDefect {
  std::uint64_t id = 0;
  DefectSpec spec;
  bool stubborn = false;
};

// Sites where `kind` can be injected into `current` without touching a
// pointer in `occupied`. Sites are derived from the clean `base` template:
// property sites are resource properties whose value holds no Ref, so a
// defect never hides a parameter reference.
std::vector<DefectSpec> eligible_sites(const MutableTemplate& base,
                                       const MutableTemplate& current, DefectKind kind,
                                       const schema::SchemaStore& store,
                                       const std::set<std::string>& occupied);

// Applies the defect. The spec must come from eligible_sites.
void inject_defect(MutableTemplate& current, const DefectSpec& spec,
                   const schema::SchemaStore& store);

// Restores the target from `base` (or removes it when base lacks it) and
// puts keys back in base order. Repairing every injected defect yields a
// document equal to `base`.
void repair_defect(MutableTemplate& current, const DefectSpec& spec, const MutableTemplate& base);

// True when `d` is the diagnostic the linter emits for this defect.
bool defect_matches(const DefectSpec& spec, const lint::Diagnostic& d);

}  // namespace iacloop::llm

#endif  // IACLOOP_DEFECTS_HPP_
