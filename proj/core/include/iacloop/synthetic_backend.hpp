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

#ifndef IACLOOP_SYNTHETIC_BACKEND_HPP_
#define IACLOOP_SYNTHETIC_BACKEND_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iacloop/defects.hpp"
#include "iacloop/diagnostic.hpp"
#include "iacloop/gateway.hpp"
#include "iacloop/schema_store.hpp"
#include "iacloop/seed.hpp"

namespace iacloop::llm {

// Knobs of the degrading fixer. Probabilities are in [0, 1].
struct SyntheticParams {
  // Chance that a flagged, non-stubborn defect is repaired in one round.
  double p_fix = 0.55;
  // Chance that an executed repair injects one new defect.
  double p_spawn = 0.15;
  // Chance that an initial defect can never be repaired.
  double stubborn_fraction = 0.25;
  std::uint64_t seed = 0;
  // Initial defect count is drawn uniformly from [min, max].
  int initial_defects_min = 4;
  int initial_defects_max = 12;
  // Kinds used for initial and spawned defects.
  std::vector<DefectKind> kinds = all_defect_kinds();

  // Throws std::invalid_argument when out of range.
  void validate() const;
};

// The clean templates initial generations start from.
const std::vector<std::string_view>& base_templates();

// Offline stand-in for a model: the first call returns a base template with
// injected defects; every feedback call repairs some of the flagged defects
// and occasionally introduces new ones. Defects are real template edits and
// are detected by the real linter.
class SyntheticBackend : public Backend {
 public:
  SyntheticBackend(SyntheticParams params, const schema::SchemaStore& store);

  std::string complete(std::span<const ChatMessage> conversation,
                       const GenerationConfig& cfg) override;

  // A defective template for `prompt`. The base template is picked by a hash
  // of the prompt; the defects come from the seed. Replaces any prior state.
  std::string initial_generation(std::string_view prompt);

  // One repair round. `report` holds the diagnostics the model was shown.
  // Each flagged non-stubborn defect is repaired with probability p_fix, and
  // each repair spawns a defect with probability p_spawn at a uniformly
  // chosen eligible site. Returns the resulting template as JSON text.
  std::string synthetic_step(const json::LocatedNode& current, const lint::LintReport& report);

  const std::vector<LiveDefect>& live_defects() const { return live_; }
  const SyntheticParams& params() const { return params_; }

 private:
  bool spawn_defect(bool stubborn);
  std::set<std::string> occupied() const;

  SyntheticParams params_;
  const schema::SchemaStore& store_;
  Rng rng_;
  std::optional<MutableTemplate> base_;
  std::optional<MutableTemplate> current_;
  std::vector<LiveDefect> live_;
  std::uint64_t next_id_ = 0;
};

}  // namespace iacloop::llm

#endif  // IACLOOP_SYNTHETIC_BACKEND_HPP_
