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

#include "iacloop/synthetic_backend.hpp"

#include <algorithm>
#include <stdexcept>

#include "iacloop/linter.hpp"
#include "iacloop/prompt_format.hpp"

namespace iacloop::llm {

namespace {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fenced(const std::string& body) { return "```json\n" + body + "\n```"; }

bool in_unit_interval(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void SyntheticParams::validate() const {
  if (!in_unit_interval(p_fix) || !in_unit_interval(p_spawn) ||
      !in_unit_interval(stubborn_fraction)) {
    throw std::invalid_argument("synthetic probabilities must lie in [0, 1]");
  }
  if (initial_defects_min < 0 || initial_defects_max < initial_defects_min) {
    throw std::invalid_argument("synthetic initial defect range must satisfy 0 <= min <= max");
  }
  if (kinds.empty()) throw std::invalid_argument("synthetic backend needs at least one defect kind");
}

SyntheticBackend::SyntheticBackend(SyntheticParams params, const schema::SchemaStore& store)
    : params_(std::move(params)), store_(store), rng_(params_.seed) {
  params_.validate();
}

std::string SyntheticBackend::complete(std::span<const ChatMessage> conversation,
                                       const GenerationConfig&) {
  auto last_user = std::find_if(conversation.rbegin(), conversation.rend(),
                                [](const ChatMessage& m) { return m.role == Role::kUser; });
  if (last_user == conversation.rend()) {
    throw GatewayError("synthetic backend needs a user message");
  }
  const std::string_view content = last_user->content;
  if (content.substr(0, prompt::kFeedbackTemplateHeader.size()) != prompt::kFeedbackTemplateHeader) {
    return fenced(initial_generation(content));
  }
  if (!base_) throw GatewayError("synthetic backend received feedback before a generation");

  const std::size_t body = prompt::kFeedbackTemplateHeader.size();
  const std::size_t lint = content.find(prompt::kFeedbackLintHeader, body);
  if (lint == std::string_view::npos) throw GatewayError("malformed feedback message");
  const json::LocatedNode tree = json::parse_located(content.substr(body, lint - body));
  const std::string_view shown = content.substr(lint);

  // Only diagnostics that were actually fed back count as flagged.
  const lint::LintReport full = lint::lint_template(tree, store_);
  std::vector<lint::Diagnostic> flagged;
  for (const lint::Diagnostic& d : full.diagnostics()) {
    if (shown.find(lint::format_diagnostic(d, prompt::kFeedbackFileAlias)) !=
        std::string_view::npos) {
      flagged.push_back(d);
    }
  }
  return fenced(synthetic_step(tree, lint::LintReport(std::move(flagged))));
}

std::string SyntheticBackend::initial_generation(std::string_view prompt) {
  const auto& bases = base_templates();
  base_ = MutableTemplate::parse(bases[fnv1a(prompt) % bases.size()]);
  current_ = *base_;
  live_.clear();
  const auto span = static_cast<std::size_t>(params_.initial_defects_max - params_.initial_defects_min);
  const std::size_t count = static_cast<std::size_t>(params_.initial_defects_min) + rng_.below(span + 1);
  for (std::size_t i = 0; i < count; ++i) {
    const bool stubborn = rng_.bernoulli(params_.stubborn_fraction);
    if (!spawn_defect(stubborn)) break;
  }
  return current_->dump();
}

std::string SyntheticBackend::synthetic_step(const json::LocatedNode& current,
                                             const lint::LintReport& report) {
  if (!base_) throw GatewayError("synthetic_step called before initial_generation");
  current_ = MutableTemplate::parse(json::to_json_text(current));

  std::vector<LiveDefect> kept;
  std::size_t spawns = 0;
  for (const LiveDefect& defect : live_) {
    const auto& diags = report.diagnostics();
    const bool flagged = std::any_of(diags.begin(), diags.end(), [&](const lint::Diagnostic& d) {
      return defect_matches(defect.spec, d);
    });
    if (!flagged || defect.stubborn || !rng_.bernoulli(params_.p_fix)) {
      kept.push_back(defect);
      continue;
    }
    repair_defect(*current_, defect.spec, *base_);
    if (rng_.bernoulli(params_.p_spawn)) ++spawns;
  }
  live_ = std::move(kept);
  for (std::size_t i = 0; i < spawns; ++i) spawn_defect(false);
  return current_->dump();
}

std::set<std::string> SyntheticBackend::occupied() const {
  std::set<std::string> out;
  for (const LiveDefect& d : live_) out.insert(d.spec.target_pointer);
  return out;
}

bool SyntheticBackend::spawn_defect(bool stubborn) {
  const std::set<std::string> taken = occupied();
  std::vector<std::vector<DefectSpec>> candidates;
  for (DefectKind kind : params_.kinds) {
    auto sites = eligible_sites(*base_, *current_, kind, store_, taken);
    if (!sites.empty()) candidates.push_back(std::move(sites));
  }
  if (candidates.empty()) return false;
  const auto& sites = candidates[rng_.below(candidates.size())];
  const DefectSpec& spec = sites[rng_.below(sites.size())];
  inject_defect(*current_, spec, store_);
  live_.push_back(LiveDefect{next_id_++, spec, stubborn});
  return true;
}

}  // namespace iacloop::llm
