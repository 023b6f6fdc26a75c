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

#include <optional>
#include <vector>

#include "iacloop/gateway.hpp"

namespace iacloop::llm {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::optional<ExtractedTemplate> try_parse(std::string_view candidate) {
  candidate = trim(candidate);
  if (candidate.empty()) return std::nullopt;
  try {
    return ExtractedTemplate{json::parse_located(candidate), std::string(candidate)};
  } catch (const json::JsonError&) {
    return std::nullopt;
  }
}

// Bodies of ``` fenced blocks, in order. The info string after the opening
// fence (e.g. "json") is skipped.
std::vector<std::string_view> fenced_blocks(std::string_view text) {
  std::vector<std::string_view> blocks;
  std::size_t pos = 0;
  while (true) {
    const std::size_t open = text.find("```", pos);
    if (open == std::string_view::npos) break;
    std::size_t body = text.find('\n', open + 3);
    if (body == std::string_view::npos) break;
    ++body;
    const std::size_t close = text.find("```", body);
    if (close == std::string_view::npos) break;
    blocks.push_back(text.substr(body, close - body));
    pos = close + 3;
  }
  return blocks;
}

// Longest region from a '{' to its matching '}', skipping braces inside
// string literals.
std::optional<std::string_view> largest_brace_region(std::string_view text) {
  std::optional<std::string_view> best;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '{') {
      ++i;
      continue;
    }
    int depth = 0;
    bool in_string = false;
    std::size_t end = std::string_view::npos;
    for (std::size_t j = i; j < text.size(); ++j) {
      const char c = text[j];
      if (in_string) {
        if (c == '\\') {
          ++j;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}' && --depth == 0) {
        end = j;
        break;
      }
    }
    if (end == std::string_view::npos) {
      ++i;
      continue;
    }
    const std::string_view region = text.substr(i, end - i + 1);
    if (!best || region.size() > best->size()) best = region;
    // Regions nested inside this one are shorter; skip past it.
    i = end + 1;
  }
  return best;
}

}  // namespace

ExtractedTemplate extract_template(std::string_view response_text) {
  const auto blocks = fenced_blocks(response_text);
  for (std::string_view block : blocks) {
    if (auto parsed = try_parse(block)) return std::move(*parsed);
  }
  if (auto region = largest_brace_region(response_text)) {
    if (auto parsed = try_parse(*region)) return std::move(*parsed);
  }
  if (auto parsed = try_parse(response_text)) return std::move(*parsed);
  throw NoTemplateFound("no JSON template found in model response");
}

}  // namespace iacloop::llm
