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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "iacloop/backends.hpp"

namespace iacloop::llm {

ScriptedBackend ScriptedBackend::from_directory(const std::filesystem::path& dir) {
  std::vector<std::string> script;
  for (std::size_t i = 0;; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "%03zu.txt", i);
    std::ifstream in(dir / name, std::ios::binary);
    if (!in) break;
    std::ostringstream ss;
    ss << in.rdbuf();
    script.push_back(ss.str());
  }
  if (script.empty()) {
    throw std::runtime_error("no scripted responses (000.txt) in " + dir.string());
  }
  return ScriptedBackend(std::move(script));
}

std::string ScriptedBackend::complete(std::span<const ChatMessage>, const GenerationConfig&) {
  if (next_ >= script_.size()) {
    throw ScriptExhausted("scripted backend exhausted after " + std::to_string(script_.size()) +
                          " responses");
  }
  return script_[next_++];
}

}  // namespace iacloop::llm
