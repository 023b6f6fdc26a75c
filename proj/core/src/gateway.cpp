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

#include <cstdlib>
#include <stdexcept>

#include "iacloop/gateway.hpp"

namespace iacloop::llm {

const char* role_name(Role role) {
  switch (role) {
    case Role::kSystem:
      return "system";
    case Role::kUser:
      return "user";
    case Role::kAssistant:
      return "assistant";
  }
  return "user";
}

std::string generate(std::span<const ChatMessage> conversation, const GenerationConfig& cfg,
                     Backend& backend) {
  if (conversation.empty()) throw std::invalid_argument("conversation must not be empty");
  if (conversation.front().role != Role::kSystem) {
    throw std::invalid_argument("conversation must start with a system message");
  }
  for (const ChatMessage& m : conversation) {
    if (m.content.empty()) throw std::invalid_argument("chat message content must not be empty");
  }
  if (cfg.temperature < 0) throw std::invalid_argument("temperature must be >= 0");
  return backend.complete(conversation, cfg);
}

std::optional<std::string> api_key_from_environment() {
  for (const char* name : {"IACLOOP_API_KEY", "OPENAI_API_KEY"}) {
    const char* value = std::getenv(name);
    if (value != nullptr && *value != '\0') return std::string(value);
  }
  return std::nullopt;
}

}  // namespace iacloop::llm
