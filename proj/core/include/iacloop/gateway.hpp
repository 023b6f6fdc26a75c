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

#ifndef IACLOOP_GATEWAY_HPP_
#define IACLOOP_GATEWAY_HPP_

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iacloop/located_json.hpp"

namespace iacloop::llm {

enum class Role { kSystem, kUser, kAssistant };

const char* role_name(Role role);

struct ChatMessage {
  Role role = Role::kUser;
  std::string content;  // never empty

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

using Conversation = std::vector<ChatMessage>;

struct GenerationConfig {
  std::string model = "gpt-4o";
  double temperature = 1.0;
  int max_retries = 3;
  double timeout_seconds = 120.0;
};

// Base of every failure a backend can raise. The feedback loop treats any
// GatewayError as a backend failure for the cell.
class GatewayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TransportError : public GatewayError {
 public:
  TransportError(const std::string& what, int status, std::string body_excerpt)
      : GatewayError(what), status_(status), body_excerpt_(std::move(body_excerpt)) {}
  // 0 when no HTTP response was received.
  int status() const { return status_; }
  const std::string& body_excerpt() const { return body_excerpt_; }

 private:
  int status_;
  std::string body_excerpt_;
};

class AuthError : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

class ScriptExhausted : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

// One text-generation provider. Instances are owned by a single loop at a
// time and are not thread safe.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string complete(std::span<const ChatMessage> conversation,
                               const GenerationConfig& cfg) = 0;
};

// Validates the conversation (non-empty, starts with a system message, no
// empty contents) and forwards to the backend. Throws std::invalid_argument
// on a malformed conversation.
std::string generate(std::span<const ChatMessage> conversation, const GenerationConfig& cfg,
                     Backend& backend);

class NoTemplateFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExtractedTemplate {
  json::LocatedNode root;
  std::string text;  // the exact substring that parsed
};

// Pulls a JSON template out of free-form model output. Fenced blocks are
// tried first in order, then the largest balanced {...} region, then the
// whole text. Throws NoTemplateFound if nothing parses.
ExtractedTemplate extract_template(std::string_view response_text);

// Reads the API token from IACLOOP_API_KEY, then OPENAI_API_KEY.
std::optional<std::string> api_key_from_environment();

}  // namespace iacloop::llm

#endif  // IACLOOP_GATEWAY_HPP_
