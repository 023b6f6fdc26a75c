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

#ifndef IACLOOP_BACKENDS_HPP_
#define IACLOOP_BACKENDS_HPP_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "iacloop/gateway.hpp"

namespace iacloop::llm {

// Replays a fixed list of responses, one per call.
class ScriptedBackend : public Backend {
 public:
  explicit ScriptedBackend(std::vector<std::string> script) : script_(std::move(script)) {}

  // Reads 000.txt, 001.txt, ... from `dir`, stopping at the first gap.
  // Throws std::runtime_error if the directory is unreadable or has no 000.txt.
  static ScriptedBackend from_directory(const std::filesystem::path& dir);

  std::string complete(std::span<const ChatMessage> conversation,
                       const GenerationConfig& cfg) override;

  std::size_t calls() const { return next_; }
  const std::vector<std::string>& script() const { return script_; }

 private:
  std::vector<std::string> script_;
  std::size_t next_ = 0;
};

struct HttpEndpoint {
  // scheme://host[:port][/prefix]; the request goes to <prefix>/v1/chat/completions.
  std::string base_url;
  std::string api_key;
  // First retry delay; doubles on each further retry.
  std::chrono::milliseconds initial_backoff{1000};
  // Injectable for tests; defaults to std::this_thread::sleep_for.
  std::function<void(std::chrono::milliseconds)> sleep;
};

struct ChatResult {
  std::string content;
  int retries = 0;
  std::vector<std::chrono::milliseconds> backoffs;
};

// POST <base>/v1/chat/completions with {model, messages, temperature} and
// returns choices[0].message.content. Retries 5xx responses and transport
// failures up to cfg.max_retries times. Throws AuthError on 401 and
// TransportError otherwise. The conversation is not modified.
ChatResult complete_chat_http(std::span<const ChatMessage> conversation,
                              const GenerationConfig& cfg, const HttpEndpoint& endpoint);

class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}

  std::string complete(std::span<const ChatMessage> conversation,
                       const GenerationConfig& cfg) override;

  int total_retries() const { return total_retries_; }

 private:
  HttpEndpoint endpoint_;
  int total_retries_ = 0;
};

}  // namespace iacloop::llm

#endif  // IACLOOP_BACKENDS_HPP_
