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

#include <cmath>
#include <nlohmann/json.hpp>
#include <thread>

#include "httplib.h"
#include "iacloop/backends.hpp"

namespace iacloop::llm {

namespace {

constexpr std::size_t kExcerptLength = 200;

struct ParsedBase {
  std::string scheme_host_port;
  std::string path_prefix;
};

ParsedBase parse_base_url(const std::string& base) {
  const auto scheme_end = base.find("://");
  if (scheme_end == std::string::npos) {
    throw TransportError("endpoint base URL must include a scheme: " + base, 0, "");
  }
  const auto path_start = base.find('/', scheme_end + 3);
  ParsedBase parsed;
  parsed.scheme_host_port = base.substr(0, path_start);
  if (path_start != std::string::npos) {
    parsed.path_prefix = base.substr(path_start);
    while (!parsed.path_prefix.empty() && parsed.path_prefix.back() == '/') {
      parsed.path_prefix.pop_back();
    }
  }
  return parsed;
}

std::string excerpt(const std::string& body) { return body.substr(0, kExcerptLength); }

std::string request_body(std::span<const ChatMessage> conversation, const GenerationConfig& cfg) {
  nlohmann::json messages = nlohmann::json::array();
  for (const ChatMessage& m : conversation) {
    messages.push_back({{"role", role_name(m.role)}, {"content", m.content}});
  }
  nlohmann::json body = {
      {"model", cfg.model},
      {"messages", std::move(messages)},
      {"temperature", cfg.temperature},
  };
  return body.dump();
}

std::string parse_completion(const std::string& body) {
  const auto doc = nlohmann::json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    throw TransportError("completion response is not valid JSON", 200, excerpt(body));
  }
  const auto missing = [&](const std::string& field) {
    return TransportError("completion response missing field '" + field + "'", 200,
                          excerpt(body));
  };
  if (!doc.is_object() || !doc.contains("choices")) throw missing("choices");
  const auto& choices = doc["choices"];
  if (!choices.is_array() || choices.empty()) throw missing("choices[0]");
  const auto& first = choices[0];
  if (!first.is_object() || !first.contains("message")) throw missing("choices[0].message");
  const auto& message = first["message"];
  if (!message.is_object() || !message.contains("content") || !message["content"].is_string()) {
    throw missing("choices[0].message.content");
  }
  return message["content"].get<std::string>();
}

}  // namespace

ChatResult complete_chat_http(std::span<const ChatMessage> conversation,
                              const GenerationConfig& cfg, const HttpEndpoint& endpoint) {
  if (endpoint.api_key.empty()) throw AuthError("no API key configured");
  const ParsedBase base = parse_base_url(endpoint.base_url);
  httplib::Client client(base.scheme_host_port);
  if (!client.is_valid()) {
    throw TransportError("cannot create HTTP client for " + endpoint.base_url, 0, "");
  }
  const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::duration<double>(cfg.timeout_seconds));
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  const std::string path = base.path_prefix + "/v1/chat/completions";
  const std::string body = request_body(conversation, cfg);
  const httplib::Headers headers = {{"Authorization", "Bearer " + endpoint.api_key}};
  const auto sleep = endpoint.sleep ? endpoint.sleep : [](std::chrono::milliseconds d) {
    std::this_thread::sleep_for(d);
  };

  ChatResult result;
  for (int attempt = 0;; ++attempt) {
    auto response = client.Post(path, headers, body, "application/json");
    std::string failure;
    int status = 0;
    std::string response_excerpt;
    if (!response) {
      failure = "HTTP request failed: " + httplib::to_string(response.error());
    } else {
      status = response->status;
      if (status == 401) throw AuthError("endpoint rejected the API key (401)");
      if (status >= 200 && status < 300) {
        result.content = parse_completion(response->body);
        return result;
      }
      response_excerpt = excerpt(response->body);
      failure = "HTTP status " + std::to_string(status);
      if (status < 500) throw TransportError(failure, status, response_excerpt);
    }
    if (attempt >= cfg.max_retries) {
      throw TransportError(failure + " after " + std::to_string(attempt) + " retries", status,
                           response_excerpt);
    }
    const auto delay = endpoint.initial_backoff * (1LL << std::min(attempt, 20));
    result.backoffs.push_back(std::chrono::duration_cast<std::chrono::milliseconds>(delay));
    ++result.retries;
    sleep(result.backoffs.back());
  }
}

std::string HttpBackend::complete(std::span<const ChatMessage> conversation,
                                  const GenerationConfig& cfg) {
  ChatResult result = complete_chat_http(conversation, cfg, endpoint_);
  total_retries_ += result.retries;
  return std::move(result.content);
}

}  // namespace iacloop::llm
