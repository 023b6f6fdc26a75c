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

#include <charconv>
#include <string>
#include <vector>

#include "iacloop/located_json.hpp"

namespace iacloop::json {

namespace {

std::vector<std::string> split_pointer(std::string_view pointer) {
  std::vector<std::string> tokens;
  if (pointer.empty()) return tokens;
  if (pointer.front() != '/') {
    throw MalformedPointerError("JSON pointer must be empty or start with '/': " +
                                std::string(pointer));
  }
  std::string current;
  for (std::size_t i = 1; i <= pointer.size(); ++i) {
    if (i == pointer.size() || pointer[i] == '/') {
      tokens.push_back(std::move(current));
      current.clear();
      continue;
    }
    if (pointer[i] == '~') {
      if (i + 1 >= pointer.size() || (pointer[i + 1] != '0' && pointer[i + 1] != '1')) {
        throw MalformedPointerError("invalid '~' escape in JSON pointer: " +
                                    std::string(pointer));
      }
      current += pointer[i + 1] == '0' ? '~' : '/';
      ++i;
      continue;
    }
    current += pointer[i];
  }
  return tokens;
}

bool parse_index(const std::string& token, std::size_t& index) {
  if (token.empty() || (token.size() > 1 && token.front() == '0')) return false;
  for (char c : token) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), index);
  return ec == std::errc() && ptr == token.data() + token.size();
}

}  // namespace

const LocatedNode* node_at(const LocatedNode& root, std::string_view pointer) {
  const LocatedNode* node = &root;
  for (const std::string& token : split_pointer(pointer)) {
    if (node->is_object()) {
      node = node->find(token);
    } else if (node->is_array()) {
      std::size_t index = 0;
      if (!parse_index(token, index) || index >= node->as_array().size()) return nullptr;
      node = &node->as_array()[index];
    } else {
      return nullptr;
    }
    if (node == nullptr) return nullptr;
  }
  return node;
}

std::string escape_pointer_token(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  for (char c : token) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace iacloop::json
