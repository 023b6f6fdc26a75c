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

#ifndef IACLOOP_LOCATED_JSON_HPP_
#define IACLOOP_LOCATED_JSON_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace iacloop::json {

// Position of the first character of a value or key. Lines and columns are
// 1-based; columns count UTF-8 code points, not bytes.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t byte_offset = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct Null {
  friend bool operator==(Null, Null) { return true; }
};

// Numbers keep their source spelling next to the parsed double.
struct Number {
  std::string text;
  double value = 0.0;

  friend bool operator==(const Number&, const Number&) = default;
};

class LocatedNode;
struct Member;

using Array = std::vector<LocatedNode>;
using Object = std::vector<Member>;

enum class Kind { kNull, kBool, kNumber, kString, kArray, kObject };

// A JSON value together with the source position of its first character.
// Object members keep document order.
class LocatedNode {
 public:
  using Value = std::variant<Null, bool, Number, std::string, Array, Object>;

  LocatedNode() = default;
  LocatedNode(Value value, SourceSpan span)
      : value_(std::move(value)), span_(span) {}

  Kind kind() const { return static_cast<Kind>(value_.index()); }
  const SourceSpan& span() const { return span_; }
  const Value& value() const { return value_; }

  bool is_null() const { return kind() == Kind::kNull; }
  bool is_bool() const { return kind() == Kind::kBool; }
  bool is_number() const { return kind() == Kind::kNumber; }
  bool is_string() const { return kind() == Kind::kString; }
  bool is_array() const { return kind() == Kind::kArray; }
  bool is_object() const { return kind() == Kind::kObject; }

  // Accessors throw std::bad_variant_access on a kind mismatch.
  bool as_bool() const { return std::get<bool>(value_); }
  const Number& as_number() const { return std::get<Number>(value_); }
  const std::string& as_string() const { return std::get<std::string>(value_); }
  const Array& as_array() const { return std::get<Array>(value_); }
  const Object& as_object() const { return std::get<Object>(value_); }

  // Object member lookup; nullptr when absent or not an object.
  const LocatedNode* find(std::string_view key) const;

 private:
  Value value_;
  SourceSpan span_;
};

struct Member {
  std::string key;
  SourceSpan key_span;
  LocatedNode value;
};

const char* kind_name(Kind kind);

class JsonError : public std::runtime_error {
 public:
  JsonError(const std::string& what, SourceSpan span)
      : std::runtime_error(what), span_(span) {}
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

// Malformed input; span is the first offending character.
class SyntaxError : public JsonError {
 public:
  using JsonError::JsonError;
};

// Second occurrence of a key within one object.
class DuplicateKeyError : public JsonError {
 public:
  DuplicateKeyError(const std::string& what, SourceSpan span, std::string key)
      : JsonError(what, span), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class MalformedPointerError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parses one complete JSON document. Leading and trailing whitespace is
// allowed; anything else after the value is a SyntaxError.
LocatedNode parse_located(std::string_view text);

// RFC 6901 lookup. Returns nullptr when any reference token does not resolve.
// Throws MalformedPointerError if the pointer itself is not well formed.
const LocatedNode* node_at(const LocatedNode& root, std::string_view pointer);

// Escapes one reference token for use in a pointer ("~" -> "~0", "/" -> "~1").
std::string escape_pointer_token(std::string_view token);

// Message-style rendering: single-quoted strings, True/False/None, insertion
// ordered objects. Used to embed offending fragments in diagnostics.
std::string render_fragment(const LocatedNode& node);

// Serializes back to JSON text. `indent` < 0 yields the compact form.
std::string to_json_text(const LocatedNode& node, int indent = -1);

// Shortest decimal string that round-trips to the same double.
std::string shortest_double(double value);

}  // namespace iacloop::json

#endif  // IACLOOP_LOCATED_JSON_HPP_
