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

#include "iacloop/located_json.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <system_error>
#include <utility>

namespace iacloop::json {

const LocatedNode* LocatedNode::find(std::string_view key) const {
  if (!is_object()) return nullptr;
  for (const Member& m : as_object()) {
    if (m.key == key) return &m.value;
  }
  return nullptr;
}

const char* kind_name(Kind kind) {
  switch (kind) {
    case Kind::kNull:
      return "null";
    case Kind::kBool:
      return "boolean";
    case Kind::kNumber:
      return "number";
    case Kind::kString:
      return "string";
    case Kind::kArray:
      return "array";
    case Kind::kObject:
      return "object";
  }
  return "unknown";
}

namespace {

constexpr int kMaxDepth = 512;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  LocatedNode parse_document() {
    skip_whitespace();
    LocatedNode root = parse_value(0);
    skip_whitespace();
    if (!at_end()) fail("unexpected trailing content after JSON value");
    return root;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  SourceSpan here() const { return SourceSpan{line_, column_, pos_}; }

  [[noreturn]] void fail(const std::string& message) const { fail_at(here(), message); }

  [[noreturn]] static void fail_at(SourceSpan span, const std::string& message) {
    throw SyntaxError("line " + std::to_string(span.line) + ", column " +
                          std::to_string(span.column) + ": " + message,
                      span);
  }

  // Every byte of input goes through here so line/column stay in sync.
  void advance() {
    const auto byte = static_cast<unsigned char>(text_[pos_]);
    ++pos_;
    if (byte == '\n') {
      ++line_;
      column_ = 1;
    } else if ((byte & 0xC0) != 0x80) {
      // Continuation bytes share their lead byte's column.
      ++column_;
    }
  }

  void skip_whitespace() {
    while (!at_end()) {
      const char c = peek();
      if (c != ' ' && c != '\t' && c != '\n' && c != '\r') break;
      advance();
    }
  }

  void expect(char c, const char* context) {
    if (at_end() || peek() != c) {
      fail(std::string("expected '") + c + "' " + context);
    }
    advance();
  }

  LocatedNode parse_value(int depth) {
    if (at_end()) fail("unexpected end of input while parsing value");
    const SourceSpan start = here();
    switch (peek()) {
      case '{':
        return parse_object(depth, start);
      case '[':
        return parse_array(depth, start);
      case '"':
        return LocatedNode(parse_string(), start);
      case 't':
        parse_literal("true");
        return LocatedNode(true, start);
      case 'f':
        parse_literal("false");
        return LocatedNode(false, start);
      case 'n':
        parse_literal("null");
        return LocatedNode(Null{}, start);
      default:
        if (peek() == '-' || (peek() >= '0' && peek() <= '9')) {
          return LocatedNode(parse_number(), start);
        }
        fail(std::string("unexpected character '") + printable(peek()) + "'");
    }
  }

  static std::string printable(char c) {
    const auto byte = static_cast<unsigned char>(c);
    if (byte >= 0x20 && byte < 0x7F) return std::string(1, c);
    static constexpr char kHex[] = "0123456789abcdef";
    return std::string("\\x") + kHex[byte >> 4] + kHex[byte & 0xF];
  }

  void parse_literal(std::string_view word) {
    for (char c : word) {
      if (at_end() || peek() != c) fail("invalid literal");
      advance();
    }
  }

  LocatedNode parse_object(int depth, SourceSpan start) {
    if (depth >= kMaxDepth) fail("nesting too deep");
    advance();  // '{'
    Object members;
    skip_whitespace();
    if (!at_end() && peek() == '}') {
      advance();
      return LocatedNode(std::move(members), start);
    }
    while (true) {
      skip_whitespace();
      if (at_end() || peek() != '"') fail("expected string key in object");
      const SourceSpan key_span = here();
      std::string key = parse_string();
      for (const Member& m : members) {
        if (m.key == key) {
          throw DuplicateKeyError("line " + std::to_string(key_span.line) + ", column " +
                                      std::to_string(key_span.column) +
                                      ": duplicate key '" + key + "'",
                                  key_span, key);
        }
      }
      skip_whitespace();
      expect(':', "after object key");
      skip_whitespace();
      LocatedNode value = parse_value(depth + 1);
      members.push_back(Member{std::move(key), key_span, std::move(value)});
      skip_whitespace();
      if (at_end()) fail("unexpected end of input inside object");
      if (peek() == ',') {
        advance();
        continue;
      }
      if (peek() == '}') {
        advance();
        break;
      }
      fail("expected ',' or '}' after object member");
    }
    return LocatedNode(std::move(members), start);
  }

  LocatedNode parse_array(int depth, SourceSpan start) {
    if (depth >= kMaxDepth) fail("nesting too deep");
    advance();  // '['
    Array items;
    skip_whitespace();
    if (!at_end() && peek() == ']') {
      advance();
      return LocatedNode(std::move(items), start);
    }
    while (true) {
      skip_whitespace();
      items.push_back(parse_value(depth + 1));
      skip_whitespace();
      if (at_end()) fail("unexpected end of input inside array");
      if (peek() == ',') {
        advance();
        continue;
      }
      if (peek() == ']') {
        advance();
        break;
      }
      fail("expected ',' or ']' after array element");
    }
    return LocatedNode(std::move(items), start);
  }

  Number parse_number() {
    const std::size_t begin = pos_;
    if (peek() == '-') advance();
    if (at_end()) fail("expected digit");
    if (peek() == '0') {
      advance();
    } else if (peek() >= '1' && peek() <= '9') {
      while (!at_end() && is_digit(peek())) advance();
    } else {
      fail("expected digit");
    }
    if (!at_end() && peek() == '.') {
      advance();
      if (at_end() || !is_digit(peek())) fail("expected digit after decimal point");
      while (!at_end() && is_digit(peek())) advance();
    }
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      advance();
      if (!at_end() && (peek() == '+' || peek() == '-')) advance();
      if (at_end() || !is_digit(peek())) fail("expected digit in exponent");
      while (!at_end() && is_digit(peek())) advance();
    }
    Number number;
    number.text = std::string(text_.substr(begin, pos_ - begin));
    const char* first = number.text.data();
    const char* last = first + number.text.size();
    auto [ptr, ec] = std::from_chars(first, last, number.value);
    if (ec == std::errc::result_out_of_range) {
      // Saturate like strtod: overflow to infinity, underflow to zero.
      const bool negative = number.text.front() == '-';
      const auto e = number.text.find_first_of("eE");
      const bool tiny = e != std::string::npos && number.text[e + 1] == '-';
      number.value = tiny ? (negative ? -0.0 : 0.0)
                          : (negative ? -std::numeric_limits<double>::infinity()
                                      : std::numeric_limits<double>::infinity());
    } else if (ec != std::errc() || ptr != last) {
      fail("invalid number");
    }
    return number;
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  unsigned parse_hex4() {
    unsigned cp = 0;
    for (int i = 0; i < 4; ++i) {
      if (at_end()) fail("unexpected end of input in \\u escape");
      const char c = peek();
      cp <<= 4;
      if (c >= '0' && c <= '9') {
        cp |= static_cast<unsigned>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        cp |= static_cast<unsigned>(c - 'a' + 10);
      } else if (c >= 'A' && c <= 'F') {
        cp |= static_cast<unsigned>(c - 'A' + 10);
      } else {
        fail("invalid hex digit in \\u escape");
      }
      advance();
    }
    return cp;
  }

  static void append_utf8(std::string& out, unsigned cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  // Copies one raw UTF-8 sequence, rejecting overlongs, surrogates and
  // code points past U+10FFFF.
  void copy_utf8_sequence(std::string& out) {
    const auto lead = static_cast<unsigned char>(peek());
    int extra = 0;
    unsigned cp = 0;
    if (lead >= 0xC2 && lead <= 0xDF) {
      extra = 1;
      cp = lead & 0x1F;
    } else if (lead >= 0xE0 && lead <= 0xEF) {
      extra = 2;
      cp = lead & 0x0F;
    } else if (lead >= 0xF0 && lead <= 0xF4) {
      extra = 3;
      cp = lead & 0x07;
    } else {
      fail("invalid UTF-8 byte in string");
    }
    const SourceSpan start = here();
    out += static_cast<char>(lead);
    advance();
    for (int i = 0; i < extra; ++i) {
      if (at_end()) fail_at(start, "truncated UTF-8 sequence in string");
      const auto byte = static_cast<unsigned char>(peek());
      if ((byte & 0xC0) != 0x80) fail_at(start, "invalid UTF-8 sequence in string");
      cp = (cp << 6) | (byte & 0x3F);
      out += static_cast<char>(byte);
      advance();
    }
    const bool overlong = (extra == 2 && cp < 0x800) || (extra == 3 && cp < 0x10000);
    if (overlong || (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
      fail_at(start, "invalid UTF-8 sequence in string");
    }
  }

  std::string parse_string() {
    advance();  // opening quote
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated string");
      const char c = peek();
      const auto byte = static_cast<unsigned char>(c);
      if (c == '"') {
        advance();
        return out;
      }
      if (byte < 0x20) fail("control character in string");
      if (byte >= 0x80) {
        copy_utf8_sequence(out);
        continue;
      }
      if (c != '\\') {
        out += c;
        advance();
        continue;
      }
      const SourceSpan escape_start = here();
      advance();
      if (at_end()) fail("unterminated escape sequence");
      const char e = peek();
      advance();
      switch (e) {
        case '"':
          out += '"';
          break;
        case '\\':
          out += '\\';
          break;
        case '/':
          out += '/';
          break;
        case 'b':
          out += '\b';
          break;
        case 'f':
          out += '\f';
          break;
        case 'n':
          out += '\n';
          break;
        case 'r':
          out += '\r';
          break;
        case 't':
          out += '\t';
          break;
        case 'u': {
          unsigned cp = parse_hex4();
          if (cp >= 0xD800 && cp <= 0xDBFF) {
            if (pos_ + 1 >= text_.size() || text_[pos_] != '\\' || text_[pos_ + 1] != 'u') {
              fail_at(escape_start, "unpaired high surrogate");
            }
            advance();
            advance();
            const unsigned low = parse_hex4();
            if (low < 0xDC00 || low > 0xDFFF) fail_at(escape_start, "invalid low surrogate");
            cp = 0x10000 + ((cp - 0xD800) << 10) + (low - 0xDC00);
          } else if (cp >= 0xDC00 && cp <= 0xDFFF) {
            fail_at(escape_start, "unpaired low surrogate");
          }
          append_utf8(out, cp);
          break;
        }
        default:
          fail_at(escape_start, "invalid escape sequence");
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace

LocatedNode parse_located(std::string_view text) { return Parser(text).parse_document(); }

}  // namespace iacloop::json
