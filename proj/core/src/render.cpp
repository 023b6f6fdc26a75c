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
#include <cmath>
#include <string>

#include "iacloop/located_json.hpp"

namespace iacloop::json {

namespace {

constexpr char kHex[] = "0123456789abcdef";

void render_quoted(std::string& out, const std::string& s) {
  out += '\'';
  for (char c : s) {
    const auto byte = static_cast<unsigned char>(c);
    switch (c) {
      case '\'':
        out += "\\'";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (byte < 0x20 || byte == 0x7F) {
          out += "\\x";
          out += kHex[byte >> 4];
          out += kHex[byte & 0xF];
        } else {
          out += c;
        }
    }
  }
  out += '\'';
}

// Float spelling of Python's repr: shortest round-trip digits, positional
// for exponents in [-4, 16), otherwise d.ddde+XX.
std::string float_repr(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  if (v == 0) return std::signbit(v) ? "-0.0" : "0.0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
  const std::string_view sci(buf, static_cast<std::size_t>(end - buf));
  const std::size_t e = sci.find('e');
  std::string digits;
  bool negative = false;
  for (char c : sci.substr(0, e)) {
    if (c == '-') {
      negative = true;
    } else if (c != '.') {
      digits += c;
    }
  }
  const int exp = std::stoi(std::string(sci.substr(e + 1)));

  std::string out = negative ? "-" : "";
  if (exp >= -4 && exp < 16) {
    if (exp >= 0) {
      const auto int_len = static_cast<std::size_t>(exp) + 1;
      if (digits.size() <= int_len) {
        out += digits + std::string(int_len - digits.size(), '0') + ".0";
      } else {
        out += digits.substr(0, int_len) + "." + digits.substr(int_len);
      }
    } else {
      out += "0." + std::string(static_cast<std::size_t>(-exp - 1), '0') + digits;
    }
    return out;
  }
  out += digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  out += exp < 0 ? "e-" : "e+";
  const std::string mag = std::to_string(exp < 0 ? -exp : exp);
  if (mag.size() < 2) out += '0';
  out += mag;
  return out;
}

// Integer literals print their digits; anything with a fraction or an
// exponent prints as a float.
void render_number(std::string& out, const Number& n) {
  if (n.text.find_first_of(".eE") == std::string::npos) {
    out += n.text == "-0" ? "0" : n.text;
  } else {
    out += float_repr(n.value);
  }
}

void render_into(std::string& out, const LocatedNode& node) {
  switch (node.kind()) {
    case Kind::kNull:
      out += "None";
      break;
    case Kind::kBool:
      out += node.as_bool() ? "True" : "False";
      break;
    case Kind::kNumber:
      render_number(out, node.as_number());
      break;
    case Kind::kString:
      render_quoted(out, node.as_string());
      break;
    case Kind::kArray: {
      out += '[';
      bool first = true;
      for (const LocatedNode& item : node.as_array()) {
        if (!first) out += ", ";
        first = false;
        render_into(out, item);
      }
      out += ']';
      break;
    }
    case Kind::kObject: {
      out += '{';
      bool first = true;
      for (const Member& m : node.as_object()) {
        if (!first) out += ", ";
        first = false;
        render_quoted(out, m.key);
        out += ": ";
        render_into(out, m.value);
      }
      out += '}';
      break;
    }
  }
}

void json_escape_into(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    const auto byte = static_cast<unsigned char>(c);
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\b':
        out += "\\b";
        break;
      case '\f':
        out += "\\f";
        break;
      default:
        if (byte < 0x20) {
          out += "\\u00";
          out += kHex[byte >> 4];
          out += kHex[byte & 0xF];
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void newline(std::string& out, int indent, int depth) {
  if (indent < 0) return;
  out += '\n';
  out.append(static_cast<std::size_t>(indent * depth), ' ');
}

void serialize_into(std::string& out, const LocatedNode& node, int indent, int depth) {
  switch (node.kind()) {
    case Kind::kNull:
      out += "null";
      break;
    case Kind::kBool:
      out += node.as_bool() ? "true" : "false";
      break;
    case Kind::kNumber:
      out += node.as_number().text;
      break;
    case Kind::kString:
      json_escape_into(out, node.as_string());
      break;
    case Kind::kArray: {
      const Array& items = node.as_array();
      out += '[';
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += ',';
        newline(out, indent, depth + 1);
        serialize_into(out, items[i], indent, depth + 1);
      }
      if (!items.empty()) newline(out, indent, depth);
      out += ']';
      break;
    }
    case Kind::kObject: {
      const Object& members = node.as_object();
      out += '{';
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (i > 0) out += ',';
        newline(out, indent, depth + 1);
        json_escape_into(out, members[i].key);
        out += indent < 0 ? ":" : ": ";
        serialize_into(out, members[i].value, indent, depth + 1);
      }
      if (!members.empty()) newline(out, indent, depth);
      out += '}';
      break;
    }
  }
}

}  // namespace

std::string shortest_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string render_fragment(const LocatedNode& node) {
  std::string out;
  render_into(out, node);
  return out;
}

std::string to_json_text(const LocatedNode& node, int indent) {
  std::string out;
  serialize_into(out, node, indent, 0);
  return out;
}

}  // namespace iacloop::json
