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

#include "iacloop/linter.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

namespace iacloop::lint {

using json::Kind;
using json::LocatedNode;
using schema::Primitive;
using schema::PropertySpec;

const std::vector<RuleInfo>& rule_registry() {
  static const std::vector<RuleInfo> kRules = {
      {"E0001", "template root is not a JSON object"},
      {"E1001", "unknown top-level template section"},
      {"E1002", "missing or empty Resources section"},
      {"E1010", "intrinsic function yields the wrong type for a non-string property"},
      {"E1015", "Fn::GetAZs (a list) used where a string is required"},
      {"E3001", "resource is missing its Type"},
      {"E3002", "resource type not in the schema store (strict mode only)"},
      {"E3003", "required property missing from Properties"},
      {"E3012", "property value has the wrong JSON type"},
      {"E3030", "string property value is not one of the allowed values"},
      {"W1020", "AWSTemplateFormatVersion is not 2010-09-09"},
      {"W2001", "parameter is never referenced with Ref"},
  };
  return kRules;
}

const std::vector<std::string_view>& template_sections() {
  static const std::vector<std::string_view> kSections = {
      "AWSTemplateFormatVersion", "Description", "Metadata", "Parameters", "Mappings",
      "Conditions",               "Transform",   "Resources", "Outputs",
  };
  return kSections;
}

std::optional<std::string_view> intrinsic_name(const LocatedNode& node) {
  static constexpr std::string_view kIntrinsics[] = {
      "Ref", "Fn::GetAtt", "Fn::GetAZs", "Fn::Join", "Fn::Sub", "Fn::Select",
  };
  if (!node.is_object() || node.as_object().size() != 1) return std::nullopt;
  const std::string& key = node.as_object().front().key;
  for (std::string_view name : kIntrinsics) {
    if (key == name) return name;
  }
  return std::nullopt;
}

namespace {

constexpr std::string_view kSupportedFormatVersion = "2010-09-09";

// What an intrinsic evaluates to, as far as type checks care.
enum class Yield { kString, kNumber, kList, kUnknown };

class TemplateLinter {
 public:
  TemplateLinter(const LocatedNode& root, const schema::SchemaStore& store, bool strict)
      : root_(root), store_(store), strict_(strict) {}

  LintReport run() {
    if (!root_.is_object()) {
      emit("E0001", "Template must be a JSON object", root_, "");
      return LintReport(std::move(out_));
    }
    check_sections();
    check_format_version();
    collect_parameters();
    check_resources();
    check_unused_parameters();
    return LintReport(std::move(out_));
  }

 private:
  void emit(std::string_view code, std::string message, const LocatedNode& node,
            std::string pointer) {
    out_.push_back(Diagnostic{DiagCode(code), std::move(message), node.span(), std::move(pointer)});
  }

  static std::string child(const std::string& pointer, std::string_view token) {
    return pointer + "/" + json::escape_pointer_token(token);
  }

  static std::string type_message(const LocatedNode& node, std::string_view type) {
    return json::render_fragment(node) + " is not of type '" + std::string(type) + "'";
  }

  void check_sections() {
    const auto& allowed = template_sections();
    for (const json::Member& m : root_.as_object()) {
      if (std::find(allowed.begin(), allowed.end(), m.key) == allowed.end()) {
        emit("E1001", "Top level template section '" + m.key + "' is not valid", m.value,
             child("", m.key));
      }
    }
  }

  void check_format_version() {
    const LocatedNode* version = root_.find("AWSTemplateFormatVersion");
    if (version == nullptr) return;
    if (version->is_string() && version->as_string() == kSupportedFormatVersion) return;
    emit("W1020",
         "AWSTemplateFormatVersion " + json::render_fragment(*version) +
             " is not supported; expected '2010-09-09'",
         *version, "/AWSTemplateFormatVersion");
  }

  void collect_parameters() {
    const LocatedNode* params = root_.find("Parameters");
    if (params == nullptr || !params->is_object()) return;
    for (const json::Member& m : params->as_object()) {
      Yield yield = Yield::kString;
      if (const LocatedNode* type = m.value.find("Type"); type && type->is_string()) {
        const std::string& t = type->as_string();
        if (t == "Number") {
          yield = Yield::kNumber;
        } else if (t.rfind("List<", 0) == 0 || t == "CommaDelimitedList") {
          yield = Yield::kList;
        }
      }
      parameter_yields_.emplace(m.key, yield);
    }
  }

  void check_unused_parameters() {
    const LocatedNode* params = root_.find("Parameters");
    if (params == nullptr || !params->is_object()) return;
    std::set<std::string, std::less<>> referenced;
    collect_refs(root_, referenced);
    for (const json::Member& m : params->as_object()) {
      if (!referenced.contains(m.key)) {
        emit("W2001", "Parameter '" + m.key + "' is never used", m.value,
             child("/Parameters", m.key));
      }
    }
  }

  static void collect_refs(const LocatedNode& node, std::set<std::string, std::less<>>& out) {
    if (node.is_array()) {
      for (const LocatedNode& item : node.as_array()) collect_refs(item, out);
      return;
    }
    if (!node.is_object()) return;
    const json::Object& members = node.as_object();
    if (members.size() == 1 && members.front().key == "Ref" && members.front().value.is_string()) {
      out.insert(members.front().value.as_string());
    }
    for (const json::Member& m : members) collect_refs(m.value, out);
  }

  void check_resources() {
    const LocatedNode* resources = root_.find("Resources");
    if (resources == nullptr) {
      emit("E1002", "Missing top level template section 'Resources'", root_, "");
      return;
    }
    if (!resources->is_object() || resources->as_object().empty()) {
      emit("E1002", "Template section 'Resources' must be a non-empty object", *resources,
           "/Resources");
      return;
    }
    for (const json::Member& m : resources->as_object()) {
      check_resource(m.key, m.value, child("/Resources", m.key));
    }
  }

  void check_resource(const std::string& name, const LocatedNode& resource,
                      const std::string& pointer) {
    if (!resource.is_object()) {
      emit("E3012", type_message(resource, "object"), resource, pointer);
      return;
    }
    const LocatedNode* type = resource.find("Type");
    if (type == nullptr) {
      emit("E3001", "Resource '" + name + "' is missing required key 'Type'", resource, pointer);
      return;
    }
    if (!type->is_string()) {
      emit("E3012", type_message(*type, "string"), *type, pointer + "/Type");
      return;
    }
    const schema::ResourceSchema* schema = store_.lookup(type->as_string());
    if (schema == nullptr) {
      if (strict_) {
        emit("E3002", "Resource type '" + type->as_string() + "' does not exist", *type,
             pointer + "/Type");
      }
      return;
    }

    const LocatedNode* properties = resource.find("Properties");
    const std::string props_pointer = pointer + "/Properties";
    if (properties != nullptr && !properties->is_object()) {
      emit("E3012", type_message(*properties, "object"), *properties, props_pointer);
      return;
    }
    const LocatedNode& anchor = properties ? *properties : resource;
    const std::string& anchor_pointer = properties ? props_pointer : pointer;
    for (const auto& [prop_name, spec] : schema->properties) {
      if (spec.required && (properties == nullptr || properties->find(prop_name) == nullptr)) {
        emit("E3003", "'" + prop_name + "' is a required property", anchor, anchor_pointer);
      }
    }
    if (properties == nullptr) return;
    for (const json::Member& m : properties->as_object()) {
      if (const PropertySpec* spec = schema->property(m.key)) {
        check_property(*spec, m.value, child(props_pointer, m.key));
      }
    }
  }

  Yield yield_of(std::string_view intrinsic, const LocatedNode& node) const {
    if (intrinsic == "Fn::GetAZs") return Yield::kList;
    if (intrinsic == "Fn::GetAtt") return Yield::kUnknown;
    if (intrinsic == "Ref") {
      const LocatedNode& target = node.as_object().front().value;
      if (target.is_string()) {
        auto it = parameter_yields_.find(target.as_string());
        if (it != parameter_yields_.end()) return it->second;
      }
    }
    return Yield::kString;
  }

  static bool yield_matches(Yield yield, Primitive expected) {
    switch (yield) {
      case Yield::kUnknown:
        return true;
      case Yield::kString:
        return expected == Primitive::kString;
      case Yield::kNumber:
        return expected == Primitive::kNumber || expected == Primitive::kInteger;
      case Yield::kList:
        return expected == Primitive::kArray;
    }
    return true;
  }

  static bool json_type_matches(const LocatedNode& node, Primitive expected) {
    switch (expected) {
      case Primitive::kString:
        return node.is_string();
      case Primitive::kInteger:
        return node.is_number() && std::isfinite(node.as_number().value) &&
               std::trunc(node.as_number().value) == node.as_number().value;
      case Primitive::kNumber:
        return node.is_number();
      case Primitive::kBoolean:
        return node.is_bool();
      case Primitive::kObject:
        return node.is_object();
      case Primitive::kArray:
        return node.is_array();
    }
    return false;
  }

  // Checks one value against one primitive without descending into it.
  // Returns false when a diagnostic was emitted.
  bool check_value(Primitive expected, const LocatedNode& value, const std::string& pointer) {
    if (auto intrinsic = intrinsic_name(value)) {
      const Yield yield = yield_of(*intrinsic, value);
      if (expected == Primitive::kString) {
        if (*intrinsic == "Fn::GetAZs") {
          emit("E1015", type_message(value, "string"), value, pointer);
          return false;
        }
        return true;
      }
      if (!yield_matches(yield, expected)) {
        emit("E1010", type_message(value, schema::primitive_name(expected)), value, pointer);
        return false;
      }
      return true;
    }
    if (!json_type_matches(value, expected)) {
      emit("E3012", type_message(value, schema::primitive_name(expected)), value, pointer);
      return false;
    }
    return true;
  }

  void check_property(const PropertySpec& spec, const LocatedNode& value,
                      const std::string& pointer) {
    if (!check_value(spec.primitive, value, pointer)) return;
    if (spec.enum_values && value.is_string()) {
      const auto& allowed = *spec.enum_values;
      if (std::find(allowed.begin(), allowed.end(), value.as_string()) == allowed.end()) {
        std::string list = "[";
        for (std::size_t i = 0; i < allowed.size(); ++i) {
          if (i > 0) list += ", ";
          list += "'" + allowed[i] + "'";
        }
        list += "]";
        emit("E3030", json::render_fragment(value) + " is not one of " + list, value, pointer);
      }
    }
    if (spec.item_primitive && value.is_array()) {
      const json::Array& items = value.as_array();
      for (std::size_t i = 0; i < items.size(); ++i) {
        check_value(*spec.item_primitive, items[i], pointer + "/" + std::to_string(i));
      }
    }
  }

  const LocatedNode& root_;
  const schema::SchemaStore& store_;
  const bool strict_;
  std::map<std::string, Yield, std::less<>> parameter_yields_;
  std::vector<Diagnostic> out_;
};

}  // namespace

LintReport lint_template(const LocatedNode& root, const schema::SchemaStore& store,
                         const LintOptions& options) {
  return TemplateLinter(root, store, options.strict_unknown_types || store.strict_unknown_types())
      .run();
}

}  // namespace iacloop::lint
