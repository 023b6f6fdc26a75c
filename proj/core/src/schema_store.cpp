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

#include "iacloop/schema_store.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "iacloop/located_json.hpp"

namespace iacloop::schema {

namespace fs = std::filesystem;
using json::LocatedNode;

const char* primitive_name(Primitive p) {
  switch (p) {
    case Primitive::kString:
      return "string";
    case Primitive::kInteger:
      return "integer";
    case Primitive::kNumber:
      return "number";
    case Primitive::kBoolean:
      return "boolean";
    case Primitive::kObject:
      return "object";
    case Primitive::kArray:
      return "array";
  }
  return "unknown";
}

std::optional<Primitive> parse_primitive(std::string_view name) {
  for (Primitive p : {Primitive::kString, Primitive::kInteger, Primitive::kNumber,
                      Primitive::kBoolean, Primitive::kObject, Primitive::kArray}) {
    if (name == primitive_name(p)) return p;
  }
  return std::nullopt;
}

const PropertySpec* ResourceSchema::property(std::string_view name) const {
  auto it = properties.find(std::string(name));
  return it == properties.end() ? nullptr : &it->second;
}

bool SchemaStore::add(ResourceSchema schema) {
  std::string key = schema.type_name;
  return schemas_.emplace(std::move(key), std::move(schema)).second;
}

const ResourceSchema* SchemaStore::lookup(std::string_view type_name) const {
  auto it = schemas_.find(type_name);
  return it == schemas_.end() ? nullptr : &it->second;
}

std::size_t LoadReport::error_count() const {
  return static_cast<std::size_t>(std::count_if(
      issues.begin(), issues.end(),
      [](const LoadIssue& i) { return i.severity == IssueSeverity::kError; }));
}

std::size_t LoadReport::warning_count() const { return issues.size() - error_count(); }

namespace {

bool is_segment(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
  });
}

bool valid_type_name(std::string_view name) {
  int segments = 0;
  while (true) {
    const auto sep = name.find("::");
    if (!is_segment(name.substr(0, sep))) return false;
    ++segments;
    if (sep == std::string_view::npos) break;
    name.remove_prefix(sep + 2);
  }
  return segments == 3;
}

std::string where(const LocatedNode& node) {
  return " (line " + std::to_string(node.span().line) + ", column " +
         std::to_string(node.span().column) + ")";
}

PropertySpec parse_property(const std::string& name, const LocatedNode& node,
                            std::vector<std::string>* warnings) {
  if (!node.is_object()) {
    throw SchemaFormatError("property '" + name + "' must be an object" + where(node), name);
  }
  PropertySpec spec;
  spec.name = name;
  const LocatedNode* type = node.find("type");
  if (type == nullptr) {
    throw SchemaFormatError("property '" + name + "' has no 'type'" + where(node), name);
  }
  if (!type->is_string()) {
    throw SchemaFormatError("property '" + name + "' type must be a string" + where(*type),
                            name);
  }
  auto primitive = parse_primitive(type->as_string());
  if (!primitive) {
    throw SchemaFormatError("property '" + name + "' has unknown type '" +
                                type->as_string() + "'" + where(*type),
                            name);
  }
  spec.primitive = *primitive;

  for (const json::Member& m : node.as_object()) {
    if (m.key == "type") continue;
    if (m.key == "enum") {
      if (spec.primitive != Primitive::kString) {
        throw SchemaFormatError("property '" + name + "' has 'enum' but is not a string" +
                                    where(m.value),
                                name);
      }
      if (!m.value.is_array()) {
        throw SchemaFormatError("property '" + name + "' enum must be an array" +
                                    where(m.value),
                                name);
      }
      std::vector<std::string> values;
      for (const LocatedNode& v : m.value.as_array()) {
        if (!v.is_string()) {
          throw SchemaFormatError(
              "property '" + name + "' enum values must be strings" + where(v), name);
        }
        values.push_back(v.as_string());
      }
      spec.enum_values = std::move(values);
    } else if (m.key == "items") {
      if (spec.primitive != Primitive::kArray) {
        throw SchemaFormatError("property '" + name + "' has 'items' but is not an array" +
                                    where(m.value),
                                name);
      }
      if (!m.value.is_object()) {
        throw SchemaFormatError("property '" + name + "' items must be an object" +
                                    where(m.value),
                                name);
      }
      for (const json::Member& im : m.value.as_object()) {
        if (im.key != "type") {
          if (warnings) {
            warnings->push_back("property '" + name + "' items: ignored keyword '" + im.key +
                                "'");
          }
          continue;
        }
        auto item = im.value.is_string() ? parse_primitive(im.value.as_string())
                                         : std::nullopt;
        if (!item) {
          throw SchemaFormatError(
              "property '" + name + "' has invalid items.type" + where(im.value), name);
        }
        spec.item_primitive = *item;
      }
    } else if (warnings) {
      warnings->push_back("property '" + name + "': ignored keyword '" + m.key + "'");
    }
  }
  return spec;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaIoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ResourceSchema parse_schema_document(std::string_view text, std::vector<std::string>* warnings) {
  LocatedNode root;
  try {
    root = json::parse_located(text);
  } catch (const json::JsonError& e) {
    throw SchemaFormatError(std::string("invalid JSON: ") + e.what(), "");
  }
  if (!root.is_object()) throw SchemaFormatError("schema document must be an object", "");

  ResourceSchema schema;
  const LocatedNode* type_name = root.find("typeName");
  if (type_name == nullptr || !type_name->is_string()) {
    throw SchemaFormatError("missing string 'typeName'", "");
  }
  if (!valid_type_name(type_name->as_string())) {
    throw SchemaFormatError("typeName '" + type_name->as_string() +
                                "' is not of the form Service::Provider::Resource" +
                                where(*type_name),
                            "");
  }
  schema.type_name = type_name->as_string();

  const LocatedNode* properties = root.find("properties");
  if (properties == nullptr || !properties->is_object()) {
    throw SchemaFormatError("missing object 'properties'", "");
  }
  for (const json::Member& m : properties->as_object()) {
    schema.properties.emplace(m.key, parse_property(m.key, m.value, warnings));
  }

  if (const LocatedNode* required = root.find("required")) {
    if (!required->is_array()) {
      throw SchemaFormatError("'required' must be an array" + where(*required), "");
    }
    for (const LocatedNode& r : required->as_array()) {
      if (!r.is_string()) {
        throw SchemaFormatError("'required' entries must be strings" + where(r), "");
      }
      auto it = schema.properties.find(r.as_string());
      if (it == schema.properties.end()) {
        throw SchemaFormatError(
            "required property '" + r.as_string() + "' is not declared" + where(r),
            r.as_string());
      }
      it->second.required = true;
    }
  }

  for (const json::Member& m : root.as_object()) {
    if (m.key != "typeName" && m.key != "properties" && m.key != "required" && warnings) {
      warnings->push_back("ignored keyword '" + m.key + "'");
    }
  }
  return schema;
}

std::string serialize_schema(const ResourceSchema& schema) {
  nlohmann::ordered_json doc;
  doc["typeName"] = schema.type_name;
  nlohmann::ordered_json props = nlohmann::ordered_json::object();
  nlohmann::ordered_json required = nlohmann::ordered_json::array();
  for (const auto& [name, spec] : schema.properties) {
    nlohmann::ordered_json p;
    p["type"] = primitive_name(spec.primitive);
    if (spec.enum_values) p["enum"] = *spec.enum_values;
    if (spec.item_primitive) p["items"] = {{"type", primitive_name(*spec.item_primitive)}};
    props[name] = std::move(p);
    if (spec.required) required.push_back(name);
  }
  doc["properties"] = std::move(props);
  doc["required"] = std::move(required);
  return doc.dump(2) + "\n";
}

std::string schema_file_name(std::string_view type_name) {
  std::string out;
  for (std::size_t i = 0; i < type_name.size(); ++i) {
    if (type_name.substr(i, 2) == "::") {
      out += '-';
      ++i;
      continue;
    }
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(type_name[i])));
  }
  return out + ".json";
}

LoadResult load_schema_dir(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw SchemaIoError("schema directory not readable: " + dir.string());
  }
  std::vector<fs::path> files;
  for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
    if (it->is_regular_file() && it->path().extension() == ".json") {
      files.push_back(it->path());
    }
  }
  if (ec) throw SchemaIoError("cannot list " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());

  LoadResult result;
  for (const fs::path& file : files) {
    const std::string name = file.filename().string();
    std::vector<std::string> warnings;
    try {
      ResourceSchema schema = parse_schema_document(read_file(file), &warnings);
      const std::string type = schema.type_name;
      if (!result.store.add(std::move(schema))) {
        result.report.issues.push_back(
            {IssueSeverity::kError, name, "", "duplicate schema for type '" + type + "'"});
        continue;
      }
    } catch (const SchemaFormatError& e) {
      result.report.issues.push_back({IssueSeverity::kError, name, e.property(), e.what()});
      continue;
    } catch (const SchemaIoError& e) {
      result.report.issues.push_back({IssueSeverity::kError, name, "", e.what()});
      continue;
    }
    for (std::string& w : warnings) {
      result.report.issues.push_back({IssueSeverity::kWarning, name, "", std::move(w)});
    }
  }
  return result;
}

void write_schema_dir(const SchemaStore& store, const fs::path& dir) {
  fs::create_directories(dir);
  for (const auto& [type, schema] : store.schemas()) {
    const fs::path path = dir / schema_file_name(type);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SchemaIoError("cannot write " + path.string());
    out << serialize_schema(schema);
  }
}

}  // namespace iacloop::schema
