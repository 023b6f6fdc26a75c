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

#ifndef IACLOOP_SCHEMA_STORE_HPP_
#define IACLOOP_SCHEMA_STORE_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace iacloop::schema {

enum class Primitive { kString, kInteger, kNumber, kBoolean, kObject, kArray };

const char* primitive_name(Primitive p);
std::optional<Primitive> parse_primitive(std::string_view name);

struct PropertySpec {
  std::string name;
  Primitive primitive = Primitive::kString;
  bool required = false;
  // Only for kString.
  std::optional<std::vector<std::string>> enum_values;
  // Only for kArray.
  std::optional<Primitive> item_primitive;

  friend bool operator==(const PropertySpec&, const PropertySpec&) = default;
};

struct ResourceSchema {
  std::string type_name;  // AWS::Service::Resource
  std::map<std::string, PropertySpec> properties;

  const PropertySpec* property(std::string_view name) const;

  friend bool operator==(const ResourceSchema&, const ResourceSchema&) = default;
};

class SchemaStore {
 public:
  SchemaStore() = default;

  // Returns false if a schema with the same type name already exists.
  bool add(ResourceSchema schema);

  // Case-sensitive exact match.
  const ResourceSchema* lookup(std::string_view type_name) const;

  std::size_t size() const { return schemas_.size(); }
  const std::map<std::string, ResourceSchema, std::less<>>& schemas() const {
    return schemas_;
  }

  bool strict_unknown_types() const { return strict_unknown_types_; }
  void set_strict_unknown_types(bool strict) { strict_unknown_types_ = strict; }

  friend bool operator==(const SchemaStore&, const SchemaStore&) = default;

 private:
  std::map<std::string, ResourceSchema, std::less<>> schemas_;
  bool strict_unknown_types_ = false;
};

enum class IssueSeverity { kError, kWarning };

// One entry of a load report. Errors mean the file was skipped; warnings
// flag ignored keywords.
struct LoadIssue {
  IssueSeverity severity = IssueSeverity::kError;
  std::string file;
  std::string property;  // empty when not tied to a property
  std::string message;
};

struct LoadReport {
  std::vector<LoadIssue> issues;

  std::size_t error_count() const;
  std::size_t warning_count() const;
};

struct LoadResult {
  SchemaStore store;
  LoadReport report;
};

class SchemaIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown by parse_schema_document; load_schema_dir turns it into a report
// entry instead.
class SchemaFormatError : public std::runtime_error {
 public:
  SchemaFormatError(const std::string& what, std::string property)
      : std::runtime_error(what), property_(std::move(property)) {}
  const std::string& property() const { return property_; }

 private:
  std::string property_;
};

// Parses one schema document (`typeName`, `properties`, `required`).
// Ignored keywords are appended to `warnings` when given.
ResourceSchema parse_schema_document(std::string_view text,
                                     std::vector<std::string>* warnings = nullptr);

// Inverse of parse_schema_document, pretty printed.
std::string serialize_schema(const ResourceSchema& schema);

// Loads every *.json file in `dir` (non-recursive, sorted by file name).
// Throws SchemaIoError if the directory cannot be read.
LoadResult load_schema_dir(const std::filesystem::path& dir);

// Writes one file per schema, named after the type (aws-ec2-instance.json).
void write_schema_dir(const SchemaStore& store, const std::filesystem::path& dir);

std::string schema_file_name(std::string_view type_name);

// Embedded subset covering the resource types used by the fixtures and the
// synthetic backend's base templates:
//   AWS::EC2::Instance, AWS::EC2::VPC, AWS::EC2::Subnet, AWS::S3::Bucket,
//   AWS::EC2::SecurityGroup, AWS::EC2::InternetGateway, AWS::EC2::VPCEndpoint,
//   AWS::EC2::RouteTable.
const SchemaStore& builtin_core_schemas();

// Raw JSON documents behind builtin_core_schemas(), in type-name order.
const std::vector<std::string_view>& builtin_schema_documents();

}  // namespace iacloop::schema

#endif  // IACLOOP_SCHEMA_STORE_HPP_
