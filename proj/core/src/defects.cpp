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

#include "iacloop/defects.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

#include "iacloop/located_json.hpp"

namespace iacloop::llm {

using Doc = nlohmann::ordered_json;
using Pointer = Doc::json_pointer;

struct MutableTemplate::Impl {
  Doc doc;
};

namespace {

Doc to_doc(const json::LocatedNode& node) {
  switch (node.kind()) {
    case json::Kind::kNull:
      return nullptr;
    case json::Kind::kBool:
      return node.as_bool();
    case json::Kind::kNumber: {
      // Preserve integers exactly; everything else goes through the double.
      const json::Number& n = node.as_number();
      if (n.text.find_first_of(".eE") == std::string::npos) {
        try {
          if (n.text.front() == '-') return std::stoll(n.text);
          return std::stoull(n.text);
        } catch (const std::out_of_range&) {
        }
      }
      return n.value;
    }
    case json::Kind::kString:
      return node.as_string();
    case json::Kind::kArray: {
      Doc out = Doc::array();
      for (const json::LocatedNode& item : node.as_array()) out.push_back(to_doc(item));
      return out;
    }
    case json::Kind::kObject: {
      Doc out = Doc::object();
      for (const json::Member& m : node.as_object()) out[m.key] = to_doc(m.value);
      return out;
    }
  }
  return nullptr;
}

bool contains_ref(const Doc& value) {
  if (value.is_object()) {
    for (const auto& [key, child] : value.items()) {
      if (key == "Ref" || contains_ref(child)) return true;
    }
  } else if (value.is_array()) {
    for (const auto& child : value) {
      if (contains_ref(child)) return true;
    }
  }
  return false;
}

std::string join(std::string_view parent, std::string_view token) {
  return std::string(parent) + "/" + json::escape_pointer_token(token);
}

std::string parent_of(const std::string& pointer) {
  return pointer.substr(0, pointer.rfind('/'));
}

std::string last_token(const std::string& pointer) {
  return Pointer(pointer).back();
}

bool has(const Doc& doc, const std::string& pointer) { return doc.contains(Pointer(pointer)); }

constexpr std::string_view kTopKeyTypos[] = {
    "Resource",   "Output",    "Outputz",    "Parameter", "Params",     "Mapping",
    "Condition",  "Conditons", "Metdata",    "Descripton", "Transforms", "Resorces",
    "Ouputs",     "Paramters", "Mapings",    "Metadatas",
};

constexpr std::string_view kUnusedParameterNames[] = {
    "EnvironmentName", "KeyPairName",  "InstanceSize",  "ProjectTag",
    "OwnerEmail",      "LogRetention", "AlarmEmail",    "CostCenter",
    "DeployStage",     "BackupWindow", "DomainName",    "RetentionDays",
};

const char* wrong_type_note(schema::Primitive p) {
  switch (p) {
    case schema::Primitive::kString:
      return nullptr;  // replaced by a number below
    case schema::Primitive::kInteger:
    case schema::Primitive::kNumber:
      return "not-a-number";
    case schema::Primitive::kBoolean:
      return "yes";
    case schema::Primitive::kObject:
    case schema::Primitive::kArray:
      return "invalid";
  }
  return "invalid";
}

struct PropertySite {
  std::string pointer;
  const schema::PropertySpec* spec;
};

std::vector<PropertySite> property_sites(const Doc& base, const schema::SchemaStore& store) {
  std::vector<PropertySite> sites;
  if (!base.is_object() || !base.contains("Resources") || !base["Resources"].is_object()) {
    return sites;
  }
  for (const auto& [name, resource] : base["Resources"].items()) {
    if (!resource.is_object() || !resource.contains("Type") || !resource["Type"].is_string()) {
      continue;
    }
    const schema::ResourceSchema* schema = store.lookup(resource["Type"].get<std::string>());
    if (schema == nullptr || !resource.contains("Properties") ||
        !resource["Properties"].is_object()) {
      continue;
    }
    const std::string props = join(join("/Resources", name), "Properties");
    for (const auto& [prop, value] : resource["Properties"].items()) {
      const schema::PropertySpec* spec = schema->property(prop);
      if (spec == nullptr || contains_ref(value)) continue;
      sites.push_back({join(props, prop), spec});
    }
  }
  return sites;
}

const schema::PropertySpec* spec_for(const Doc& doc, const std::string& pointer,
                                     const schema::SchemaStore& store) {
  // pointer is /Resources/<name>/Properties/<prop>
  const Pointer resource_ptr = Pointer(pointer).parent_pointer().parent_pointer();
  const Doc& resource = doc.at(resource_ptr);
  const schema::ResourceSchema* schema = store.lookup(resource.at("Type").get<std::string>());
  if (schema == nullptr) throw std::logic_error("defect site on unknown resource type");
  return schema->property(last_token(pointer));
}

void reorder_like(Doc& target, const Doc& reference) {
  if (!target.is_object() || !reference.is_object()) return;
  Doc ordered = Doc::object();
  for (const auto& [key, _] : reference.items()) {
    if (target.contains(key)) ordered[key] = std::move(target[key]);
  }
  for (auto& [key, value] : target.items()) {
    if (!ordered.contains(key)) ordered[key] = std::move(value);
  }
  target = std::move(ordered);
}

}  // namespace

MutableTemplate::MutableTemplate(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
MutableTemplate::MutableTemplate(const MutableTemplate& other)
    : impl_(std::make_unique<Impl>(*other.impl_)) {}
MutableTemplate& MutableTemplate::operator=(const MutableTemplate& other) {
  if (this != &other) impl_ = std::make_unique<Impl>(*other.impl_);
  return *this;
}
MutableTemplate::MutableTemplate(MutableTemplate&&) noexcept = default;
MutableTemplate& MutableTemplate::operator=(MutableTemplate&&) noexcept = default;
MutableTemplate::~MutableTemplate() = default;

MutableTemplate MutableTemplate::parse(std::string_view text) {
  auto impl = std::make_unique<Impl>();
  impl->doc = to_doc(json::parse_located(text));
  return MutableTemplate(std::move(impl));
}

std::string MutableTemplate::dump() const { return impl_->doc.dump(2); }

bool operator==(const MutableTemplate& a, const MutableTemplate& b) {
  // ordered_json equality ignores key order; compare the serialized form.
  return a.impl_->doc.dump() == b.impl_->doc.dump();
}

const char* defect_kind_name(DefectKind kind) {
  switch (kind) {
    case DefectKind::kDropRequired:
      return "drop_required";
    case DefectKind::kWrongType:
      return "wrong_type";
    case DefectKind::kBadIntrinsicGetAZs:
      return "bad_intrinsic_getazs";
    case DefectKind::kUnknownTopKey:
      return "unknown_top_key";
    case DefectKind::kUnusedParameter:
      return "unused_parameter";
    case DefectKind::kBadEnum:
      return "bad_enum";
  }
  return "unknown";
}

const std::vector<DefectKind>& all_defect_kinds() {
  static const std::vector<DefectKind> kKinds = {
      DefectKind::kDropRequired,  DefectKind::kWrongType,       DefectKind::kBadIntrinsicGetAZs,
      DefectKind::kUnknownTopKey, DefectKind::kUnusedParameter, DefectKind::kBadEnum,
  };
  return kKinds;
}

std::optional<DefectKind> parse_defect_kind(std::string_view name) {
  for (DefectKind k : all_defect_kinds()) {
    if (name == defect_kind_name(k)) return k;
  }
  return std::nullopt;
}

std::vector<DefectSpec> eligible_sites(const MutableTemplate& base, const MutableTemplate& current,
                                       DefectKind kind, const schema::SchemaStore& store,
                                       const std::set<std::string>& occupied) {
  const Doc& base_doc = base.impl().doc;
  const Doc& doc = current.impl().doc;
  std::vector<DefectSpec> out;
  if (!doc.is_object()) return out;
  switch (kind) {
    case DefectKind::kUnknownTopKey:
      for (std::string_view name : kTopKeyTypos) {
        const std::string ptr = join("", name);
        const std::string key(name);
        if (!occupied.contains(ptr) && !doc.contains(key) && !base_doc.contains(key)) {
          out.push_back({kind, ptr});
        }
      }
      return out;
    case DefectKind::kUnusedParameter:
      for (std::string_view name : kUnusedParameterNames) {
        const std::string ptr = join("/Parameters", name);
        if (!occupied.contains(ptr) && !has(doc, ptr) && !has(base_doc, ptr)) {
          out.push_back({kind, ptr});
        }
      }
      return out;
    default:
      break;
  }
  for (const PropertySite& site : property_sites(base_doc, store)) {
    if (occupied.contains(site.pointer) || !has(doc, site.pointer)) continue;
    bool ok = false;
    switch (kind) {
      case DefectKind::kDropRequired:
        ok = site.spec->required;
        break;
      case DefectKind::kWrongType:
        ok = true;
        break;
      case DefectKind::kBadIntrinsicGetAZs:
        ok = site.spec->primitive == schema::Primitive::kString;
        break;
      case DefectKind::kBadEnum:
        ok = site.spec->enum_values.has_value();
        break;
      default:
        break;
    }
    if (ok) out.push_back({kind, site.pointer});
  }
  return out;
}

void inject_defect(MutableTemplate& current, const DefectSpec& spec,
                   const schema::SchemaStore& store) {
  Doc& doc = current.impl().doc;
  const Pointer target(spec.target_pointer);
  switch (spec.kind) {
    case DefectKind::kDropRequired:
      doc.at(target.parent_pointer()).erase(target.back());
      return;
    case DefectKind::kWrongType: {
      const schema::PropertySpec* prop = spec_for(doc, spec.target_pointer, store);
      if (prop == nullptr) throw std::logic_error("wrong_type site has no schema property");
      if (const char* note = wrong_type_note(prop->primitive)) {
        doc[target] = note;
      } else {
        doc[target] = 42;
      }
      return;
    }
    case DefectKind::kBadIntrinsicGetAZs:
      doc[target] = Doc{{"Fn::GetAZs", ""}};
      return;
    case DefectKind::kUnknownTopKey:
      doc[target] = Doc::object();
      return;
    case DefectKind::kUnusedParameter:
      if (!doc.contains("Parameters")) doc["Parameters"] = Doc::object();
      doc[target] = Doc{{"Type", "String"}, {"Default", "default"}};
      return;
    case DefectKind::kBadEnum:
      doc[target] = "InvalidValue";
      return;
  }
}

void repair_defect(MutableTemplate& current, const DefectSpec& spec, const MutableTemplate& base) {
  Doc& doc = current.impl().doc;
  const Doc& base_doc = base.impl().doc;
  const Pointer target(spec.target_pointer);
  const Pointer parent = target.parent_pointer();
  if (base_doc.contains(target)) {
    doc[target] = base_doc.at(target);
    reorder_like(doc[parent], base_doc.at(parent));
    return;
  }
  if (doc.contains(target)) doc.at(parent).erase(target.back());
  if (!parent.empty() && doc.at(parent).empty() && !base_doc.contains(parent)) {
    doc.at(parent.parent_pointer()).erase(parent.back());
  }
}

bool defect_matches(const DefectSpec& spec, const lint::Diagnostic& d) {
  switch (spec.kind) {
    case DefectKind::kDropRequired:
      return d.code.str() == "E3003" && d.pointer == parent_of(spec.target_pointer) &&
             d.message == "'" + last_token(spec.target_pointer) + "' is a required property";
    case DefectKind::kWrongType:
      return d.code.str() == "E3012" && d.pointer == spec.target_pointer;
    case DefectKind::kBadIntrinsicGetAZs:
      return d.code.str() == "E1015" && d.pointer == spec.target_pointer;
    case DefectKind::kUnknownTopKey:
      return d.code.str() == "E1001" && d.pointer == spec.target_pointer;
    case DefectKind::kUnusedParameter:
      return d.code.str() == "W2001" && d.pointer == spec.target_pointer;
    case DefectKind::kBadEnum:
      return d.code.str() == "E3030" && d.pointer == spec.target_pointer;
  }
  return false;
}

}  // namespace iacloop::llm
