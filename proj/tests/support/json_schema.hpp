#pragma once

// Minimal JSON Schema (draft-07 subset) validator used to check CLI output
// against the schemas shipped in schemas/.  Supported keywords: type (name or
// list of names), enum, minimum, required, properties, additionalProperties
// (boolean or schema), items (single schema).

#include <string>

#include "json.hpp"

namespace gpword::testing {

inline bool matches_type(const nlohmann::json& value, const std::string& name) {
  if (name == "object") return value.is_object();
  if (name == "array") return value.is_array();
  if (name == "string") return value.is_string();
  if (name == "integer") return value.is_number_integer();
  if (name == "number") return value.is_number();
  if (name == "boolean") return value.is_boolean();
  if (name == "null") return value.is_null();
  return false;
}

/// Empty string when `value` conforms to `schema`, else the first violation.
inline std::string schema_violations(const nlohmann::json& value, const nlohmann::json& schema,
                                     const std::string& path = "$") {
  if (schema.contains("type")) {
    const nlohmann::json& type = schema["type"];
    bool ok = false;
    if (type.is_string()) {
      ok = matches_type(value, type.get<std::string>());
    } else {
      for (const auto& name : type) ok = ok || matches_type(value, name.get<std::string>());
    }
    if (!ok) return path + ": expected type " + type.dump() + ", got " + value.dump();
  }

  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& allowed : schema["enum"]) ok = ok || value == allowed;
    if (!ok) return path + ": " + value.dump() + " not in enum " + schema["enum"].dump();
  }

  if (schema.contains("minimum") && value.is_number()) {
    if (value.get<double>() < schema["minimum"].get<double>()) {
      return path + ": " + value.dump() + " below minimum " + schema["minimum"].dump();
    }
  }

  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"]) {
        if (!value.contains(key.get<std::string>())) {
          return path + ": missing required property '" + key.get<std::string>() + "'";
        }
      }
    }
    const nlohmann::json empty = nlohmann::json::object();
    const nlohmann::json& properties = schema.contains("properties") ? schema["properties"] : empty;
    for (const auto& [key, member] : value.items()) {
      if (properties.contains(key)) {
        const std::string error = schema_violations(member, properties[key], path + "." + key);
        if (!error.empty()) return error;
      } else if (schema.contains("additionalProperties")) {
        const nlohmann::json& extra = schema["additionalProperties"];
        if (extra.is_boolean() && !extra.get<bool>()) {
          return path + ": unexpected property '" + key + "'";
        }
        if (extra.is_object()) {
          const std::string error = schema_violations(member, extra, path + "." + key);
          if (!error.empty()) return error;
        }
      }
    }
  }

  if (value.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      const std::string error =
          schema_violations(value[i], schema["items"], path + "[" + std::to_string(i) + "]");
      if (!error.empty()) return error;
    }
  }

  return {};
}

}  // namespace gpword::testing
