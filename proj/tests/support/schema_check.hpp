#pragma once

#include <fstream>
#include <regex>
#include <string>

#include "qforge/json_io.hpp"

// Validator for the JSON-Schema subset used under /schemas: type,
// properties, required, additionalProperties, items, enum, anyOf, pattern,
// minimum, and local "#/definitions/..." references.
namespace qtest {

class SchemaChecker {
 public:
  explicit SchemaChecker(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw std::runtime_error("missing schema file: " + path);
    root_ = qf::Json::parse(in);
  }

  bool validate(const qf::Json& value, std::string* why = nullptr) const {
    std::string reason;
    bool ok = check(root_, value, "$", reason);
    if (!ok && why) *why = reason;
    return ok;
  }

 private:
  const qf::Json& resolve(const qf::Json& schema) const {
    if (schema.contains("$ref")) {
      std::string ref = schema.at("$ref").get<std::string>();
      const std::string prefix = "#/definitions/";
      if (ref.rfind(prefix, 0) != 0)
        throw std::runtime_error("only local definition refs are supported");
      return root_.at("definitions").at(ref.substr(prefix.size()));
    }
    return schema;
  }

  bool check(const qf::Json& raw, const qf::Json& value, const std::string& at,
             std::string& why) const {
    const qf::Json& schema = resolve(raw);

    if (schema.contains("anyOf")) {
      for (const auto& option : schema.at("anyOf")) {
        std::string ignored;
        if (check(option, value, at, ignored)) return true;
      }
      why = at + ": no anyOf branch matched";
      return false;
    }

    if (schema.contains("type")) {
      const std::string t = schema.at("type").get<std::string>();
      bool ok = (t == "object" && value.is_object()) ||
                (t == "array" && value.is_array()) ||
                (t == "string" && value.is_string()) ||
                (t == "integer" && value.is_number_integer()) ||
                (t == "number" && value.is_number()) ||
                (t == "boolean" && value.is_boolean()) ||
                (t == "null" && value.is_null());
      if (!ok) {
        why = at + ": expected type " + t;
        return false;
      }
    }

    if (schema.contains("enum")) {
      bool ok = false;
      for (const auto& e : schema.at("enum"))
        if (e == value) ok = true;
      if (!ok) {
        why = at + ": not in enum";
        return false;
      }
    }

    if (schema.contains("pattern") && value.is_string()) {
      std::regex re(schema.at("pattern").get<std::string>());
      if (!std::regex_search(value.get<std::string>(), re)) {
        why = at + ": pattern mismatch for \"" + value.get<std::string>() + "\"";
        return false;
      }
    }

    if (schema.contains("minimum") && value.is_number()) {
      if (value.get<double>() < schema.at("minimum").get<double>()) {
        why = at + ": below minimum";
        return false;
      }
    }

    if (value.is_object()) {
      if (schema.contains("required")) {
        for (const auto& key : schema.at("required")) {
          if (!value.contains(key.get<std::string>())) {
            why = at + ": missing required field " + key.get<std::string>();
            return false;
          }
        }
      }
      const qf::Json* props =
          schema.contains("properties") ? &schema.at("properties") : nullptr;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (props && props->contains(it.key())) {
          if (!check(props->at(it.key()), it.value(), at + "." + it.key(), why))
            return false;
        } else if (schema.contains("additionalProperties")) {
          const auto& ap = schema.at("additionalProperties");
          if (ap.is_boolean() && !ap.get<bool>()) {
            why = at + ": unexpected field " + it.key();
            return false;
          }
          if (ap.is_object() && !check(ap, it.value(), at + "." + it.key(), why))
            return false;
        }
      }
    }

    if (value.is_array() && schema.contains("items")) {
      size_t i = 0;
      for (const auto& item : value) {
        if (!check(schema.at("items"), item, at + "[" + std::to_string(i) + "]", why))
          return false;
        ++i;
      }
    }
    return true;
  }

  qf::Json root_;
};

inline bool schema_valid(const qf::Json& value, const std::string& schema_file,
                         std::string* why = nullptr) {
  SchemaChecker checker(std::string(QFORGE_SCHEMA_DIR) + "/" + schema_file);
  return checker.validate(value, why);
}

#ifdef DOCTEST_LIBRARY_INCLUDED
inline void check_against_schema(const qf::Json& value, const std::string& schema_file) {
  std::string why;
  bool ok = schema_valid(value, schema_file, &why);
  CHECK_MESSAGE(ok, "schema " << schema_file << ": " << why);
}
#endif

}  // namespace qtest
