#pragma once

// Minimal JSON-Schema (draft-07 subset) checker used by the CLI tests to
// confirm that run reports conform to the shipped schema file.  Supports
// exactly the keywords that schema uses: type (string or array of strings),
// const, enum, required, properties, additionalProperties (boolean or
// schema), items, minimum, and local $ref into #/definitions.

#include <cstddef>
#include <string>

#include <nlohmann/json.hpp>

namespace schema_lite {

using nlohmann::json;

inline bool type_matches(const json& value, const std::string& t) {
    if (t == "object") return value.is_object();
    if (t == "array") return value.is_array();
    if (t == "string") return value.is_string();
    if (t == "integer") return value.is_number_integer();
    if (t == "number") return value.is_number();
    if (t == "boolean") return value.is_boolean();
    if (t == "null") return value.is_null();
    return false;
}

// Returns "" when `value` conforms; otherwise a path-prefixed message.
inline std::string validate(const json& value, const json& schema, const json& root,
                            const std::string& path = "$") {
    if (schema.contains("$ref")) {
        const std::string ref = schema["$ref"].get<std::string>();
        const std::string prefix = "#/definitions/";
        if (ref.rfind(prefix, 0) != 0) return path + ": unsupported $ref " + ref;
        const std::string name = ref.substr(prefix.size());
        if (!root.contains("definitions") || !root["definitions"].contains(name))
            return path + ": dangling $ref " + ref;
        return validate(value, root["definitions"][name], root, path);
    }
    if (schema.contains("const") && value != schema["const"])
        return path + ": const mismatch";
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& v : schema["enum"]) ok = ok || value == v;
        if (!ok) return path + ": not in enum";
    }
    if (schema.contains("type")) {
        const json& t = schema["type"];
        bool ok = false;
        if (t.is_array())
            for (const auto& alt : t) ok = ok || type_matches(value, alt.get<std::string>());
        else
            ok = type_matches(value, t.get<std::string>());
        if (!ok) return path + ": wrong type";
    }
    if (schema.contains("minimum") && value.is_number() &&
        value.get<double>() < schema["minimum"].get<double>())
        return path + ": below minimum";
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& k : schema["required"])
                if (!value.contains(k.get<std::string>()))
                    return path + ": missing required key " + k.get<std::string>();
        const json* props = schema.contains("properties") ? &schema["properties"] : nullptr;
        for (auto it = value.begin(); it != value.end(); ++it) {
            if (props && props->contains(it.key())) {
                std::string err =
                    validate(it.value(), (*props)[it.key()], root, path + "." + it.key());
                if (!err.empty()) return err;
            } else if (schema.contains("additionalProperties")) {
                const json& ap = schema["additionalProperties"];
                if (ap.is_boolean()) {
                    if (!ap.get<bool>()) return path + ": unexpected key " + it.key();
                } else {
                    std::string err = validate(it.value(), ap, root, path + "." + it.key());
                    if (!err.empty()) return err;
                }
            }
        }
    }
    if (value.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < value.size(); ++i) {
            std::string err = validate(value[i], schema["items"], root,
                                       path + "[" + std::to_string(i) + "]");
            if (!err.empty()) return err;
        }
    }
    return "";
}

inline std::string validate_report(const json& report, const json& schema) {
    return validate(report, schema, schema);
}

}  // namespace schema_lite
