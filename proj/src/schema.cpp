#include "nilmmeta/schema.hpp"

#include <regex>

#include "nilmmeta/model.hpp"

namespace nilmmeta {

namespace {

bool known_kind(std::string_view k) {
    return k == "string" || k == "integer" || k == "number" || k == "boolean" ||
           k == "sequence" || k == "mapping";
}

std::string normalize_kind(const std::string& k) {
    if (k == "array") return "sequence";
    if (k == "object") return "mapping";
    return k;
}

bool kind_matches(const Node& value, const std::string& kind) {
    if (kind == "string") return value.is_string();
    if (kind == "integer") return value.is_integer();
    if (kind == "number") return value.is_number();
    if (kind == "boolean") return value.is_boolean();
    if (kind == "sequence") return value.is_sequence();
    if (kind == "mapping") return value.is_mapping();
    return true;
}

std::optional<SchemaRule> rule_from_node(const Node& node, const std::string& path,
                                         std::vector<Diagnostic>& diags) {
    if (!node.is_mapping()) {
        diags.push_back(Diagnostic::error(codes::schema_kind, path,
                                          "schema rule must be a mapping, got " +
                                              std::string(node_kind_name(node.kind())),
                                          node.span));
        return std::nullopt;
    }
    SchemaRule rule;
    rule.span = node.span;
    for (const auto& [key, value] : node.entries()) {
        if (key == "type") {
            if (value.is_string() && known_kind(normalize_kind(value.as_string()))) {
                rule.kind = normalize_kind(value.as_string());
            } else {
                diags.push_back(Diagnostic::error(codes::schema_kind,
                                                  join_path(path, "type"),
                                                  "unknown schema type '" +
                                                      value.scalar_text() + "'",
                                                  value.span));
            }
        } else if (key == "enum") {
            if (value.is_sequence()) {
                rule.enum_values = value.items();
            } else {
                diags.push_back(Diagnostic::error(codes::schema_kind,
                                                  join_path(path, "enum"),
                                                  "enum must be a sequence", value.span));
            }
        } else if (key == "minimum" || key == "maximum") {
            if (value.is_number()) {
                (key == "minimum" ? rule.minimum : rule.maximum) = value.as_real();
            } else {
                diags.push_back(Diagnostic::error(codes::schema_kind,
                                                  join_path(path, key),
                                                  key + " must be a number", value.span));
            }
        } else if (key == "pattern") {
            if (value.is_string()) {
                try {
                    std::regex probe(value.as_string());
                    rule.pattern = value.as_string();
                } catch (const std::regex_error&) {
                    diags.push_back(Diagnostic::error(codes::schema_pattern,
                                                      join_path(path, "pattern"),
                                                      "pattern is not a valid regular "
                                                      "expression",
                                                      value.span));
                }
            } else {
                diags.push_back(Diagnostic::error(codes::schema_kind,
                                                  join_path(path, "pattern"),
                                                  "pattern must be a string", value.span));
            }
        } else if (key == "required") {
            if (value.is_boolean()) {
                rule.required = value.as_boolean();
            } else {
                diags.push_back(Diagnostic::error(codes::schema_kind,
                                                  join_path(path, "required"),
                                                  "required must be a boolean",
                                                  value.span));
            }
        } else if (key == "items") {
            auto inner = rule_from_node(value, join_path(path, "items"), diags);
            if (inner) rule.items = std::make_shared<SchemaRule>(std::move(*inner));
        } else if (key == "description") {
            // informational, ignored
        } else {
            diags.push_back(Diagnostic::warning(codes::unknown_field, join_path(path, key),
                                                "unsupported schema keyword '" + key + "'",
                                                value.span));
        }
    }
    if (rule.minimum && rule.maximum && *rule.minimum > *rule.maximum) {
        diags.push_back(Diagnostic::error(codes::schema_range, path,
                                          "schema minimum exceeds maximum", node.span));
    }
    return rule;
}

}  // namespace

SchemaFragment fragment_from_node(const Node& node, const std::string& path,
                                  std::vector<Diagnostic>& diags) {
    SchemaFragment fragment;
    if (node.is_null()) return fragment;
    if (!node.is_mapping()) {
        diags.push_back(Diagnostic::error(codes::schema_kind, path,
                                          "schema fragment must be a mapping", node.span));
        return fragment;
    }
    for (const auto& [name, rule_node] : node.entries()) {
        auto rule = rule_from_node(rule_node, join_path(path, name), diags);
        if (rule) fragment.properties.emplace(name, std::move(*rule));
    }
    return fragment;
}

std::vector<Diagnostic> validate_rule(const Node& value, const SchemaRule& rule,
                                      const std::string& path) {
    std::vector<Diagnostic> out;
    if (rule.kind && !kind_matches(value, *rule.kind)) {
        out.push_back(Diagnostic::error(codes::schema_kind, path,
                                        "expected " + *rule.kind + ", got " +
                                            std::string(node_kind_name(value.kind())),
                                        value.span));
        return out;
    }
    if (!rule.enum_values.empty()) {
        bool member = false;
        for (const auto& allowed : rule.enum_values) {
            if (allowed == value) {
                member = true;
                break;
            }
        }
        if (!member) {
            out.push_back(Diagnostic::error(codes::schema_enum, path,
                                            "value '" + value.scalar_text() +
                                                "' is not one of the allowed values",
                                            value.span));
        }
    }
    if (value.is_number()) {
        double v = value.as_real();
        if (rule.minimum && v < *rule.minimum) {
            out.push_back(Diagnostic::error(codes::schema_range, path,
                                            "value " + value.scalar_text() +
                                                " is below the minimum",
                                            value.span));
        }
        if (rule.maximum && v > *rule.maximum) {
            out.push_back(Diagnostic::error(codes::schema_range, path,
                                            "value " + value.scalar_text() +
                                                " is above the maximum",
                                            value.span));
        }
    }
    if (rule.pattern && value.is_string()) {
        std::regex re(*rule.pattern);
        if (!std::regex_search(value.as_string(), re)) {
            out.push_back(Diagnostic::error(codes::schema_pattern, path,
                                            "value '" + value.as_string() +
                                                "' does not match the pattern",
                                            value.span));
        }
    }
    if (rule.items && value.is_sequence()) {
        const auto& items = value.items();
        for (std::size_t i = 0; i < items.size(); ++i) {
            auto inner = validate_rule(items[i], *rule.items,
                                       join_path(path, std::to_string(i + 1)));
            out.insert(out.end(), inner.begin(), inner.end());
        }
    }
    return out;
}

std::vector<Diagnostic> validate_against_fragment(const Node& mapping,
                                                  const SchemaFragment& fragment,
                                                  const std::string& path) {
    std::vector<Diagnostic> out;
    if (!mapping.is_mapping()) {
        out.push_back(Diagnostic::error(codes::schema_kind, path,
                                        "expected a mapping to validate", mapping.span));
        return out;
    }
    for (const auto& [name, rule] : fragment.properties) {
        const Node* value = mapping.find(name);
        if (!value) {
            if (rule.required) {
                out.push_back(Diagnostic::error(codes::schema_required,
                                                join_path(path, name),
                                                "required property '" + name +
                                                    "' is missing",
                                                mapping.span));
            }
            continue;
        }
        auto inner = validate_rule(*value, rule, join_path(path, name));
        out.insert(out.end(), inner.begin(), inner.end());
    }
    return out;
}

}  // namespace nilmmeta
