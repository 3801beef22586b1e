#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nilmmeta/diagnostics.hpp"
#include "nilmmeta/node.hpp"

namespace nilmmeta {

/// Checkable shape of one property: kind, enum set, numeric bounds, pattern,
/// required flag, and item rules for sequences. This is the small slice of
/// JSON Schema the metadata documents actually use.
struct SchemaRule {
    std::optional<std::string> kind;
    std::vector<Node> enum_values;
    std::optional<double> minimum;
    std::optional<double> maximum;
    std::optional<std::string> pattern;
    bool required = false;
    std::shared_ptr<SchemaRule> items;
    SourceRef span;
};

struct SchemaFragment {
    std::map<std::string, SchemaRule> properties;

    bool empty() const { return properties.empty(); }
    bool has(const std::string& name) const { return properties.count(name) > 0; }
};

/// Read a fragment from its document form: a mapping from property name to a
/// rule mapping with any of the keys type, enum, minimum, maximum, pattern,
/// required, items. Malformed rules are reported and skipped.
SchemaFragment fragment_from_node(const Node& node, const std::string& path,
                                  std::vector<Diagnostic>& diags);

/// Check one value against one rule.
std::vector<Diagnostic> validate_rule(const Node& value, const SchemaRule& rule,
                                      const std::string& path);

/// Check a mapping's properties against a fragment: required presence plus
/// per-property rule checks. Properties outside the fragment are not judged
/// here; callers decide whether unknown keys matter.
std::vector<Diagnostic> validate_against_fragment(const Node& mapping,
                                                  const SchemaFragment& fragment,
                                                  const std::string& path);

}  // namespace nilmmeta
