#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace nilmmeta {

/// Where a value came from. Equality-transparent so domain types that carry
/// one can still use defaulted structural comparison.
struct SourceRef {
    std::string file;
    int line = 0;  // 1-based; 0 = unknown

    bool known() const { return !file.empty() || line > 0; }
    friend bool operator==(const SourceRef&, const SourceRef&) { return true; }
};

enum class NodeKind { Null, Boolean, Integer, Real, String, Sequence, Mapping };

const char* node_kind_name(NodeKind kind);

/// A parsed document value: scalar, sequence, or mapping. Mappings preserve
/// insertion order and hold unique keys (the parser rejects duplicates).
class Node {
public:
    using Entry = std::pair<std::string, Node>;

    Node() : kind_(NodeKind::Null) {}

    static Node null(SourceRef span = {});
    static Node boolean(bool v, SourceRef span = {});
    static Node integer(std::int64_t v, SourceRef span = {});
    static Node real(double v, SourceRef span = {});
    static Node string(std::string v, SourceRef span = {});
    static Node sequence(std::vector<Node> items = {}, SourceRef span = {});
    static Node mapping(std::vector<Entry> entries = {}, SourceRef span = {});

    NodeKind kind() const { return kind_; }
    bool is_null() const { return kind_ == NodeKind::Null; }
    bool is_boolean() const { return kind_ == NodeKind::Boolean; }
    bool is_integer() const { return kind_ == NodeKind::Integer; }
    bool is_real() const { return kind_ == NodeKind::Real; }
    bool is_number() const { return is_integer() || is_real(); }
    bool is_string() const { return kind_ == NodeKind::String; }
    bool is_sequence() const { return kind_ == NodeKind::Sequence; }
    bool is_mapping() const { return kind_ == NodeKind::Mapping; }
    bool is_scalar() const { return !is_sequence() && !is_mapping(); }

    bool as_boolean() const { return std::get<bool>(value_); }
    std::int64_t as_integer() const { return std::get<std::int64_t>(value_); }
    /// Numeric value of an Integer or Real node.
    double as_real() const;
    const std::string& as_string() const { return std::get<std::string>(value_); }

    const std::vector<Node>& items() const { return std::get<std::vector<Node>>(value_); }
    std::vector<Node>& items() { return std::get<std::vector<Node>>(value_); }
    const std::vector<Entry>& entries() const { return std::get<std::vector<Entry>>(value_); }
    std::vector<Entry>& entries() { return std::get<std::vector<Entry>>(value_); }

    std::size_t size() const;

    /// Mapping lookup; nullptr when absent (or when this is not a mapping).
    const Node* find(std::string_view key) const;
    bool contains(std::string_view key) const { return find(key) != nullptr; }

    /// Mapping insert-or-replace, preserving the position of existing keys.
    void set(std::string_view key, Node value);
    /// Mapping removal; returns true when the key was present.
    bool erase(std::string_view key);

    /// Rendering of a scalar as it would appear in a document (diagnostics).
    std::string scalar_text() const;

    SourceRef span;

private:
    NodeKind kind_;
    std::variant<std::monostate, bool, std::int64_t, double, std::string,
                 std::vector<Node>, std::vector<Entry>>
        value_;
};

/// Deep structural equality. Spans are ignored; mapping entry order is
/// irrelevant; sequence order matters; Integer and Real never compare equal.
bool operator==(const Node& a, const Node& b);
inline bool operator!=(const Node& a, const Node& b) { return !(a == b); }

}  // namespace nilmmeta
