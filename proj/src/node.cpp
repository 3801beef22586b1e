#include "nilmmeta/node.hpp"

#include <cmath>
#include <sstream>

namespace nilmmeta {

Node Node::null(SourceRef span) {
    Node n;
    n.span = std::move(span);
    return n;
}

const char* node_kind_name(NodeKind kind) {
    switch (kind) {
        case NodeKind::Null: return "null";
        case NodeKind::Boolean: return "boolean";
        case NodeKind::Integer: return "integer";
        case NodeKind::Real: return "real";
        case NodeKind::String: return "string";
        case NodeKind::Sequence: return "sequence";
        case NodeKind::Mapping: return "mapping";
    }
    return "?";
}

Node Node::boolean(bool v, SourceRef span) {
    Node n;
    n.kind_ = NodeKind::Boolean;
    n.value_ = v;
    n.span = std::move(span);
    return n;
}

Node Node::integer(std::int64_t v, SourceRef span) {
    Node n;
    n.kind_ = NodeKind::Integer;
    n.value_ = v;
    n.span = std::move(span);
    return n;
}

Node Node::real(double v, SourceRef span) {
    Node n;
    n.kind_ = NodeKind::Real;
    n.value_ = v;
    n.span = std::move(span);
    return n;
}

Node Node::string(std::string v, SourceRef span) {
    Node n;
    n.kind_ = NodeKind::String;
    n.value_ = std::move(v);
    n.span = std::move(span);
    return n;
}

Node Node::sequence(std::vector<Node> items, SourceRef span) {
    Node n;
    n.kind_ = NodeKind::Sequence;
    n.value_ = std::move(items);
    n.span = std::move(span);
    return n;
}

Node Node::mapping(std::vector<Entry> entries, SourceRef span) {
    Node n;
    n.kind_ = NodeKind::Mapping;
    n.value_ = std::move(entries);
    n.span = std::move(span);
    return n;
}

double Node::as_real() const {
    if (kind_ == NodeKind::Integer) return static_cast<double>(std::get<std::int64_t>(value_));
    return std::get<double>(value_);
}

std::size_t Node::size() const {
    if (is_sequence()) return items().size();
    if (is_mapping()) return entries().size();
    return 0;
}

const Node* Node::find(std::string_view key) const {
    if (!is_mapping()) return nullptr;
    for (const auto& [k, v] : entries()) {
        if (k == key) return &v;
    }
    return nullptr;
}

void Node::set(std::string_view key, Node value) {
    auto& es = entries();
    for (auto& [k, v] : es) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    es.emplace_back(std::string(key), std::move(value));
}

bool Node::erase(std::string_view key) {
    auto& es = entries();
    for (auto it = es.begin(); it != es.end(); ++it) {
        if (it->first == key) {
            es.erase(it);
            return true;
        }
    }
    return false;
}

std::string Node::scalar_text() const {
    switch (kind_) {
        case NodeKind::Null: return "null";
        case NodeKind::Boolean: return as_boolean() ? "true" : "false";
        case NodeKind::Integer: return std::to_string(as_integer());
        case NodeKind::Real: {
            std::ostringstream os;
            os << std::get<double>(value_);
            return os.str();
        }
        case NodeKind::String: return as_string();
        case NodeKind::Sequence: return "<sequence>";
        case NodeKind::Mapping: return "<mapping>";
    }
    return {};
}

bool operator==(const Node& a, const Node& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case NodeKind::Null: return true;
        case NodeKind::Boolean: return a.as_boolean() == b.as_boolean();
        case NodeKind::Integer: return a.as_integer() == b.as_integer();
        case NodeKind::Real: return a.as_real() == b.as_real();
        case NodeKind::String: return a.as_string() == b.as_string();
        case NodeKind::Sequence: {
            const auto& xs = a.items();
            const auto& ys = b.items();
            if (xs.size() != ys.size()) return false;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (!(xs[i] == ys[i])) return false;
            }
            return true;
        }
        case NodeKind::Mapping: {
            const auto& xs = a.entries();
            if (xs.size() != b.entries().size()) return false;
            for (const auto& [k, v] : xs) {
                const Node* other = b.find(k);
                if (other == nullptr || !(v == *other)) return false;
            }
            return true;
        }
    }
    return false;
}

}  // namespace nilmmeta
