#include "nilmmeta/parse.hpp"

#include <yaml-cpp/anchor.h>
#include <yaml-cpp/emitterstyle.h>
#include <yaml-cpp/eventhandler.h>
#include <yaml-cpp/exceptions.h>
#include <yaml-cpp/mark.h>
#include <yaml-cpp/parser.h>

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace nilmmeta {

namespace {

bool looks_integral(std::string_view s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

bool looks_real(std::string_view s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t digits = 0, dot = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            ++digits;
        } else if (c == '.' && dot == 0) {
            ++dot;
        } else if ((c == 'e' || c == 'E') && digits > 0) {
            ++i;
            if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
            if (i == s.size()) return false;
            for (; i < s.size(); ++i)
                if (s[i] < '0' || s[i] > '9') return false;
            return true;
        } else {
            return false;
        }
    }
    return digits > 0;
}

/// Resolve an unquoted scalar to its lexical kind. Only the core boolean
/// spellings count; `yes`/`no`/`on`/`off` stay strings. Numbers that do not
/// fit or are not finite stay strings rather than degrading silently.
Node resolve_plain_scalar(const std::string& text, SourceRef span) {
    if (text == "true" || text == "True" || text == "TRUE")
        return Node::boolean(true, span);
    if (text == "false" || text == "False" || text == "FALSE")
        return Node::boolean(false, span);
    if (looks_integral(text)) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec == std::errc() && ptr == text.data() + text.size())
            return Node::integer(v, span);
        // fall through to the real path on overflow
    }
    if (looks_integral(text) || looks_real(text)) {
        errno = 0;
        char* end = nullptr;
        double v = std::strtod(text.c_str(), &end);
        if (end == text.c_str() + text.size() && errno == 0 && std::isfinite(v))
            return Node::real(v, span);
    }
    return Node::string(text, span);
}

Node scalar_from_tag(const std::string& tag, const std::string& value, SourceRef span) {
    if (tag == "?") return resolve_plain_scalar(value, span);
    if (tag == "!") return Node::string(value, span);
    if (tag == "tag:yaml.org,2002:str") return Node::string(value, span);
    if (tag == "tag:yaml.org,2002:bool") {
        std::string_view v = value;
        if (v == "true" || v == "True" || v == "TRUE") return Node::boolean(true, span);
        if (v == "false" || v == "False" || v == "FALSE") return Node::boolean(false, span);
        return Node::string(value, span);
    }
    if (tag == "tag:yaml.org,2002:int" || tag == "tag:yaml.org,2002:float") {
        Node n = resolve_plain_scalar(value, span);
        if (n.is_number()) return n;
        return Node::string(value, span);
    }
    if (tag == "tag:yaml.org,2002:null") return Node::null(span);
    return Node::string(value, span);
}

class TreeBuilder : public YAML::EventHandler {
  public:
    TreeBuilder(std::string filename, std::vector<Diagnostic>& diags)
        : filename_(std::move(filename)), diags_(diags) {}

    bool has_root() const { return has_root_; }
    Node take_root() { return std::move(root_); }

    void OnDocumentStart(const YAML::Mark&) override {}
    void OnDocumentEnd() override {}

    void OnNull(const YAML::Mark& mark, YAML::anchor_t anchor) override {
        add_value(Node::null(at(mark)), anchor, at(mark));
    }

    void OnAlias(const YAML::Mark& mark, YAML::anchor_t anchor) override {
        auto it = anchors_.find(anchor);
        if (it == anchors_.end()) {
            diags_.push_back(Diagnostic::error(
                codes::parse, current_path(),
                "alias refers to an anchor that is not finished yet", at(mark)));
            add_value(Node::null(at(mark)), 0, at(mark));
            return;
        }
        Node copy = it->second;
        copy.span = at(mark);
        add_value(std::move(copy), 0, at(mark));
    }

    void OnScalar(const YAML::Mark& mark, const std::string& tag, YAML::anchor_t anchor,
                  const std::string& value) override {
        if (awaiting_key()) {
            begin_key(value, at(mark));
            return;
        }
        add_value(scalar_from_tag(tag, value, at(mark)), anchor, at(mark));
    }

    void OnSequenceStart(const YAML::Mark& mark, const std::string&, YAML::anchor_t anchor,
                         YAML::EmitterStyle::value) override {
        push_frame(Frame{Node::sequence({}, at(mark)), false, anchor, at(mark)});
    }

    void OnSequenceEnd() override { pop_frame(); }

    void OnMapStart(const YAML::Mark& mark, const std::string&, YAML::anchor_t anchor,
                    YAML::EmitterStyle::value) override {
        if (awaiting_key()) {
            diags_.push_back(Diagnostic::error(codes::parse, current_path(),
                                               "mapping keys must be scalars", at(mark)));
        }
        push_frame(Frame{Node::mapping({}, at(mark)), true, anchor, at(mark)});
    }

    void OnMapEnd() override { pop_frame(); }

  private:
    struct Frame {
        Node node;
        bool is_map = false;
        YAML::anchor_t anchor = 0;
        SourceRef span;
        std::string pending_key;
        SourceRef key_span;
        bool have_key = false;
        std::set<std::string> seen;
    };

    SourceRef at(const YAML::Mark& mark) const {
        return SourceRef{filename_, mark.line + 1};
    }

    bool awaiting_key() const {
        return !stack_.empty() && stack_.back().is_map && !stack_.back().have_key;
    }

    std::string current_path() const {
        std::string path;
        for (const auto& f : stack_) {
            if (f.is_map && f.have_key) {
                if (!path.empty()) path += '/';
                path += f.pending_key;
            }
        }
        return path;
    }

    void begin_key(const std::string& text, SourceRef span) {
        Frame& top = stack_.back();
        top.pending_key = text;
        top.key_span = span;
        top.have_key = true;
    }

    void push_frame(Frame f) { stack_.push_back(std::move(f)); }

    void pop_frame() {
        Frame done = std::move(stack_.back());
        stack_.pop_back();
        if (done.anchor != 0) anchors_[done.anchor] = done.node;
        add_value(std::move(done.node), 0, done.span);
    }

    void add_value(Node value, YAML::anchor_t anchor, SourceRef span) {
        if (anchor != 0) anchors_[anchor] = value;
        if (stack_.empty()) {
            if (has_root_) {
                diags_.push_back(Diagnostic::error(codes::parse, "",
                                                   "stream holds more than one document",
                                                   span));
                return;
            }
            root_ = std::move(value);
            has_root_ = true;
            return;
        }
        Frame& top = stack_.back();
        if (top.is_map) {
            if (!top.have_key) {
                // non-scalar key already reported; drop the value
                return;
            }
            if (!top.seen.insert(top.pending_key).second) {
                diags_.push_back(Diagnostic::error(
                    codes::dup_key, current_path(),
                    "duplicate mapping key '" + top.pending_key + "' (first value kept)",
                    top.key_span));
            } else {
                top.node.set(top.pending_key, std::move(value));
            }
            top.have_key = false;
            top.pending_key.clear();
        } else {
            top.node.items().push_back(std::move(value));
        }
    }

    std::string filename_;
    std::vector<Diagnostic>& diags_;
    std::vector<Frame> stack_;
    std::map<YAML::anchor_t, Node> anchors_;
    Node root_;
    bool has_root_ = false;
};

}  // namespace

DocFormat format_for_path(std::string_view path) {
    auto dot = path.rfind('.');
    if (dot != std::string_view::npos && path.substr(dot) == ".json") return DocFormat::Json;
    return DocFormat::Yaml;
}

ParseResult parse_document(const std::string& text, const std::string& filename, DocFormat) {
    ParseResult result;
    TreeBuilder builder(filename, result.diagnostics);
    std::istringstream in(text);
    try {
        YAML::Parser parser(in);
        while (parser.HandleNextDocument(builder)) {
        }
    } catch (const YAML::ParserException& e) {
        result.diagnostics.push_back(Diagnostic::error(
            codes::parse, "", e.msg, SourceRef{filename, e.mark.line + 1}));
        result.root = Node::mapping({}, SourceRef{filename, 1});
        return result;
    }
    if (!builder.has_root()) {
        result.root = Node::mapping({}, SourceRef{filename, 1});
    } else {
        result.root = builder.take_root();
        if (result.root.is_null()) result.root = Node::mapping({}, result.root.span);
    }
    return result;
}

ParseResult parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        ParseResult result;
        result.diagnostics.push_back(Diagnostic::error(codes::parse, "",
                                                       "cannot read file",
                                                       SourceRef{path, 0}));
        result.root = Node::mapping({}, SourceRef{path, 1});
        return result;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str(), path, format_for_path(path));
}

}  // namespace nilmmeta
