#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nilmmeta/diagnostics.hpp"
#include "nilmmeta/node.hpp"

namespace nilmmeta {

enum class DocFormat { Yaml, Json };

/// Pick a format from a file extension; JSON documents also parse through the
/// YAML path (JSON is a YAML subset), so the distinction is informational.
DocFormat format_for_path(std::string_view path);

struct ParseResult {
    Node root;
    std::vector<Diagnostic> diagnostics;

    bool ok() const {
        for (const auto& d : diagnostics)
            if (d.severity == Severity::Error) return false;
        return true;
    }
};

/// Parse one document into a Node tree with per-node source lines.
///
/// Scalars keep their lexical kind: unquoted `true`, `12`, `1.5` become
/// boolean, integer, real; quoted forms stay strings. An empty input is an
/// empty mapping. Duplicate keys keep the first value and report E-DUP-KEY;
/// streams with more than one document report E-PARSE.
ParseResult parse_document(const std::string& text, const std::string& filename,
                           DocFormat format = DocFormat::Yaml);

/// Read and parse a file, reporting unreadable files as E-PARSE.
ParseResult parse_file(const std::string& path);

}  // namespace nilmmeta
