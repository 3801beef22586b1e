#include "nilmmeta/diagnostics.hpp"

#include <algorithm>
#include <sstream>

namespace nilmmeta {

const char* severity_name(Severity s) {
    return s == Severity::Error ? "error" : "warning";
}

Diagnostic Diagnostic::error(std::string code, std::string path, std::string message,
                             SourceRef where) {
    return Diagnostic{Severity::Error, std::move(code), std::move(path), std::move(message),
                      std::move(where)};
}

Diagnostic Diagnostic::warning(std::string code, std::string path, std::string message,
                               SourceRef where) {
    return Diagnostic{Severity::Warning, std::move(code), std::move(path), std::move(message),
                      std::move(where)};
}

std::string Diagnostic::to_text() const {
    std::ostringstream out;
    out << severity_name(severity) << ' ' << code;
    if (!path.empty()) out << ' ' << path;
    out << " - " << message;
    if (where.known()) out << " (" << where.file << ':' << where.line << ')';
    return out.str();
}

int ValidationReport::error_count() const {
    return static_cast<int>(std::count_if(diagnostics.begin(), diagnostics.end(),
                                          [](const Diagnostic& d) {
                                              return d.severity == Severity::Error;
                                          }));
}

int ValidationReport::warning_count() const {
    return static_cast<int>(diagnostics.size()) - error_count();
}

bool has_code(const std::vector<Diagnostic>& diags, std::string_view code) {
    return find_code(diags, code) != nullptr;
}

const Diagnostic* find_code(const std::vector<Diagnostic>& diags, std::string_view code) {
    for (const auto& d : diags)
        if (d.code == code) return &d;
    return nullptr;
}

void extend(std::vector<Diagnostic>& into, std::vector<Diagnostic> extra) {
    into.insert(into.end(), std::make_move_iterator(extra.begin()),
                std::make_move_iterator(extra.end()));
}

}  // namespace nilmmeta
