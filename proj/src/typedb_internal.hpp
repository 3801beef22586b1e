#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "nilmmeta/diagnostics.hpp"
#include "nilmmeta/node.hpp"
#include "nilmmeta/typedb.hpp"

namespace nilmmeta::detail {

struct RawTypeDoc {
    std::string name;
    Node doc;
};

/// Assemble a library from parsed type documents and vocabulary term lists
/// (lists so duplicates can be reported): referential checks, cycle
/// detection, and eager resolution of every sound chain.
TypeLibrary build_library(const std::vector<RawTypeDoc>& docs,
                          const std::vector<std::string>& room_vocab,
                          const std::map<std::string, std::vector<std::string>>& taxonomies,
                          std::vector<Diagnostic>& diags);

// Seed data, defined in seed_library.cpp.
std::vector<RawTypeDoc> seed_type_docs(std::vector<Diagnostic>& diags);
std::vector<std::string> seed_room_vocab();
std::map<std::string, std::vector<std::string>> seed_taxonomy_vocab();

}  // namespace nilmmeta::detail
