#include "nilmmeta/typedb.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>

#include "nilmmeta/loader.hpp"
#include "nilmmeta/parse.hpp"
#include "typedb_internal.hpp"

namespace nilmmeta {

namespace {

bool is_scalar_like(const Node& n) { return n.is_scalar() || n.is_null(); }

Node merge_sequences(const Node& parent, const Node& child) {
    Node out = Node::sequence({}, child.span);
    auto& items = out.items();
    auto push_unique = [&items](const Node& candidate) {
        for (const auto& existing : items)
            if (existing == candidate) return;
        items.push_back(candidate);
    };
    for (const auto& item : parent.items()) push_unique(item);
    for (const auto& item : child.items()) push_unique(item);
    return out;
}

Node merge_mappings(const Node& parent, const Node& child,
                    const std::set<std::string>& do_not_inherit,
                    std::vector<Diagnostic>* diags, const std::string& path);

Node merge_values(const Node& pv, const Node& cv, std::vector<Diagnostic>* diags,
                  const std::string& path) {
    if (pv.is_sequence() && cv.is_sequence()) return merge_sequences(pv, cv);
    if (pv.is_mapping() && cv.is_mapping()) return merge_mappings(pv, cv, {}, diags, path);
    if (is_scalar_like(pv) && is_scalar_like(cv)) return cv;
    if (diags) {
        diags->push_back(Diagnostic::error(
            codes::merge_kind_conflict, path,
            std::string("cannot combine ") + node_kind_name(pv.kind()) + " with " +
                node_kind_name(cv.kind()) + "; child value kept",
            cv.span));
    }
    return cv;
}

Node merge_mappings(const Node& parent, const Node& child,
                    const std::set<std::string>& do_not_inherit,
                    std::vector<Diagnostic>* diags, const std::string& path) {
    Node out = Node::mapping({}, child.span.known() ? child.span : parent.span);
    for (const auto& [key, pv] : parent.entries()) {
        if (do_not_inherit.count(key)) continue;
        const Node* cv = child.find(key);
        if (!cv) {
            out.set(key, pv);
        } else {
            out.set(key, merge_values(pv, *cv, diags, join_path(path, key)));
        }
    }
    for (const auto& [key, cv] : child.entries()) {
        if (!out.contains(key)) out.set(key, cv);
    }
    return out;
}

std::string library_path(const std::string& type_name, const std::string& leaf = "") {
    return join_path("library/" + type_name, leaf);
}

// Typed-view binders for type documents.

std::vector<std::string> bind_string_seq(const Node& node, const std::string& path,
                                         std::vector<Diagnostic>& diags) {
    std::vector<std::string> out;
    if (!node.is_sequence()) {
        diags.push_back(Diagnostic::error(codes::type_mismatch, path,
                                          "expected a sequence of strings", node.span));
        return out;
    }
    const auto& items = node.items();
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].is_string()) {
            out.push_back(items[i].as_string());
        } else {
            diags.push_back(Diagnostic::error(codes::type_mismatch,
                                              join_path(path, std::to_string(i + 1)),
                                              "expected a string", items[i].span));
        }
    }
    return out;
}

std::vector<double> bind_real_seq(const Node& node, const std::string& path,
                                  std::vector<Diagnostic>& diags) {
    std::vector<double> out;
    if (!node.is_sequence()) {
        diags.push_back(Diagnostic::error(codes::type_mismatch, path,
                                          "expected a sequence of numbers", node.span));
        return out;
    }
    const auto& items = node.items();
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].is_number()) {
            out.push_back(items[i].as_real());
        } else {
            diags.push_back(Diagnostic::error(codes::type_mismatch,
                                              join_path(path, std::to_string(i + 1)),
                                              "expected a number", items[i].span));
        }
    }
    return out;
}

Categories bind_categories(const Node& node, const std::string& path,
                           std::vector<Diagnostic>& diags) {
    Categories out;
    out.span = node.span;
    if (!node.is_mapping()) {
        diags.push_back(Diagnostic::error(codes::type_mismatch, path,
                                          "categories must be a mapping", node.span));
        return out;
    }
    for (const auto& [key, value] : node.entries()) {
        std::string kpath = join_path(path, key);
        if (key == "traditional" || key == "size") {
            if (value.is_string()) {
                (key == "traditional" ? out.traditional : out.size) = value.as_string();
            } else {
                diags.push_back(Diagnostic::error(codes::type_mismatch, kpath,
                                                  "expected a string", value.span));
            }
        } else if (key == "electrical") {
            out.electrical = bind_string_seq(value, kpath, diags);
        } else if (key == "google_shopping") {
            out.google_shopping = bind_string_seq(value, kpath, diags);
        } else {
            diags.push_back(Diagnostic::warning(codes::unknown_field, kpath,
                                                "unknown taxonomy '" + key + "'",
                                                value.span));
        }
    }
    return out;
}

ModelSpec bind_model_spec(const Node& node, const std::string& path,
                          std::vector<Diagnostic>& diags) {
    ModelSpec out;
    out.span = node.span;
    if (!node.is_mapping()) {
        diags.push_back(Diagnostic::error(codes::type_mismatch, path,
                                          "model must be a mapping", node.span));
        return out;
    }
    for (const auto& [key, value] : node.entries()) {
        std::string kpath = join_path(path, key);
        if (key == "distribution_name") {
            if (value.is_string()) {
                out.distribution_name = value.as_string();
            } else {
                diags.push_back(Diagnostic::error(codes::type_mismatch, kpath,
                                                  "expected a string", value.span));
            }
        } else if (key == "parameters") {
            if (value.is_mapping()) {
                for (const auto& [pname, pvalue] : value.entries()) {
                    if (pvalue.is_number()) {
                        out.parameters[pname] = pvalue.as_real();
                    } else {
                        diags.push_back(Diagnostic::error(codes::type_mismatch,
                                                          join_path(kpath, pname),
                                                          "expected a number",
                                                          pvalue.span));
                    }
                }
            } else {
                diags.push_back(Diagnostic::error(codes::type_mismatch, kpath,
                                                  "parameters must be a mapping",
                                                  value.span));
            }
        } else {
            diags.push_back(Diagnostic::warning(codes::unknown_field, kpath,
                                                "unknown model field '" + key + "'",
                                                value.span));
        }
    }
    return out;
}

DistributionData bind_distribution_data(const Node& node, const std::string& path,
                                        std::vector<Diagnostic>& diags) {
    DistributionData out;
    out.span = node.span;
    if (!node.is_mapping()) {
        diags.push_back(Diagnostic::error(codes::type_mismatch, path,
                                          "distribution_of_data must be a mapping",
                                          node.span));
        return out;
    }
    for (const auto& [key, value] : node.entries()) {
        std::string kpath = join_path(path, key);
        if (key == "bin_edges") {
            out.bin_edges = bind_real_seq(value, kpath, diags);
        } else if (key == "categories") {
            out.categories = bind_string_seq(value, kpath, diags);
        } else if (key == "frequencies") {
            out.frequencies = bind_real_seq(value, kpath, diags);
        } else {
            diags.push_back(Diagnostic::warning(codes::unknown_field, kpath,
                                                "unknown distribution field '" + key + "'",
                                                value.span));
        }
    }
    return out;
}

Prior bind_prior(const Node& node, const std::string& path,
                 std::vector<Diagnostic>& diags) {
    Prior out;
    out.span = node.span;
    if (!node.is_mapping()) {
        diags.push_back(Diagnostic::error(codes::type_mismatch, path,
                                          "a prior must be a mapping", node.span));
        return out;
    }
    for (const auto& [key, value] : node.entries()) {
        std::string kpath = join_path(path, key);
        auto bind_str = [&](std::optional<std::string>& target) {
            if (value.is_string()) {
                target = value.as_string();
            } else {
                diags.push_back(Diagnostic::error(codes::type_mismatch, kpath,
                                                  "expected a string", value.span));
            }
        };
        if (key == "distribution_of_data") {
            out.distribution_of_data = bind_distribution_data(value, kpath, diags);
        } else if (key == "model") {
            out.model = bind_model_spec(value, kpath, diags);
        } else if (key == "source") {
            bind_str(out.source);
        } else if (key == "citation") {
            bind_str(out.citation);
        } else if (key == "specific_to") {
            bind_str(out.specific_to);
        } else if (key == "training_data") {
            bind_str(out.training_data);
        } else if (key == "distance") {
            diags.push_back(Diagnostic::warning(codes::authored_distance, kpath,
                                                "distance is assigned during collection "
                                                "and never authored; ignored",
                                                value.span));
        } else {
            diags.push_back(Diagnostic::warning(codes::unknown_field, kpath,
                                                "unknown prior field '" + key + "'",
                                                value.span));
        }
    }
    return out;
}

DistributionSet bind_distribution_set(const Node& node, const std::string& path,
                                      std::vector<Diagnostic>& diags) {
    DistributionSet out;
    if (!node.is_mapping()) {
        diags.push_back(Diagnostic::error(codes::type_mismatch, path,
                                          "distributions must be a mapping", node.span));
        return out;
    }
    for (const auto& [name, value] : node.entries()) {
        std::string dpath = join_path(path, name);
        if (!is_distribution_name(name)) {
            diags.push_back(Diagnostic::error(codes::bad_distribution_name, dpath,
                                              "'" + name + "' is not a distribution name",
                                              value.span));
            continue;
        }
        if (!value.is_sequence()) {
            diags.push_back(Diagnostic::error(codes::type_mismatch, dpath,
                                              "expected a sequence of priors", value.span));
            continue;
        }
        std::vector<Prior> priors;
        const auto& items = value.items();
        for (std::size_t i = 0; i < items.size(); ++i) {
            priors.push_back(
                bind_prior(items[i], join_path(dpath, std::to_string(i + 1)), diags));
        }
        out.emplace(name, std::move(priors));
    }
    return out;
}

ApplianceType bind_type_doc(const detail::RawTypeDoc& doc, std::vector<Diagnostic>& diags) {
    ApplianceType out;
    out.span = doc.doc.span;
    out.name = doc.name;
    if (!doc.doc.is_mapping()) {
        diags.push_back(Diagnostic::error(codes::type_mismatch, library_path(doc.name),
                                          "a type document must be a mapping",
                                          doc.doc.span));
        return out;
    }
    out.properties = Node::mapping({}, doc.doc.span);
    for (const auto& [key, value] : doc.doc.entries()) {
        if (key == "name") {
            if (value.is_string() && !value.as_string().empty()) {
                out.name = value.as_string();
            } else {
                diags.push_back(Diagnostic::error(codes::type_mismatch,
                                                  library_path(doc.name, "name"),
                                                  "name must be a non-empty string",
                                                  value.span));
            }
        } else if (key == "parent") {
            if (value.is_string()) {
                out.parent = value.as_string();
            } else {
                diags.push_back(Diagnostic::error(codes::type_mismatch,
                                                  library_path(doc.name, "parent"),
                                                  "parent must be a string", value.span));
            }
        } else {
            out.properties.set(key, value);
        }
    }
    if (const Node* dni = out.properties.find("do_not_inherit")) {
        out.do_not_inherit =
            bind_string_seq(*dni, library_path(out.name, "do_not_inherit"), diags);
    }
    if (const Node* dists = out.properties.find("distributions")) {
        out.distributions =
            bind_distribution_set(*dists, library_path(out.name, "distributions"), diags);
    }
    if (const Node* subtypes = out.properties.find("subtypes")) {
        auto names = bind_string_seq(*subtypes, library_path(out.name, "subtypes"), diags);
        std::set<std::string> seen;
        for (const auto& s : names) {
            if (!seen.insert(s).second) {
                diags.push_back(Diagnostic::error(codes::type_dup_subtype,
                                                  library_path(out.name, "subtypes"),
                                                  "duplicate subtype '" + s + "'",
                                                  subtypes->span));
            }
        }
    }
    return out;
}

// Chain soundness: a type resolves when following parents reaches a root
// without repeats or unknown names.
enum class ChainState { Sound, Cyclic, Broken };

ChainState chain_state(const TypeLibrary& lib, const std::string& name) {
    std::set<std::string> visited;
    std::string current = name;
    while (true) {
        if (!visited.insert(current).second) return ChainState::Cyclic;
        const auto it = lib.types.find(current);
        if (it == lib.types.end()) return ChainState::Broken;
        if (!it->second.parent) return ChainState::Sound;
        current = *it->second.parent;
    }
}

bool on_parent_cycle(const TypeLibrary& lib, const std::string& name) {
    std::string current = name;
    for (std::size_t steps = 0; steps <= lib.types.size(); ++steps) {
        const auto it = lib.types.find(current);
        if (it == lib.types.end() || !it->second.parent) return false;
        current = *it->second.parent;
        if (current == name) return true;
    }
    return false;
}

void resolve_all(TypeLibrary& lib, std::vector<Diagnostic>& diags) {
    std::function<const ResolvedApplianceType*(const std::string&)> resolve_one =
        [&](const std::string& name) -> const ResolvedApplianceType* {
        auto done = lib.resolved.find(name);
        if (done != lib.resolved.end()) return &done->second;
        const ApplianceType& type = lib.types.at(name);

        Node inherited = Node::mapping();
        std::vector<std::string> chain;
        if (type.parent) {
            const ResolvedApplianceType* parent = resolve_one(*type.parent);
            inherited = parent->properties;
            chain.push_back(*type.parent);
            chain.insert(chain.end(), parent->ancestry.begin(), parent->ancestry.end());
        }
        Node own = type.properties;
        own.erase("do_not_inherit");
        std::set<std::string> dni(type.do_not_inherit.begin(), type.do_not_inherit.end());

        ResolvedApplianceType res;
        res.name = name;
        res.ancestry = std::move(chain);
        res.properties = merge_node(inherited, own, dni, &diags, library_path(name));

        if (const Node* subtypes = res.properties.find("subtypes")) {
            std::vector<Diagnostic> scratch;
            res.subtypes = bind_string_seq(*subtypes, library_path(name, "subtypes"),
                                           scratch);
        }
        if (const Node* cats = res.properties.find("categories")) {
            res.categories = bind_categories(*cats, library_path(name, "categories"),
                                             diags);
        }
        if (const Node* desc = res.properties.find("description")) {
            if (desc->is_string()) res.description = desc->as_string();
        }
        if (const Node* comps = res.properties.find("components")) {
            if (comps->is_sequence()) {
                const auto& items = comps->items();
                for (std::size_t i = 0; i < items.size(); ++i) {
                    res.components.push_back(bind_appliance(
                        items[i],
                        library_path(name, "components/" + std::to_string(i + 1)), diags));
                }
            } else {
                diags.push_back(Diagnostic::error(codes::type_mismatch,
                                                  library_path(name, "components"),
                                                  "components must be a sequence",
                                                  comps->span));
            }
        }
        auto [slot, inserted] = lib.resolved.emplace(name, std::move(res));
        return &slot->second;
    };

    for (const auto& [name, type] : lib.types) {
        if (chain_state(lib, name) == ChainState::Sound) resolve_one(name);
    }
}

void check_component_cycles(const TypeLibrary& lib, std::vector<Diagnostic>& diags) {
    enum class Mark { White, Gray, Black };
    std::map<std::string, Mark> marks;
    std::function<void(const std::string&)> visit = [&](const std::string& name) {
        auto res = lib.resolved.find(name);
        if (res == lib.resolved.end()) return;
        marks[name] = Mark::Gray;
        for (const auto& comp : res->second.components) {
            auto mark = marks.find(comp.type);
            if (mark != marks.end() && mark->second == Mark::Gray) {
                diags.push_back(Diagnostic::error(
                    codes::type_cycle, library_path(name, "components"),
                    "default components loop back to '" + comp.type + "'",
                    lib.types.at(name).span));
                continue;
            }
            if (mark == marks.end() || mark->second == Mark::White) visit(comp.type);
        }
        marks[name] = Mark::Black;
    };
    for (const auto& [name, res] : lib.resolved) {
        auto mark = marks.find(name);
        if (mark == marks.end() || mark->second == Mark::White) visit(name);
    }
}

std::vector<std::string> vocab_with_dup_check(const std::vector<std::string>& terms,
                                              const std::string& path,
                                              std::vector<Diagnostic>& diags) {
    std::set<std::string> seen;
    for (const auto& term : terms) {
        if (!seen.insert(term).second) {
            diags.push_back(Diagnostic::error(codes::vocab_dup, path,
                                              "duplicate vocabulary term '" + term + "'"));
        }
    }
    return terms;
}

Categories union_categories(Categories base, const Categories& extra) {
    auto merge_set = [](std::vector<std::string>& into, const std::vector<std::string>& from) {
        into.insert(into.end(), from.begin(), from.end());
    };
    merge_set(base.electrical, extra.electrical);
    merge_set(base.google_shopping, extra.google_shopping);
    return base;
}

void sort_category_sets(Categories& c) {
    auto tidy = [](std::vector<std::string>& set) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
    };
    tidy(c.electrical);
    tidy(c.google_shopping);
}

Categories effective_categories_impl(const TypeLibrary& lib, const Appliance& appliance,
                                     int depth) {
    const ResolvedApplianceType& res = resolve_type(lib, appliance.type);
    Categories out = res.categories;
    if (depth < 64) {
        for (const auto& comp : expand_components(lib, appliance)) {
            out = union_categories(std::move(out),
                                   effective_categories_impl(lib, comp, depth + 1));
        }
    }
    sort_category_sets(out);
    return out;
}

std::optional<ResolvedAppliance> resolve_appliance_impl(const TypeLibrary& lib,
                                                        const Appliance& appliance,
                                                        const std::string& path,
                                                        std::vector<Diagnostic>& diags,
                                                        int depth) {
    auto res = lib.resolved.find(appliance.type);
    if (res == lib.resolved.end()) {
        diags.push_back(Diagnostic::error(codes::unknown_appliance_type,
                                          join_path(path, "type"),
                                          "unknown appliance type '" + appliance.type + "'",
                                          appliance.span));
        return std::nullopt;
    }
    ResolvedAppliance out;
    out.appliance = appliance;
    out.type = &res->second;
    if (appliance.subtype) {
        const auto& allowed = res->second.subtypes;
        if (std::find(allowed.begin(), allowed.end(), *appliance.subtype) ==
            allowed.end()) {
            diags.push_back(Diagnostic::error(
                codes::bad_subtype, join_path(path, "subtype"),
                "'" + *appliance.subtype + "' is not a subtype of " + appliance.type,
                appliance.span));
        }
    }
    if (appliance.count && appliance.multiple) {
        diags.push_back(Diagnostic::error(codes::count_and_multiple, path,
                                          "count and multiple are mutually exclusive",
                                          appliance.span));
    }
    out.categories = res->second.categories;
    if (depth < 64) {
        auto expanded = expand_components(lib, appliance);
        for (std::size_t i = 0; i < expanded.size(); ++i) {
            auto comp = resolve_appliance_impl(
                lib, expanded[i], join_path(path, "components/" + std::to_string(i + 1)),
                diags, depth + 1);
            if (comp) {
                out.categories = union_categories(std::move(out.categories),
                                                  comp->categories);
                out.components.push_back(std::move(*comp));
            }
        }
    }
    sort_category_sets(out.categories);
    return out;
}

}  // namespace

Node merge_node(const Node& parent, const Node& child,
                const std::set<std::string>& do_not_inherit,
                std::vector<Diagnostic>* diags, const std::string& path) {
    return merge_mappings(parent, child, do_not_inherit, diags, path);
}

namespace detail {

TypeLibrary build_library(const std::vector<RawTypeDoc>& docs,
                          const std::vector<std::string>& room_vocab,
                          const std::map<std::string, std::vector<std::string>>& taxonomies,
                          std::vector<Diagnostic>& diags) {
    TypeLibrary lib;
    for (const auto& doc : docs) {
        ApplianceType type = bind_type_doc(doc, diags);
        if (type.name.empty()) continue;
        if (lib.types.count(type.name)) {
            diags.push_back(Diagnostic::error(codes::type_dup_name,
                                              library_path(type.name),
                                              "type '" + type.name +
                                                  "' is declared more than once",
                                              type.span));
            continue;
        }
        lib.types.emplace(type.name, std::move(type));
    }

    for (const auto& term :
         vocab_with_dup_check(room_vocab, "vocab/rooms", diags)) {
        lib.room_vocabulary.insert(term);
    }
    for (const auto& [taxonomy, terms] : taxonomies) {
        auto checked = vocab_with_dup_check(terms, "vocab/taxonomies/" + taxonomy, diags);
        lib.taxonomy_vocabularies[taxonomy].insert(checked.begin(), checked.end());
    }

    for (const auto& [name, type] : lib.types) {
        if (type.parent && !lib.types.count(*type.parent)) {
            diags.push_back(Diagnostic::error(codes::type_unknown_parent,
                                              library_path(name, "parent"),
                                              "parent '" + *type.parent +
                                                  "' is not in the library",
                                              type.span));
        }
        if (on_parent_cycle(lib, name)) {
            diags.push_back(Diagnostic::error(codes::type_cycle, library_path(name),
                                              "parent chain of '" + name +
                                                  "' loops back to itself",
                                              type.span));
        }
        if (const Node* comps = type.properties.find("components")) {
            if (comps->is_sequence()) {
                const auto& items = comps->items();
                for (std::size_t i = 0; i < items.size(); ++i) {
                    const Node* ctype =
                        items[i].is_mapping() ? items[i].find("type") : nullptr;
                    if (ctype && ctype->is_string() &&
                        !lib.types.count(ctype->as_string())) {
                        diags.push_back(Diagnostic::error(
                            codes::unknown_appliance_type,
                            library_path(name,
                                         "components/" + std::to_string(i + 1) + "/type"),
                            "component type '" + ctype->as_string() +
                                "' is not in the library",
                            ctype->span));
                    }
                }
            }
        }
    }

    resolve_all(lib, diags);
    check_component_cycles(lib, diags);
    return lib;
}

}  // namespace detail

LibraryLoadResult load_seed_library() {
    LibraryLoadResult result;
    auto docs = detail::seed_type_docs(result.diagnostics);
    result.library = detail::build_library(docs, detail::seed_room_vocab(),
                                           detail::seed_taxonomy_vocab(),
                                           result.diagnostics);
    return result;
}

namespace {

namespace fs = std::filesystem;

bool metadata_extension(const fs::path& p) {
    auto ext = p.extension().string();
    return ext == ".yaml" || ext == ".yml" || ext == ".json";
}

struct FolderDocs {
    std::vector<detail::RawTypeDoc> types;
    std::vector<std::string> rooms;
    std::map<std::string, std::vector<std::string>> taxonomies;
};

std::vector<std::string> string_seq_or_empty(const Node& node, const std::string& path,
                                             std::vector<Diagnostic>& diags) {
    std::vector<std::string> out;
    if (node.is_sequence()) {
        return bind_string_seq(node, path, diags);
    }
    diags.push_back(Diagnostic::error(codes::type_mismatch, path,
                                      "expected a sequence of strings", node.span));
    return out;
}

FolderDocs read_library_folder(const fs::path& folder, std::vector<Diagnostic>& diags) {
    FolderDocs out;
    fs::path root = folder;
    if (fs::exists(root / "central_metadata")) root = root / "central_metadata";

    fs::path types_dir = root / "appliance_types";
    if (fs::is_directory(types_dir)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(types_dir)) {
            if (entry.is_regular_file() && metadata_extension(entry.path()))
                files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            ParseResult parsed = parse_file(file.string());
            extend(diags, parsed.diagnostics);
            out.types.push_back({file.stem().string(), std::move(parsed.root)});
        }
    } else {
        diags.push_back(Diagnostic::error(codes::parse, "",
                                          "library folder has no appliance_types "
                                          "directory",
                                          SourceRef{root.string(), 0}));
    }

    fs::path vocab_dir = root / "vocab";
    for (const char* stem : {"rooms", "taxonomies"}) {
        fs::path found;
        for (const char* ext : {".yaml", ".yml", ".json"}) {
            fs::path candidate = vocab_dir / (std::string(stem) + ext);
            if (fs::is_regular_file(candidate)) {
                found = candidate;
                break;
            }
        }
        if (found.empty()) continue;
        ParseResult parsed = parse_file(found.string());
        extend(diags, parsed.diagnostics);
        if (std::string(stem) == "rooms") {
            const Node* list = parsed.root.is_mapping() ? parsed.root.find("rooms")
                                                        : &parsed.root;
            if (list) out.rooms = string_seq_or_empty(*list, "vocab/rooms", diags);
        } else if (parsed.root.is_mapping()) {
            for (const auto& [taxonomy, terms] : parsed.root.entries()) {
                out.taxonomies[taxonomy] =
                    string_seq_or_empty(terms, "vocab/taxonomies/" + taxonomy, diags);
            }
        }
    }
    return out;
}

}  // namespace

LibraryLoadResult load_type_library(const std::filesystem::path& folder) {
    LibraryLoadResult result;
    FolderDocs docs = read_library_folder(folder, result.diagnostics);
    result.library = detail::build_library(docs.types, docs.rooms, docs.taxonomies,
                                           result.diagnostics);
    return result;
}

LibraryLoadResult load_overlaid_library(
    const std::optional<std::filesystem::path>& overlay) {
    if (!overlay) return load_seed_library();

    LibraryLoadResult result;
    auto docs = detail::seed_type_docs(result.diagnostics);
    FolderDocs user = read_library_folder(*overlay, result.diagnostics);

    // overlay types replace seed types of the same name wholesale
    for (auto& doc : user.types) {
        std::string name = doc.name;
        if (doc.doc.is_mapping()) {
            if (const Node* n = doc.doc.find("name"); n && n->is_string())
                name = n->as_string();
        }
        auto seed = std::find_if(docs.begin(), docs.end(), [&](const detail::RawTypeDoc& d) {
            std::string seed_name = d.name;
            if (const Node* n = d.doc.find("name"); n && n->is_string())
                seed_name = n->as_string();
            return seed_name == name;
        });
        if (seed != docs.end()) {
            seed->doc = doc.doc;
        } else {
            docs.push_back(doc);
        }
    }

    auto rooms = detail::seed_room_vocab();
    for (const auto& room : user.rooms) {
        if (std::find(rooms.begin(), rooms.end(), room) == rooms.end())
            rooms.push_back(room);
    }
    auto taxonomies = detail::seed_taxonomy_vocab();
    for (const auto& [taxonomy, terms] : user.taxonomies) {
        auto& into = taxonomies[taxonomy];
        for (const auto& term : terms) {
            if (std::find(into.begin(), into.end(), term) == into.end())
                into.push_back(term);
        }
    }
    result.library = detail::build_library(docs, rooms, taxonomies, result.diagnostics);
    return result;
}

std::vector<std::string> ancestry(const TypeLibrary& library, const std::string& type_name) {
    auto it = library.types.find(type_name);
    if (it == library.types.end()) {
        throw std::out_of_range("E-TYPE-NOT-FOUND: no appliance type named '" + type_name +
                                "'");
    }
    auto res = library.resolved.find(type_name);
    if (res != library.resolved.end()) return res->second.ancestry;
    // broken chain: walk as far as the data allows
    std::vector<std::string> chain;
    std::set<std::string> visited{type_name};
    const ApplianceType* current = &it->second;
    while (current->parent && visited.insert(*current->parent).second) {
        auto next = library.types.find(*current->parent);
        if (next == library.types.end()) break;
        chain.push_back(*current->parent);
        current = &next->second;
    }
    return chain;
}

const ResolvedApplianceType& resolve_type(const TypeLibrary& library,
                                          const std::string& type_name) {
    auto it = library.resolved.find(type_name);
    if (it == library.resolved.end()) {
        throw std::out_of_range("E-TYPE-NOT-FOUND: no appliance type named '" + type_name +
                                "'");
    }
    return it->second;
}

SchemaFragment merged_additional_schema(const TypeLibrary& library,
                                        const std::string& type_name,
                                        std::vector<Diagnostic>* diags) {
    const ResolvedApplianceType& res = resolve_type(library, type_name);
    std::vector<Diagnostic> scratch;
    std::vector<Diagnostic>& sink = diags ? *diags : scratch;
    const Node* fragment = res.properties.find("additional_properties");
    if (!fragment) return SchemaFragment{};
    return fragment_from_node(*fragment,
                              library_path(type_name, "additional_properties"), sink);
}

std::vector<Prior> collect_priors(const TypeLibrary& library, const std::string& type_name,
                                  const std::string& distribution) {
    if (!is_distribution_name(distribution)) {
        throw std::invalid_argument("E-BAD-DISTRIBUTION-NAME: '" + distribution +
                                    "' is not a distribution name");
    }
    std::vector<std::string> chain{type_name};
    auto ancestors = ancestry(library, type_name);
    chain.insert(chain.end(), ancestors.begin(), ancestors.end());

    std::vector<Prior> out;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        auto type = library.types.find(chain[i]);
        if (type == library.types.end()) continue;
        auto dist = type->second.distributions.find(distribution);
        if (dist == type->second.distributions.end()) continue;
        for (Prior prior : dist->second) {
            prior.distance = static_cast<int>(i);
            out.push_back(std::move(prior));
        }
    }
    return out;
}

std::vector<Appliance> expand_components(const TypeLibrary& library,
                                         const Appliance& appliance) {
    const ResolvedApplianceType& res = resolve_type(library, appliance.type);
    std::vector<Appliance> out = res.components;
    for (const auto& declared : appliance.components) {
        auto match = std::find_if(out.begin(), out.end(), [&](const Appliance& d) {
            return d.type == declared.type && d.instance == declared.instance;
        });
        if (match != out.end()) {
            *match = declared;
        } else {
            out.push_back(declared);
        }
    }
    return out;
}

Categories effective_categories(const TypeLibrary& library, const Appliance& appliance) {
    return effective_categories_impl(library, appliance, 0);
}

std::optional<ResolvedAppliance> resolve_appliance(const TypeLibrary& library,
                                                   const Appliance& appliance,
                                                   const std::string& path,
                                                   std::vector<Diagnostic>& diags) {
    return resolve_appliance_impl(library, appliance, path, diags, 0);
}

std::vector<Diagnostic> validate_library(const TypeLibrary& library) {
    std::vector<Diagnostic> out;
    for (const auto& [name, type] : library.types) {
        extend(out, validate_type_entry(library, name));
    }
    return out;
}

std::vector<Diagnostic> validate_type_entry(const TypeLibrary& library,
                                            const std::string& name) {
    std::vector<Diagnostic> out;
    auto it = library.types.find(name);
    if (it == library.types.end()) return out;
    const ApplianceType& type = it->second;

    if (const Node* cats_node = type.properties.find("categories")) {
        Categories cats = bind_categories(*cats_node, library_path(name, "categories"), out);
        extend(out, check_local_invariants(cats, library_path(name, "categories")));
        auto check_terms = [&](const std::vector<std::string>& terms,
                               const std::string& taxonomy) {
            auto vocab = library.taxonomy_vocabularies.find(taxonomy);
            for (const auto& term : terms) {
                if (vocab == library.taxonomy_vocabularies.end() ||
                    !vocab->second.count(term)) {
                    out.push_back(Diagnostic::warning(
                        codes::category_term,
                        library_path(name, "categories/" + taxonomy),
                        "term '" + term + "' is not in the " + taxonomy + " vocabulary",
                        cats.span));
                }
            }
        };
        check_terms(cats.electrical, "electrical");
        check_terms(cats.google_shopping, "google_shopping");
    }

    for (const auto& [distribution, priors] : type.distributions) {
        for (std::size_t i = 0; i < priors.size(); ++i) {
            extend(out, check_local_invariants(
                            priors[i], library_path(name, "distributions/" + distribution +
                                                              "/" + std::to_string(i + 1))));
        }
    }
    return out;
}

}  // namespace nilmmeta
