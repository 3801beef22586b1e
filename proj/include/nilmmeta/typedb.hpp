#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nilmmeta/diagnostics.hpp"
#include "nilmmeta/model.hpp"
#include "nilmmeta/node.hpp"
#include "nilmmeta/schema.hpp"

namespace nilmmeta {

/// One common-metadata vocabulary entry as authored: a name, an optional
/// prototype parent, and the property mapping the inheritance engine works
/// on (everything except name and parent).
struct ApplianceType {
    std::string name;
    std::optional<std::string> parent;
    Node properties = Node::mapping();
    /// Property names this type refuses to inherit from its parent.
    std::vector<std::string> do_not_inherit;
    /// Typed view of properties["distributions"]: the priors declared on
    /// this type itself, before any inheritance.
    DistributionSet distributions;
    SourceRef span;
};

/// An ApplianceType with its whole ancestor chain folded in.
struct ResolvedApplianceType {
    std::string name;
    /// Ancestor names, direct parent first, root last.
    std::vector<std::string> ancestry;
    /// Merged property mapping; never contains parent or do_not_inherit.
    Node properties = Node::mapping();
    std::vector<std::string> subtypes;
    Categories categories;
    /// Default components every instance of this type is assumed to contain.
    std::vector<Appliance> components;
    std::optional<std::string> description;
};

struct TypeLibrary {
    std::map<std::string, ApplianceType> types;
    std::set<std::string> room_vocabulary;
    std::map<std::string, std::set<std::string>> taxonomy_vocabularies;
    /// Eagerly computed resolutions for every type whose parent chain is
    /// sound. Filled once at load; read-only afterwards, so concurrent
    /// readers need no locking.
    std::map<std::string, ResolvedApplianceType> resolved;

    bool has_type(const std::string& name) const { return types.count(name) > 0; }
    bool in_room_vocabulary(const std::string& name) const {
        return room_vocabulary.count(name) > 0;
    }
};

struct LibraryLoadResult {
    TypeLibrary library;
    std::vector<Diagnostic> diagnostics;
};

/// Combine a parent property mapping with a child one:
/// sequences take the union (parent elements first, duplicates collapsed by
/// deep equality), scalars take the child's value, mappings merge
/// recursively, and parent keys named in do_not_inherit are not copied.
/// Keys only in the child always survive. Mismatched kinds under one key
/// report E-MERGE-KIND-CONFLICT (the child's value is kept). do_not_inherit
/// applies to this call's top-level keys only.
Node merge_node(const Node& parent, const Node& child,
                const std::set<std::string>& do_not_inherit,
                std::vector<Diagnostic>* diags = nullptr, const std::string& path = "");

/// The built-in seed library: core appliance types plus room and taxonomy
/// vocabularies.
LibraryLoadResult load_seed_library();

/// Load a library from a folder holding central_metadata/appliance_types/
/// (one document per type) and central_metadata/vocab/{rooms,taxonomies}.
/// The folder may also be the central_metadata directory itself.
LibraryLoadResult load_type_library(const std::filesystem::path& folder);

/// Seed library with a user folder overlaid: same-name overlay types replace
/// seed types wholesale; vocabularies are unioned.
LibraryLoadResult load_overlaid_library(const std::optional<std::filesystem::path>& overlay);

/// Ancestor names of a type, direct parent first, root last. Throws
/// std::out_of_range for unknown names (message carries E-TYPE-NOT-FOUND).
std::vector<std::string> ancestry(const TypeLibrary& library, const std::string& type_name);

/// The precomputed resolution of a type. Throws std::out_of_range for
/// unknown or unresolvable (broken-chain) names.
const ResolvedApplianceType& resolve_type(const TypeLibrary& library,
                                          const std::string& type_name);

/// The additional-properties schema of a type with every ancestor fragment
/// folded in; nearer declarations shadow farther ones.
SchemaFragment merged_additional_schema(const TypeLibrary& library,
                                        const std::string& type_name,
                                        std::vector<Diagnostic>* diags = nullptr);

/// All priors declared for one distribution along the type's chain, each
/// tagged with its ancestry distance (0 = declared on the type itself,
/// 1 = parent, ...), ordered by ascending distance then declaration order.
/// Throws std::out_of_range for unknown types and std::invalid_argument for
/// names outside the distribution list (message carries
/// E-BAD-DISTRIBUTION-NAME).
std::vector<Prior> collect_priors(const TypeLibrary& library, const std::string& type_name,
                                  const std::string& distribution);

/// The component list an appliance instance actually has: the type's default
/// components with instance-declared entries substituted by (type, instance)
/// match, plus declared components that match no default.
std::vector<Appliance> expand_components(const TypeLibrary& library,
                                         const Appliance& appliance);

/// Categories of an appliance including its components: set-valued
/// taxonomies union over the resolved type and every recursive component
/// (sorted, duplicate-free); traditional and size come from the appliance's
/// own type alone. Throws std::out_of_range when any type involved is
/// unknown.
Categories effective_categories(const TypeLibrary& library, const Appliance& appliance);

struct ResolvedAppliance {
    Appliance appliance;
    const ResolvedApplianceType* type = nullptr;
    std::vector<ResolvedAppliance> components;
    Categories categories;
};

/// Join an appliance instance with its type: attach the resolution, check
/// the subtype against the resolved subtype set, expand components
/// recursively, and compute effective categories. Problems surface as
/// diagnostics (E-UNKNOWN-APPLIANCE-TYPE, E-BAD-SUBTYPE,
/// E-COUNT-AND-MULTIPLE); an unknown top-level type yields no record.
std::optional<ResolvedAppliance> resolve_appliance(const TypeLibrary& library,
                                                   const Appliance& appliance,
                                                   const std::string& path,
                                                   std::vector<Diagnostic>& diags);

/// Library-wide self checks: category and prior invariants of every type
/// (raw declarations), plus W-CATEGORY-TERM warnings for taxonomy terms
/// outside the library's vocabularies.
std::vector<Diagnostic> validate_library(const TypeLibrary& library);

/// The validate_library checks for a single type entry.
std::vector<Diagnostic> validate_type_entry(const TypeLibrary& library,
                                            const std::string& name);

}  // namespace nilmmeta
