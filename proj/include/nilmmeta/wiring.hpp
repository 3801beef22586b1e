#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nilmmeta/diagnostics.hpp"
#include "nilmmeta/model.hpp"

namespace nilmmeta {

/// Identity of a meter: its building instance plus its meter instance.
/// Meters contained directly in a dataset have no building.
struct MeterRef {
    std::optional<int> building;
    int meter = 0;

    friend auto operator<=>(const MeterRef&, const MeterRef&) = default;
};

/// "building<B>/meter<M>", or "dataset/meter<M>" for dataset-level meters.
std::string to_string(const MeterRef& ref);

/// The mains-wiring forest: one node per meter, an edge from each submeter
/// to its upstream meter, and the site meters as roots.
struct WiringForest {
    std::set<MeterRef> nodes;
    std::map<MeterRef, MeterRef> edges;
    std::set<MeterRef> roots;

    bool contains(const MeterRef& ref) const { return nodes.count(ref) != 0; }
};

struct WiringBuildResult {
    WiringForest forest;
    std::vector<Diagnostic> diagnostics;
};

/// Build the forest over every meter of the dataset. submeter_of resolves in
/// the meter's own building unless upstream_meter_in_building says otherwise.
/// Problems (dangling parents, unknown buildings, cycles, meters that are
/// neither root nor submeter) surface as diagnostics; offending edges are
/// dropped so the result is always acyclic.
WiringBuildResult build_wiring_forest(const Dataset& dataset);

/// Direct children of ref, sorted. Throws std::out_of_range (message carries
/// E-REF-NOT-FOUND) when ref is not a node.
std::vector<MeterRef> submeters_of(const WiringForest& forest, const MeterRef& ref);

/// Parent of ref, or nothing for a root. Throws std::out_of_range (message
/// carries E-REF-NOT-FOUND) when ref is not a node.
std::optional<MeterRef> upstream_of(const WiringForest& forest, const MeterRef& ref);

/// build_wiring_forest plus structural warnings: W-NO-SITE-METER for each
/// building that has meters but no site meter, W-DEEP-TREE for each tree
/// deeper than depth_limit nodes.
std::vector<Diagnostic> validate_wiring(const Dataset& dataset, int depth_limit = 6);

/// Text rendering: one node per line, two-space indent per depth, roots
/// prefixed "*", labels as in to_string plus the dominant appliance type in
/// parentheses when the meter declares one. Nodes unreachable from any root
/// are printed last as unmarked top-level lines.
std::string render_forest(const Dataset& dataset, const WiringForest& forest);

}  // namespace nilmmeta
