#include "nilmmeta/wiring.hpp"

#include <algorithm>
#include <functional>

namespace nilmmeta {

namespace {

std::string meter_doc_path(const MeterRef& ref) {
    std::string prefix =
        ref.building ? "buildings/" + std::to_string(*ref.building) + "/" : "";
    return prefix + "elec_meters/" + std::to_string(ref.meter);
}

struct MeterInfo {
    const ElecMeter* meter = nullptr;
    std::string path;
};

std::map<MeterRef, MeterInfo> index_meters(const Dataset& dataset) {
    std::map<MeterRef, MeterInfo> out;
    auto add = [&](std::optional<int> building, const ElecMeter& meter) {
        MeterRef ref{building, meter.instance};
        out.emplace(ref, MeterInfo{&meter, meter_doc_path(ref)});
    };
    for (const auto& meter : dataset.dataset_level_meters) add(std::nullopt, meter);
    for (const auto& building : dataset.buildings) {
        for (const auto& meter : building.elec_meters) add(building.instance, meter);
    }
    return out;
}

}  // namespace

std::string to_string(const MeterRef& ref) {
    std::string prefix =
        ref.building ? "building" + std::to_string(*ref.building) : "dataset";
    return prefix + "/meter" + std::to_string(ref.meter);
}

WiringBuildResult build_wiring_forest(const Dataset& dataset) {
    WiringBuildResult out;
    WiringForest& forest = out.forest;
    auto meters = index_meters(dataset);

    std::set<int> building_instances;
    for (const auto& building : dataset.buildings)
        building_instances.insert(building.instance);

    for (const auto& [ref, info] : meters) forest.nodes.insert(ref);

    for (const auto& [ref, info] : meters) {
        const ElecMeter& meter = *info.meter;
        if (meter.site_meter) forest.roots.insert(ref);
        if (!meter.site_meter && !meter.submeter_of) {
            out.diagnostics.push_back(Diagnostic::error(
                codes::wiring_no_parent_or_root, info.path,
                "meter is neither a site meter nor a submeter", meter.span));
        }
        if (!meter.submeter_of) continue;

        std::optional<int> parent_building = ref.building;
        if (meter.upstream_meter_in_building) {
            parent_building = *meter.upstream_meter_in_building;
            if (!building_instances.count(*parent_building)) {
                out.diagnostics.push_back(Diagnostic::error(
                    codes::wiring_bad_building,
                    join_path(info.path, "upstream_meter_in_building"),
                    "building " + std::to_string(*parent_building) + " does not exist",
                    meter.span));
                continue;
            }
        }
        MeterRef parent{parent_building, *meter.submeter_of};
        if (!meters.count(parent)) {
            out.diagnostics.push_back(Diagnostic::error(
                codes::wiring_dangling, join_path(info.path, "submeter_of"),
                "upstream meter " + to_string(parent) + " does not exist", meter.span));
            continue;
        }
        forest.edges.emplace(ref, parent);
    }

    // Parent-following with a visited map; the edge that closes a cycle is
    // the diagnostic site and is dropped so the forest stays acyclic.
    enum class Color { White, Gray, Black };
    std::map<MeterRef, Color> color;
    for (const auto& node : forest.nodes) color[node] = Color::White;
    for (const auto& start : forest.nodes) {
        if (color[start] != Color::White) continue;
        std::vector<MeterRef> trail;
        MeterRef cur = start;
        while (true) {
            color[cur] = Color::Gray;
            trail.push_back(cur);
            auto edge = forest.edges.find(cur);
            if (edge == forest.edges.end()) break;
            const MeterRef& parent = edge->second;
            if (color[parent] == Color::Gray) {
                out.diagnostics.push_back(Diagnostic::error(
                    codes::wiring_cycle,
                    join_path(meter_doc_path(cur), "submeter_of"),
                    "wiring loops back to " + to_string(parent),
                    meters.at(cur).meter->span));
                forest.edges.erase(edge);
                break;
            }
            if (color[parent] == Color::Black) break;
            cur = parent;
        }
        for (const auto& node : trail) color[node] = Color::Black;
    }
    return out;
}

std::vector<MeterRef> submeters_of(const WiringForest& forest, const MeterRef& ref) {
    if (!forest.contains(ref))
        throw std::out_of_range("E-REF-NOT-FOUND: no meter " + to_string(ref));
    std::vector<MeterRef> out;
    for (const auto& [child, parent] : forest.edges) {
        if (parent == ref) out.push_back(child);
    }
    return out;
}

std::optional<MeterRef> upstream_of(const WiringForest& forest, const MeterRef& ref) {
    if (!forest.contains(ref))
        throw std::out_of_range("E-REF-NOT-FOUND: no meter " + to_string(ref));
    auto edge = forest.edges.find(ref);
    if (edge == forest.edges.end()) return std::nullopt;
    return edge->second;
}

std::vector<Diagnostic> validate_wiring(const Dataset& dataset, int depth_limit) {
    WiringBuildResult built = build_wiring_forest(dataset);
    std::vector<Diagnostic> out = std::move(built.diagnostics);
    const WiringForest& forest = built.forest;

    for (const auto& building : dataset.buildings) {
        if (building.elec_meters.empty()) continue;
        bool has_site = std::any_of(building.elec_meters.begin(),
                                    building.elec_meters.end(),
                                    [](const ElecMeter& m) { return m.site_meter; });
        if (!has_site) {
            out.push_back(Diagnostic::warning(
                codes::no_site_meter,
                "buildings/" + std::to_string(building.instance) + "/elec_meters",
                "building has meters but no site meter", building.span));
        }
    }

    std::map<MeterRef, std::vector<MeterRef>> children;
    for (const auto& [child, parent] : forest.edges) children[parent].push_back(child);
    for (const auto& root : forest.roots) {
        MeterRef deepest = root;
        int max_depth = 0;
        std::function<void(const MeterRef&, int)> walk = [&](const MeterRef& node,
                                                             int depth) {
            if (depth > max_depth) {
                max_depth = depth;
                deepest = node;
            }
            auto kids = children.find(node);
            if (kids == children.end()) return;
            for (const auto& child : kids->second) walk(child, depth + 1);
        };
        walk(root, 1);
        if (max_depth > depth_limit) {
            out.push_back(Diagnostic::warning(
                codes::deep_tree, meter_doc_path(deepest),
                "wiring tree is " + std::to_string(max_depth) + " meters deep, limit is " +
                    std::to_string(depth_limit),
                SourceRef{}));
        }
    }
    return out;
}

std::string render_forest(const Dataset& dataset, const WiringForest& forest) {
    std::map<MeterRef, std::string> dominant;
    auto note = [&](std::optional<int> building, const ElecMeter& meter) {
        if (meter.dominant_appliance)
            dominant[MeterRef{building, meter.instance}] = meter.dominant_appliance->type;
    };
    for (const auto& meter : dataset.dataset_level_meters) note(std::nullopt, meter);
    for (const auto& building : dataset.buildings)
        for (const auto& meter : building.elec_meters) note(building.instance, meter);

    std::map<MeterRef, std::vector<MeterRef>> children;
    for (const auto& [child, parent] : forest.edges) children[parent].push_back(child);

    std::string out;
    std::set<MeterRef> printed;
    std::function<void(const MeterRef&, int, bool)> emit = [&](const MeterRef& node,
                                                               int depth, bool root) {
        printed.insert(node);
        out.append(static_cast<std::size_t>(2 * depth), ' ');
        if (root) out += "* ";
        out += to_string(node);
        auto dom = dominant.find(node);
        if (dom != dominant.end()) out += " (" + dom->second + ")";
        out += '\n';
        auto kids = children.find(node);
        if (kids == children.end()) return;
        for (const auto& child : kids->second) emit(child, depth + 1, false);
    };
    for (const auto& root : forest.roots) emit(root, 0, true);
    for (const auto& node : forest.nodes) {
        if (!printed.count(node) && !forest.edges.count(node)) emit(node, 0, false);
    }
    return out;
}

}  // namespace nilmmeta
