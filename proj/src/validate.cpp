#include "nilmmeta/validate.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include <json.hpp>

#include "nilmmeta/schema.hpp"
#include "nilmmeta/wiring.hpp"

namespace nilmmeta {

namespace {

bool type_resolves(const TypeLibrary& library, const std::string& name) {
    return library.resolved.count(name) != 0;
}

void check_extras_recursive(const TypeLibrary& library, const Appliance& appliance,
                            const std::string& path, std::vector<Diagnostic>& out) {
    extend(out, validate_appliance_extras(library, appliance, path));
    for (std::size_t i = 0; i < appliance.components.size(); ++i) {
        check_extras_recursive(library, appliance.components[i],
                               join_path(path, "components/" + std::to_string(i + 1)),
                               out);
    }
}

void used_types_of(const Appliance& appliance, std::set<std::string>& out) {
    out.insert(appliance.type);
    for (const auto& component : appliance.components) used_types_of(component, out);
}

/// Declared types plus everything reachable from them: ancestors and the
/// types of default components, transitively.
std::set<std::string> used_type_closure(const Dataset& dataset,
                                        const TypeLibrary& library) {
    std::set<std::string> used;
    auto from_meter = [&](const ElecMeter& meter) {
        for (const auto& appliance : meter.appliances) used_types_of(appliance, used);
    };
    for (const auto& meter : dataset.dataset_level_meters) from_meter(meter);
    for (const auto& building : dataset.buildings)
        for (const auto& meter : building.elec_meters) from_meter(meter);

    std::vector<std::string> frontier(used.begin(), used.end());
    while (!frontier.empty()) {
        std::string name = std::move(frontier.back());
        frontier.pop_back();
        auto it = library.resolved.find(name);
        if (it == library.resolved.end()) continue;
        for (const auto& ancestor : it->second.ancestry) {
            if (used.insert(ancestor).second) frontier.push_back(ancestor);
        }
        for (const auto& component : it->second.components) {
            if (used.insert(component.type).second) frontier.push_back(component.type);
        }
    }
    return used;
}

/// Document rank for ordering: the dataset document first, then buildings by
/// instance, then findings about the type library.
std::pair<int, int> doc_rank(const std::string& path) {
    if (path.rfind("buildings/", 0) == 0) {
        int n = 0;
        std::size_t i = 10;
        while (i < path.size() && path[i] >= '0' && path[i] <= '9') {
            n = n * 10 + (path[i] - '0');
            ++i;
        }
        return {1, n};
    }
    if (path.rfind("library/", 0) == 0) return {2, 0};
    return {0, 0};
}

}  // namespace

std::vector<Diagnostic> validate_appliance_extras(const TypeLibrary& library,
                                                  const Appliance& appliance,
                                                  const std::string& path) {
    std::vector<Diagnostic> out;
    if (!type_resolves(library, appliance.type)) return out;
    SchemaFragment fragment = merged_additional_schema(library, appliance.type);
    extend(out, validate_against_fragment(appliance.extras, fragment, path));
    for (const auto& [key, value] : appliance.extras.entries()) {
        if (!fragment.has(key)) {
            out.push_back(Diagnostic::error(
                codes::unknown_appliance_field, join_path(path, key),
                "'" + key + "' is not a field of appliance type '" + appliance.type +
                    "'",
                value.span));
        }
    }
    return out;
}

ValidationReport validate_dataset(const Dataset& dataset, const TypeLibrary& library) {
    std::vector<Diagnostic> diags = check_all_local_invariants(dataset);

    auto each_meter = [&](auto&& fn) {
        for (const auto& meter : dataset.dataset_level_meters)
            fn(nullptr, meter, "elec_meters/" + std::to_string(meter.instance));
        for (const auto& building : dataset.buildings) {
            for (const auto& meter : building.elec_meters) {
                fn(&building, meter,
                   "buildings/" + std::to_string(building.instance) + "/elec_meters/" +
                       std::to_string(meter.instance));
            }
        }
    };

    each_meter([&](const Building*, const ElecMeter& meter, const std::string& path) {
        if (meter.device_model.empty()) return;
        if (!dataset.meter_devices.count(meter.device_model)) {
            diags.push_back(Diagnostic::error(
                codes::unknown_device, join_path(path, "device_model"),
                "device model '" + meter.device_model +
                    "' is not declared in meter_devices",
                meter.span));
        }
    });

    extend(diags, validate_wiring(dataset));

    each_meter([&](const Building*, const ElecMeter& meter, const std::string& path) {
        for (std::size_t i = 0; i < meter.appliances.size(); ++i) {
            resolve_appliance(library, meter.appliances[i],
                              join_path(path, "appliances/" + std::to_string(i + 1)),
                              diags);
        }
    });

    each_meter([&](const Building*, const ElecMeter& meter, const std::string& path) {
        for (std::size_t i = 0; i < meter.appliances.size(); ++i) {
            check_extras_recursive(library, meter.appliances[i],
                                   join_path(path, "appliances/" + std::to_string(i + 1)),
                                   diags);
        }
    });

    // The same appliance (type, instance) listed on two meters of a building
    // is a representation some datasets use for split-supply appliances.
    for (const auto& building : dataset.buildings) {
        std::map<std::pair<std::string, int>, int> first_meter;
        for (const auto& meter : building.elec_meters) {
            for (const auto& appliance : meter.appliances) {
                auto key = std::make_pair(appliance.type, appliance.instance);
                auto [it, fresh] = first_meter.emplace(key, meter.instance);
                if (!fresh && it->second != meter.instance) {
                    diags.push_back(Diagnostic::warning(
                        codes::shared_appliance,
                        "buildings/" + std::to_string(building.instance) +
                            "/elec_meters/" + std::to_string(meter.instance) +
                            "/appliances",
                        appliance.type + " " + std::to_string(appliance.instance) +
                            " is also listed on meter " + std::to_string(it->second),
                        appliance.span));
                }
            }
        }
    }

    for (const auto& building : dataset.buildings) {
        std::string bpath = "buildings/" + std::to_string(building.instance);
        for (std::size_t i = 0; i < building.rooms.size(); ++i) {
            const Room& room = building.rooms[i];
            if (!room.name.empty() && !library.in_room_vocabulary(room.name)) {
                diags.push_back(Diagnostic::error(
                    codes::room_name,
                    join_path(bpath, "rooms/" + std::to_string(i + 1) + "/name"),
                    "'" + room.name + "' is not in the room vocabulary", room.span));
            }
        }
    }
    each_meter([&](const Building* building, const ElecMeter& meter,
                   const std::string& path) {
        for (std::size_t i = 0; i < meter.appliances.size(); ++i) {
            const Appliance& appliance = meter.appliances[i];
            if (!appliance.room) continue;
            std::string rpath = join_path(
                path, "appliances/" + std::to_string(i + 1) + "/room");
            if (building == nullptr) {
                diags.push_back(Diagnostic::error(
                    codes::room_ref, rpath,
                    "a dataset-level meter has no building rooms to refer to",
                    appliance.room->span));
                continue;
            }
            bool found = std::any_of(
                building->rooms.begin(), building->rooms.end(), [&](const Room& room) {
                    return room.name == appliance.room->name &&
                           room.instance == appliance.room->instance;
                });
            if (!found) {
                diags.push_back(Diagnostic::error(
                    codes::room_ref, rpath,
                    "room " + appliance.room->name + " " +
                        std::to_string(appliance.room->instance) +
                        " is not in the building's room list",
                    appliance.room->span));
            }
        }
    });

    for (const auto& type_name : used_type_closure(dataset, library)) {
        if (library.has_type(type_name))
            extend(diags, validate_type_entry(library, type_name));
    }

    return assemble_report(std::move(diags));
}

ValidationReport assemble_report(std::vector<Diagnostic> diagnostics) {
    std::vector<Diagnostic> kept;
    std::set<std::tuple<int, std::string, std::string>> seen;
    for (auto& diag : diagnostics) {
        auto key = std::make_tuple(static_cast<int>(diag.severity), diag.code, diag.path);
        if (seen.insert(key).second) kept.push_back(std::move(diag));
    }
    std::stable_sort(kept.begin(), kept.end(),
                     [](const Diagnostic& a, const Diagnostic& b) {
                         return doc_rank(a.path) < doc_rank(b.path);
                     });
    ValidationReport report;
    report.diagnostics = std::move(kept);
    return report;
}

const std::vector<std::string>& model_type_vocabulary() {
    static const std::vector<std::string> names = {"HMM", "FHMM", "GMM"};
    return names;
}

std::vector<Diagnostic> validate_learnt_model(const LearntModel& model,
                                              const TypeLibrary& library,
                                              const std::string& path) {
    std::vector<Diagnostic> out;
    const auto& vocab = model_type_vocabulary();
    if (!model.model_type.empty() &&
        std::find(vocab.begin(), vocab.end(), model.model_type) == vocab.end()) {
        out.push_back(Diagnostic::error(
            codes::bad_model_type, join_path(path, "model_type"),
            "'" + model.model_type + "' is not a known model type", model.span));
    }
    if (!model.appliance_type.empty() && !type_resolves(library, model.appliance_type)) {
        out.push_back(Diagnostic::error(
            codes::unknown_appliance_type, join_path(path, "appliance_type"),
            "'" + model.appliance_type + "' is not a known appliance type", model.span));
    }
    return out;
}

std::string render_report_text(const ValidationReport& report) {
    std::string out;
    for (const auto& diag : report.diagnostics) {
        out += diag.to_text();
        out += '\n';
    }
    out += std::to_string(report.error_count()) + " errors, " +
           std::to_string(report.warning_count()) + " warnings\n";
    return out;
}

std::string render_report_json(const ValidationReport& report) {
    nlohmann::json doc;
    doc["valid"] = report.valid();
    doc["error_count"] = report.error_count();
    doc["warning_count"] = report.warning_count();
    nlohmann::json list = nlohmann::json::array();
    for (const auto& diag : report.diagnostics) {
        nlohmann::json entry;
        entry["severity"] = severity_name(diag.severity);
        entry["code"] = diag.code;
        entry["path"] = diag.path;
        entry["message"] = diag.message;
        if (diag.where.known()) {
            entry["file"] = diag.where.file;
            entry["line"] = diag.where.line;
        }
        list.push_back(std::move(entry));
    }
    doc["diagnostics"] = std::move(list);
    return doc.dump(2) + "\n";
}

}  // namespace nilmmeta
