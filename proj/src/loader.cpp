#include "nilmmeta/loader.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace nilmmeta {

namespace {

namespace fs = std::filesystem;

using Diags = std::vector<Diagnostic>;

bool metadata_has_known_extension(const std::string& filename) {
    for (const char* ext : {".yaml", ".yml", ".json"}) {
        std::string suffix(ext);
        if (filename.size() > suffix.size() &&
            filename.compare(filename.size() - suffix.size(), suffix.size(), suffix) == 0)
            return true;
    }
    return false;
}

void mismatch(Diags& diags, const std::string& path, const std::string& expected,
              const Node& got) {
    diags.push_back(Diagnostic::error(codes::type_mismatch, path,
                                      "expected " + expected + ", got " +
                                          std::string(node_kind_name(got.kind())),
                                      got.span));
}

std::optional<std::string> as_string_field(const Node& node, const std::string& path,
                                           Diags& diags) {
    if (node.is_string()) return node.as_string();
    mismatch(diags, path, "a string", node);
    return std::nullopt;
}

std::optional<int> as_int_field(const Node& node, const std::string& path, Diags& diags) {
    if (node.is_integer()) return static_cast<int>(node.as_integer());
    mismatch(diags, path, "an integer", node);
    return std::nullopt;
}

std::optional<double> as_real_field(const Node& node, const std::string& path,
                                    Diags& diags) {
    if (node.is_number()) return node.as_real();
    mismatch(diags, path, "a number", node);
    return std::nullopt;
}

std::optional<bool> as_bool_field(const Node& node, const std::string& path, Diags& diags) {
    if (node.is_boolean()) return node.as_boolean();
    mismatch(diags, path, "a boolean", node);
    return std::nullopt;
}

std::optional<Date> as_date_field(const Node& node, const std::string& path, Diags& diags) {
    if (node.is_integer()) {
        Date d;
        d.year = static_cast<int>(node.as_integer());
        d.bare_year = true;
        d.span = node.span;
        return d;
    }
    if (node.is_string()) {
        auto parsed = Date::parse(node.as_string());
        if (parsed) {
            parsed->span = node.span;
            return parsed;
        }
    }
    mismatch(diags, path, "a date (YYYY-MM-DD or bare year)", node);
    return std::nullopt;
}

std::vector<std::string> as_string_list(const Node& node, const std::string& path,
                                        Diags& diags) {
    std::vector<std::string> out;
    if (!node.is_sequence()) {
        mismatch(diags, path, "a sequence of strings", node);
        return out;
    }
    const auto& items = node.items();
    for (std::size_t i = 0; i < items.size(); ++i) {
        auto s = as_string_field(items[i], join_path(path, std::to_string(i + 1)), diags);
        if (s) out.push_back(std::move(*s));
    }
    return out;
}

void missing(Diags& diags, const std::string& path, const std::string& field,
             SourceRef span) {
    diags.push_back(Diagnostic::error(codes::missing_required, join_path(path, field),
                                      "required field '" + field + "' is missing", span));
}

void unknown(Diags& diags, const std::string& path, const std::string& field,
             const Node& value) {
    diags.push_back(Diagnostic::warning(codes::unknown_field, join_path(path, field),
                                        "unknown field '" + field + "'", value.span));
}

DateRange bind_date_range(const Node& node, const std::string& path, Diags& diags) {
    DateRange out;
    out.span = node.span;
    if (!node.is_mapping()) {
        mismatch(diags, path, "a mapping with start and end", node);
        return out;
    }
    bool has_start = false;
    for (const auto& [key, value] : node.entries()) {
        std::string kpath = join_path(path, key);
        if (key == "start") {
            if (auto d = as_date_field(value, kpath, diags)) {
                out.start = *d;
                has_start = true;
            }
        } else if (key == "end") {
            if (auto d = as_date_field(value, kpath, diags)) out.end = *d;
        } else {
            unknown(diags, path, key, value);
        }
    }
    if (!has_start) missing(diags, path, "start", node.span);
    return out;
}

GeoLocation bind_geo(const Node& node, const std::string& path, Diags& diags) {
    GeoLocation out;
    out.span = node.span;
    if (!node.is_mapping()) {
        mismatch(diags, path, "a mapping with latitude and longitude", node);
        return out;
    }
    bool has_lat = false, has_lon = false;
    for (const auto& [key, value] : node.entries()) {
        std::string kpath = join_path(path, key);
        if (key == "latitude") {
            if (auto v = as_real_field(value, kpath, diags)) {
                out.latitude = *v;
                has_lat = true;
            }
        } else if (key == "longitude") {
            if (auto v = as_real_field(value, kpath, diags)) {
                out.longitude = *v;
                has_lon = true;
            }
        } else if (key == "locality") {
            out.locality = as_string_field(value, kpath, diags);
        } else if (key == "country") {
            out.country = as_string_field(value, kpath, diags);
        } else {
            unknown(diags, path, key, value);
        }
    }
    if (!has_lat) missing(diags, path, "latitude", node.span);
    if (!has_lon) missing(diags, path, "longitude", node.span);
    return out;
}

Measurement bind_measurement(const Node& node, const std::string& path, Diags& diags) {
    Measurement out;
    out.span = node.span;
    if (!node.is_mapping()) {
        mismatch(diags, path, "a measurement mapping", node);
        return out;
    }
    bool has_quantity = false;
    for (const auto& [key, value] : node.entries()) {
        std::string kpath = join_path(path, key);
        if (key == "physical_quantity") {
            if (auto s = as_string_field(value, kpath, diags)) {
                out.physical_quantity = std::move(*s);
                has_quantity = true;
            }
        } else if (key == "ac_type") {
            out.ac_type = as_string_field(value, kpath, diags);
        } else if (key == "lower_limit") {
            out.lower_limit = as_real_field(value, kpath, diags);
        } else if (key == "upper_limit") {
            out.upper_limit = as_real_field(value, kpath, diags);
        } else {
            unknown(diags, path, key, value);
        }
    }
    if (!has_quantity) missing(diags, path, "physical_quantity", node.span);
    return out;
}

MeterDevice bind_device(const Node& node, const std::string& path, Diags& diags) {
    MeterDevice out;
    out.span = node.span;
    if (!node.is_mapping()) {
        mismatch(diags, path, "a meter device mapping", node);
        return out;
    }
    for (const auto& [key, value] : node.entries()) {
        std::string kpath = join_path(path, key);
        if (key == "model") {
            if (auto s = as_string_field(value, kpath, diags)) out.model = std::move(*s);
        } else if (key == "manufacturer") {
            out.manufacturer = as_string_field(value, kpath, diags);
        } else if (key == "sample_period") {
            out.sample_period = as_real_field(value, kpath, diags);
        } else if (key == "max_sample_period") {
            out.max_sample_period = as_real_field(value, kpath, diags);
        } else if (key == "wireless") {
            out.wireless = as_bool_field(value, kpath, diags);
        } else if (key == "description") {
            out.description = as_string_field(value, kpath, diags);
        } else if (key == "measurements") {
            if (value.is_sequence()) {
                const auto& items = value.items();
                for (std::size_t i = 0; i < items.size(); ++i) {
                    out.measurements.push_back(bind_measurement(
                        items[i], join_path(kpath, std::to_string(i + 1)), diags));
                }
            } else {
                mismatch(diags, kpath, "a sequence of measurements", value);
            }
        } else {
            unknown(diags, path, key, value);
        }
    }
    return out;
}

Room bind_room(const Node& node, const std::string& path, Diags& diags) {
    Room out;
    out.span = node.span;
    if (node.is_string()) {
        out.name = node.as_string();
        return out;
    }
    if (!node.is_mapping()) {
        mismatch(diags, path, "a room name or mapping", node);
        return out;
    }
    bool has_name = false;
    for (const auto& [key, value] : node.entries()) {
        std::string kpath = join_path(path, key);
        if (key == "name") {
            if (auto s = as_string_field(value, kpath, diags)) {
                out.name = std::move(*s);
                has_name = true;
            }
        } else if (key == "instance") {
            if (auto v = as_int_field(value, kpath, diags)) out.instance = *v;
        } else {
            unknown(diags, path, key, value);
        }
    }
    if (!has_name) missing(diags, path, "name", node.span);
    return out;
}

RoomRef bind_room_ref(const Node& node, const std::string& path, Diags& diags) {
    RoomRef out;
    out.span = node.span;
    if (node.is_string()) {
        out.name = node.as_string();
        return out;
    }
    if (!node.is_mapping()) {
        mismatch(diags, path, "a room name or mapping", node);
        return out;
    }
    for (const auto& [key, value] : node.entries()) {
        std::string kpath = join_path(path, key);
        if (key == "name") {
            if (auto s = as_string_field(value, kpath, diags)) out.name = std::move(*s);
        } else if (key == "instance") {
            if (auto v = as_int_field(value, kpath, diags)) out.instance = *v;
        } else {
            unknown(diags, path, key, value);
        }
    }
    if (out.name.empty()) missing(diags, path, "name", node.span);
    return out;
}

Sensor bind_sensor(const Node& node, const std::string& path, Diags& diags) {
    Sensor out;
    out.span = node.span;
    out.annotations = Node::mapping({}, node.span);
    if (node.is_string()) {
        out.data_location = node.as_string();
        return out;
    }
    if (!node.is_mapping()) {
        mismatch(diags, path, "a sensor mapping", node);
        return out;
    }
    for (const auto& [key, value] : node.entries()) {
        if (key == "data_location") {
            if (auto s = as_string_field(value, join_path(path, key), diags))
                out.data_location = std::move(*s);
        } else {
            out.annotations.set(key, value);
        }
    }
    return out;
}

PreprocessingStep bind_step(const Node& node, const std::string& path, Diags& diags) {
    PreprocessingStep out;
    out.span = node.span;
    out.parameters = Node::mapping({}, node.span);
    if (!node.is_mapping()) {
        mismatch(diags, path, "a preprocessing mapping", node);
        return out;
    }
    for (const auto& [key, value] : node.entries()) {
        if (key == "filter") {
            if (auto s = as_string_field(value, join_path(path, key), diags))
                out.filter = std::move(*s);
        } else if (value.is_scalar() || value.is_null()) {
            out.parameters.set(key, value);
        } else {
            mismatch(diags, join_path(path, key), "a scalar parameter", value);
        }
    }
    if (out.filter.empty()) missing(diags, path, "filter", node.span);
    return out;
}

DominantApplianceRef bind_dominant(const Node& node, const std::string& path, Diags& diags) {
    DominantApplianceRef out;
    out.span = node.span;
    if (node.is_string()) {
        out.type = node.as_string();
        return out;
    }
    if (!node.is_mapping()) {
        mismatch(diags, path, "an appliance reference", node);
        return out;
    }
    for (const auto& [key, value] : node.entries()) {
        std::string kpath = join_path(path, key);
        if (key == "type") {
            if (auto s = as_string_field(value, kpath, diags)) out.type = std::move(*s);
        } else if (key == "instance") {
            if (auto v = as_int_field(value, kpath, diags)) out.instance = *v;
        } else {
            unknown(diags, path, key, value);
        }
    }
    if (out.type.empty()) missing(diags, path, "type", node.span);
    return out;
}

ElecMeter bind_meter(const Node& node, const std::string& path, Diags& diags,
                     bool instance_from_key = false) {
    ElecMeter out;
    out.span = node.span;
    if (!node.is_mapping()) {
        mismatch(diags, path, "a meter mapping", node);
        return out;
    }
    bool has_device = false, has_instance = false;
    for (const auto& [key, value] : node.entries()) {
        std::string kpath = join_path(path, key);
        if (key == "instance") {
            if (auto v = as_int_field(value, kpath, diags)) {
                out.instance = *v;
                has_instance = true;
            }
        } else if (key == "device_model") {
            if (auto s = as_string_field(value, kpath, diags)) {
                out.device_model = std::move(*s);
                has_device = true;
            }
        } else if (key == "site_meter") {
            if (auto v = as_bool_field(value, kpath, diags)) out.site_meter = *v;
        } else if (key == "submeter_of") {
            out.submeter_of = as_int_field(value, kpath, diags);
        } else if (key == "upstream_meter_in_building") {
            out.upstream_meter_in_building = as_int_field(value, kpath, diags);
        } else if (key == "name") {
            out.name = as_string_field(value, kpath, diags);
        } else if (key == "sensors") {
            if (value.is_sequence()) {
                const auto& items = value.items();
                for (std::size_t i = 0; i < items.size(); ++i) {
                    out.sensors.push_back(bind_sensor(
                        items[i], join_path(kpath, std::to_string(i + 1)), diags));
                }
            } else {
                mismatch(diags, kpath, "a sequence of sensors", value);
            }
        } else if (key == "data_location") {
            // single-sensor shorthand
            Sensor s;
            s.span = value.span;
            s.annotations = Node::mapping({}, value.span);
            if (auto loc = as_string_field(value, kpath, diags))
                s.data_location = std::move(*loc);
            out.sensors.push_back(std::move(s));
        } else if (key == "appliances") {
            if (value.is_sequence()) {
                const auto& items = value.items();
                for (std::size_t i = 0; i < items.size(); ++i) {
                    out.appliances.push_back(bind_appliance(
                        items[i], join_path(kpath, std::to_string(i + 1)), diags));
                }
            } else {
                mismatch(diags, kpath, "a sequence of appliances", value);
            }
        } else if (key == "dominant_appliance") {
            out.dominant_appliance = bind_dominant(value, kpath, diags);
        } else if (key == "preprocessing") {
            if (value.is_sequence()) {
                const auto& items = value.items();
                for (std::size_t i = 0; i < items.size(); ++i) {
                    out.preprocessing.push_back(bind_step(
                        items[i], join_path(kpath, std::to_string(i + 1)), diags));
                }
            } else {
                mismatch(diags, kpath, "a sequence of preprocessing steps", value);
            }
        } else {
            unknown(diags, path, key, value);
        }
    }
    if (!has_device) missing(diags, path, "device_model", node.span);
    if (!has_instance && !instance_from_key && out.instance == 0)
        missing(diags, path, "instance", node.span);
    return out;
}

std::vector<ElecMeter> bind_meters_unordered(const Node& node,
                                             const std::string& owner_path,
                                             Diags& diags);

/// Meters appear either as a sequence of mappings with instance fields or as
/// a mapping from instance number to meter body. The bound list is ordered
/// by instance so equal datasets bind identically however they were laid
/// out.
std::vector<ElecMeter> bind_meters(const Node& node, const std::string& owner_path,
                                   Diags& diags) {
    std::vector<ElecMeter> out = bind_meters_unordered(node, owner_path, diags);
    std::stable_sort(out.begin(), out.end(), [](const ElecMeter& a, const ElecMeter& b) {
        return a.instance < b.instance;
    });
    return out;
}

std::vector<ElecMeter> bind_meters_unordered(const Node& node,
                                             const std::string& owner_path,
                                             Diags& diags) {
    std::vector<ElecMeter> out;
    if (node.is_sequence()) {
        const auto& items = node.items();
        for (std::size_t i = 0; i < items.size(); ++i) {
            int label = static_cast<int>(i + 1);
            if (items[i].is_mapping()) {
                if (const Node* inst = items[i].find("instance");
                    inst && inst->is_integer()) {
                    label = static_cast<int>(inst->as_integer());
                }
            }
            out.push_back(bind_meter(
                items[i], join_path(owner_path, "elec_meters/" + std::to_string(label)),
                diags));
        }
        return out;
    }
    if (node.is_mapping()) {
        for (const auto& [key, value] : node.entries()) {
            bool integral = !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
                return std::isdigit(static_cast<unsigned char>(c));
            });
            if (!integral) {
                mismatch(diags, join_path(owner_path, "elec_meters/" + key),
                         "an integer meter instance key", value);
                continue;
            }
            int instance = std::stoi(key);
            std::string mpath =
                join_path(owner_path, "elec_meters/" + std::to_string(instance));
            ElecMeter meter = bind_meter(value, mpath, diags, true);
            if (value.is_mapping() && value.contains("instance") &&
                meter.instance != instance) {
                diags.push_back(Diagnostic::error(
                    codes::meter_instance_mismatch, join_path(mpath, "instance"),
                    "meter key " + std::to_string(instance) +
                        " disagrees with inner instance " +
                        std::to_string(meter.instance),
                    value.span));
            }
            meter.instance = instance;
            out.push_back(std::move(meter));
        }
        return out;
    }
    mismatch(diags, join_path(owner_path, "elec_meters"), "a sequence or mapping of meters",
             node);
    return out;
}

Building bind_building(const Node& node, std::optional<int> file_index, Diags& diags) {
    Building out;
    out.span = node.span;
    int label = file_index.value_or(0);
    if (!file_index && node.is_mapping()) {
        if (const Node* inst = node.find("instance"); inst && inst->is_integer())
            label = static_cast<int>(inst->as_integer());
    }
    std::string path = "buildings/" + std::to_string(label);
    if (!node.is_mapping()) {
        mismatch(diags, path, "a building mapping", node);
        out.instance = label;
        return out;
    }
    bool has_instance = false;
    for (const auto& [key, value] : node.entries()) {
        std::string kpath = join_path(path, key);
        if (key == "instance") {
            if (auto v = as_int_field(value, kpath, diags)) {
                out.instance = *v;
                has_instance = true;
            }
        } else if (key == "rooms") {
            if (value.is_sequence()) {
                const auto& items = value.items();
                for (std::size_t i = 0; i < items.size(); ++i) {
                    out.rooms.push_back(bind_room(
                        items[i], join_path(kpath, std::to_string(i + 1)), diags));
                }
            } else {
                mismatch(diags, kpath, "a sequence of rooms", value);
            }
        } else if (key == "timezone") {
            out.timezone = as_string_field(value, kpath, diags);
        } else if (key == "description") {
            out.description = as_string_field(value, kpath, diags);
        } else if (key == "geo_location") {
            out.geo_location = bind_geo(value, kpath, diags);
        } else if (key == "temporal_coverage") {
            out.temporal_coverage = bind_date_range(value, kpath, diags);
        } else if (key == "elec_meters") {
            out.elec_meters = bind_meters(value, path, diags);
        } else {
            unknown(diags, path, key, value);
        }
    }
    if (file_index) {
        if (has_instance && out.instance != *file_index) {
            diags.push_back(Diagnostic::error(
                codes::building_index_mismatch, join_path(path, "instance"),
                "file name gives building " + std::to_string(*file_index) +
                    " but the document says instance " + std::to_string(out.instance),
                node.span));
        }
        out.instance = *file_index;
    } else if (!has_instance) {
        missing(diags, path, "instance", node.span);
    }
    return out;
}

std::map<std::string, MeterDevice> bind_devices(const Node& node, Diags& diags) {
    std::map<std::string, MeterDevice> out;
    const std::string path = "meter_devices";
    if (node.is_sequence()) {
        const auto& items = node.items();
        for (std::size_t i = 0; i < items.size(); ++i) {
            MeterDevice device =
                bind_device(items[i], join_path(path, std::to_string(i + 1)), diags);
            if (device.model.empty()) {
                missing(diags, join_path(path, std::to_string(i + 1)), "model",
                        items[i].span);
                continue;
            }
            if (!out.emplace(device.model, device).second) {
                diags.push_back(Diagnostic::error(
                    codes::device_dup_model, join_path(path, device.model),
                    "device model '" + device.model + "' is declared more than once",
                    device.span));
            }
        }
        return out;
    }
    if (node.is_mapping()) {
        for (const auto& [model, body] : node.entries()) {
            MeterDevice device = bind_device(body, join_path(path, model), diags);
            if (!device.model.empty() && device.model != model) {
                diags.push_back(Diagnostic::error(
                    codes::device_model_mismatch, join_path(path, model) + "/model",
                    "key '" + model + "' disagrees with inner model '" + device.model +
                        "'",
                    body.span));
            }
            device.model = model;
            out.emplace(model, std::move(device));
        }
        return out;
    }
    mismatch(diags, path, "a mapping or sequence of meter devices", node);
    return out;
}

}  // namespace

Appliance bind_appliance(const Node& node, const std::string& path, Diags& diags) {
    Appliance out;
    out.span = node.span;
    out.extras = Node::mapping({}, node.span);
    if (!node.is_mapping()) {
        mismatch(diags, path, "an appliance mapping", node);
        return out;
    }
    bool has_type = false;
    for (const auto& [key, value] : node.entries()) {
        std::string kpath = join_path(path, key);
        if (key == "type") {
            if (auto s = as_string_field(value, kpath, diags)) {
                out.type = std::move(*s);
                has_type = true;
            }
        } else if (key == "instance") {
            if (auto v = as_int_field(value, kpath, diags)) out.instance = *v;
        } else if (key == "subtype") {
            out.subtype = as_string_field(value, kpath, diags);
        } else if (key == "components") {
            if (value.is_sequence()) {
                const auto& items = value.items();
                for (std::size_t i = 0; i < items.size(); ++i) {
                    out.components.push_back(bind_appliance(
                        items[i], join_path(kpath, std::to_string(i + 1)), diags));
                }
            } else {
                mismatch(diags, kpath, "a sequence of component appliances", value);
            }
        } else if (key == "count") {
            out.count = as_int_field(value, kpath, diags);
        } else if (key == "multiple") {
            out.multiple = as_bool_field(value, kpath, diags);
        } else if (key == "on_power_threshold") {
            out.on_power_threshold = as_real_field(value, kpath, diags);
        } else if (key == "nominal_consumption") {
            if (value.is_mapping()) {
                out.nominal_consumption = value;
            } else {
                mismatch(diags, kpath, "a mapping", value);
            }
        } else if (key == "manufacturer") {
            out.manufacturer = as_string_field(value, kpath, diags);
        } else if (key == "year_of_manufacture") {
            out.year_of_manufacture = as_int_field(value, kpath, diags);
        } else if (key == "room") {
            out.room = bind_room_ref(value, kpath, diags);
        } else if (key == "main_room_light") {
            out.main_room_light = as_bool_field(value, kpath, diags);
        } else if (key == "description") {
            out.description = as_string_field(value, kpath, diags);
        } else if (key == "dates_active") {
            if (value.is_sequence()) {
                const auto& items = value.items();
                for (std::size_t i = 0; i < items.size(); ++i) {
                    out.dates_active.push_back(bind_date_range(
                        items[i], join_path(kpath, std::to_string(i + 1)), diags));
                }
            } else {
                mismatch(diags, kpath, "a sequence of date ranges", value);
            }
        } else {
            out.extras.set(key, value);
        }
    }
    if (!has_type) missing(diags, path, "type", node.span);
    return out;
}

LearntModel bind_learnt_model(const Node& node, const std::string& path, Diags& diags) {
    LearntModel out;
    out.span = node.span;
    out.parameters = Node::mapping({}, node.span);
    if (!node.is_mapping()) {
        mismatch(diags, path, "a learnt-model mapping", node);
        return out;
    }
    bool has_type = false, has_appliance = false;
    for (const auto& [key, value] : node.entries()) {
        std::string kpath = join_path(path, key);
        if (key == "model_type") {
            if (auto s = as_string_field(value, kpath, diags)) {
                out.model_type = std::move(*s);
                has_type = true;
            }
        } else if (key == "appliance_type") {
            if (auto s = as_string_field(value, kpath, diags)) {
                out.appliance_type = std::move(*s);
                has_appliance = true;
            }
        } else if (key == "training_data") {
            out.training_data = as_string_field(value, kpath, diags);
        } else if (key == "date_prepared") {
            out.date_prepared = as_date_field(value, kpath, diags);
        } else if (key == "parameters") {
            if (value.is_mapping()) {
                out.parameters = value;
            } else {
                mismatch(diags, kpath, "a mapping", value);
            }
        } else {
            unknown(diags, path, key, value);
        }
    }
    if (!has_type) missing(diags, path, "model_type", node.span);
    if (!has_appliance) missing(diags, path, "appliance_type", node.span);
    return out;
}

RawDatasetFolder load_dataset_dir(const fs::path& path) {
    RawDatasetFolder out;
    if (fs::is_regular_file(path)) {
        ParseResult parsed = parse_file(path.string());
        extend(out.diagnostics, parsed.diagnostics);
        out.dataset_doc = std::move(parsed.root);
        return out;
    }
    if (!fs::is_directory(path)) {
        out.diagnostics.push_back(Diagnostic::error(codes::no_dataset_doc, "",
                                                    "no such metadata folder",
                                                    SourceRef{path.string(), 0}));
        return out;
    }

    fs::path dir = path;
    auto has_dataset_doc = [](const fs::path& d) {
        for (const char* name : {"dataset.yaml", "dataset.yml", "dataset.json"})
            if (fs::is_regular_file(d / name)) return true;
        return false;
    };
    if (!has_dataset_doc(dir) && fs::is_directory(dir / "metadata") &&
        has_dataset_doc(dir / "metadata")) {
        dir = dir / "metadata";
    }

    fs::path dataset_file;
    std::map<int, fs::path> building_files;
    std::vector<fs::path> entries;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file()) entries.push_back(entry.path());
    }
    std::sort(entries.begin(), entries.end());

    for (const auto& file : entries) {
        std::string name = file.filename().string();
        if (!name.empty() && name[0] == '.') continue;
        if (!metadata_has_known_extension(name)) {
            out.diagnostics.push_back(Diagnostic::warning(
                codes::ignored_file, "", "ignoring '" + name + "'",
                SourceRef{file.string(), 0}));
            continue;
        }
        std::string stem = file.stem().string();
        if (stem == "dataset") {
            if (dataset_file.empty()) {
                dataset_file = file;
            } else {
                out.diagnostics.push_back(Diagnostic::error(
                    codes::multi_dataset_doc, "",
                    "more than one dataset document in the folder",
                    SourceRef{file.string(), 0}));
            }
            continue;
        }
        if (stem.rfind("building", 0) == 0) {
            std::string digits = stem.substr(8);
            bool integral = !digits.empty() &&
                            std::all_of(digits.begin(), digits.end(), [](char c) {
                                return std::isdigit(static_cast<unsigned char>(c));
                            });
            int index = integral ? std::stoi(digits) : 0;
            if (integral && index >= 1) {
                if (building_files.count(index)) {
                    out.diagnostics.push_back(Diagnostic::error(
                        codes::building_dup_doc, "buildings/" + std::to_string(index),
                        "building " + std::to_string(index) +
                            " has more than one document",
                        SourceRef{file.string(), 0}));
                } else {
                    building_files.emplace(index, file);
                }
                continue;
            }
        }
        out.diagnostics.push_back(Diagnostic::warning(codes::ignored_file, "",
                                                      "ignoring '" + name + "'",
                                                      SourceRef{file.string(), 0}));
    }

    if (dataset_file.empty()) {
        out.diagnostics.push_back(Diagnostic::error(codes::no_dataset_doc, "",
                                                    "the folder has no dataset document",
                                                    SourceRef{dir.string(), 0}));
        return out;
    }

    ParseResult parsed = parse_file(dataset_file.string());
    extend(out.diagnostics, parsed.diagnostics);
    out.dataset_doc = std::move(parsed.root);
    for (const auto& [index, file] : building_files) {
        ParseResult doc = parse_file(file.string());
        extend(out.diagnostics, doc.diagnostics);
        out.building_docs.emplace(index, std::move(doc.root));
    }
    return out;
}

BindResult bind(const RawDatasetFolder& raw) {
    BindResult out;
    Diags& diags = out.diagnostics;
    Dataset& dataset = out.dataset;
    const Node& doc = raw.dataset_doc;
    dataset.span = doc.span;

    std::vector<Building> inline_buildings;
    if (!doc.is_mapping()) {
        mismatch(diags, "", "a dataset mapping", doc);
    } else {
        bool has_name = false;
        for (const auto& [key, value] : doc.entries()) {
            const std::string& kpath = key;
            if (key == "name") {
                if (auto s = as_string_field(value, kpath, diags)) {
                    dataset.name = std::move(*s);
                    has_name = true;
                }
            } else if (key == "long_name") {
                dataset.long_name = as_string_field(value, kpath, diags);
            } else if (key == "publication_date") {
                dataset.publication_date = as_date_field(value, kpath, diags);
            } else if (key == "rights_list") {
                dataset.rights_list = as_string_list(value, kpath, diags);
            } else if (key == "geospatial_coverage") {
                dataset.geospatial_coverage = as_string_field(value, kpath, diags);
            } else if (key == "temporal_coverage") {
                dataset.temporal_coverage = bind_date_range(value, kpath, diags);
            } else if (key == "funding") {
                dataset.funding = as_string_list(value, kpath, diags);
            } else if (key == "creators") {
                dataset.creators = as_string_list(value, kpath, diags);
            } else if (key == "related_documents") {
                dataset.related_documents = as_string_list(value, kpath, diags);
            } else if (key == "timezone") {
                dataset.timezone = as_string_field(value, kpath, diags);
            } else if (key == "description") {
                dataset.description = as_string_field(value, kpath, diags);
            } else if (key == "geo_location") {
                dataset.geo_location = bind_geo(value, kpath, diags);
            } else if (key == "meter_devices") {
                dataset.meter_devices = bind_devices(value, diags);
            } else if (key == "buildings") {
                if (value.is_sequence()) {
                    for (const auto& item : value.items()) {
                        inline_buildings.push_back(
                            bind_building(item, std::nullopt, diags));
                    }
                } else {
                    mismatch(diags, kpath, "a sequence of buildings", value);
                }
            } else if (key == "elec_meters") {
                dataset.dataset_level_meters = bind_meters(value, "", diags);
            } else {
                unknown(diags, "", key, value);
            }
        }
        if (!has_name) missing(diags, "", "name", doc.span);
    }

    std::map<int, Building> by_instance;
    for (auto& building : inline_buildings) {
        int instance = building.instance;
        if (!by_instance.emplace(instance, std::move(building)).second) {
            diags.push_back(Diagnostic::error(
                codes::building_dup_doc, "buildings/" + std::to_string(instance),
                "building " + std::to_string(instance) + " appears more than once",
                SourceRef{}));
        }
    }
    for (const auto& [index, node] : raw.building_docs) {
        Building building = bind_building(node, index, diags);
        if (!by_instance.emplace(index, std::move(building)).second) {
            diags.push_back(Diagnostic::error(
                codes::building_dup_doc, "buildings/" + std::to_string(index),
                "building " + std::to_string(index) + " appears more than once",
                node.span));
        }
    }
    for (auto& [index, building] : by_instance) {
        if (!building.timezone) building.timezone = dataset.timezone;
        if (!building.geo_location) building.geo_location = dataset.geo_location;
        if (!building.temporal_coverage)
            building.temporal_coverage = dataset.temporal_coverage;
        dataset.buildings.push_back(std::move(building));
    }
    return out;
}

BindResult load_and_bind(const fs::path& path) {
    RawDatasetFolder raw = load_dataset_dir(path);
    BindResult result = bind(raw);
    // layout and parse findings come first
    std::vector<Diagnostic> combined = raw.diagnostics;
    extend(combined, std::move(result.diagnostics));
    result.diagnostics = std::move(combined);
    return result;
}

}  // namespace nilmmeta
