#include "nilmmeta/export.hpp"

#include <algorithm>

#include <json.hpp>

namespace nilmmeta {

namespace {

using json = nlohmann::json;

json node_to_json(const Node& node) {
    switch (node.kind()) {
        case NodeKind::Null: return nullptr;
        case NodeKind::Boolean: return node.as_boolean();
        case NodeKind::Integer: return node.as_integer();
        case NodeKind::Real: return node.as_real();
        case NodeKind::String: return node.as_string();
        case NodeKind::Sequence: {
            json out = json::array();
            for (const auto& item : node.items()) out.push_back(node_to_json(item));
            return out;
        }
        case NodeKind::Mapping: {
            json out = json::object();
            for (const auto& [key, value] : node.entries()) out[key] = node_to_json(value);
            return out;
        }
    }
    return nullptr;
}

std::string pad2(int v) {
    std::string s = std::to_string(v);
    return s.size() < 2 ? "0" + s : s;
}

json date_json(const Date& date) {
    if (date.bare_year) return date.year;
    return std::to_string(date.year) + "-" + pad2(date.month) + "-" + pad2(date.day);
}

json range_json(const DateRange& range) {
    json out;
    out["start"] = date_json(range.start);
    if (range.end) out["end"] = date_json(*range.end);
    return out;
}

json geo_json(const GeoLocation& geo) {
    json out;
    out["latitude"] = geo.latitude;
    out["longitude"] = geo.longitude;
    if (geo.locality) out["locality"] = *geo.locality;
    if (geo.country) out["country"] = *geo.country;
    return out;
}

json measurement_json(const Measurement& m) {
    json out;
    out["physical_quantity"] = m.physical_quantity;
    if (m.ac_type) out["ac_type"] = *m.ac_type;
    if (m.lower_limit) out["lower_limit"] = *m.lower_limit;
    if (m.upper_limit) out["upper_limit"] = *m.upper_limit;
    return out;
}

json device_json(const MeterDevice& device) {
    json out;
    if (device.manufacturer) out["manufacturer"] = *device.manufacturer;
    if (device.sample_period) out["sample_period"] = *device.sample_period;
    if (device.max_sample_period) out["max_sample_period"] = *device.max_sample_period;
    if (device.wireless) out["wireless"] = *device.wireless;
    if (device.description) out["description"] = *device.description;
    json ms = json::array();
    for (const auto& m : device.measurements) ms.push_back(measurement_json(m));
    out["measurements"] = std::move(ms);
    return out;
}

json sensor_json(const Sensor& sensor) {
    json out;
    out["data_location"] = sensor.data_location;
    for (const auto& [key, value] : sensor.annotations.entries())
        out[key] = node_to_json(value);
    return out;
}

json step_json(const PreprocessingStep& step) {
    json out;
    out["filter"] = step.filter;
    for (const auto& [key, value] : step.parameters.entries())
        out[key] = node_to_json(value);
    return out;
}

json appliance_json(const Appliance& appliance) {
    json out;
    out["type"] = appliance.type;
    out["instance"] = appliance.instance;
    if (appliance.subtype) out["subtype"] = *appliance.subtype;
    if (!appliance.components.empty()) {
        json cs = json::array();
        for (const auto& c : appliance.components) cs.push_back(appliance_json(c));
        out["components"] = std::move(cs);
    }
    if (appliance.count) out["count"] = *appliance.count;
    if (appliance.multiple) out["multiple"] = *appliance.multiple;
    if (appliance.on_power_threshold)
        out["on_power_threshold"] = *appliance.on_power_threshold;
    if (appliance.nominal_consumption.is_mapping())
        out["nominal_consumption"] = node_to_json(appliance.nominal_consumption);
    if (appliance.manufacturer) out["manufacturer"] = *appliance.manufacturer;
    if (appliance.year_of_manufacture)
        out["year_of_manufacture"] = *appliance.year_of_manufacture;
    if (appliance.room) {
        json room;
        room["name"] = appliance.room->name;
        room["instance"] = appliance.room->instance;
        out["room"] = std::move(room);
    }
    if (appliance.main_room_light) out["main_room_light"] = *appliance.main_room_light;
    if (appliance.description) out["description"] = *appliance.description;
    if (!appliance.dates_active.empty()) {
        json ds = json::array();
        for (const auto& r : appliance.dates_active) ds.push_back(range_json(r));
        out["dates_active"] = std::move(ds);
    }
    for (const auto& [key, value] : appliance.extras.entries())
        out[key] = node_to_json(value);
    return out;
}

json meter_json(const ElecMeter& meter) {
    json out;
    out["instance"] = meter.instance;
    out["device_model"] = meter.device_model;
    out["site_meter"] = meter.site_meter;
    if (meter.submeter_of) out["submeter_of"] = *meter.submeter_of;
    if (meter.upstream_meter_in_building)
        out["upstream_meter_in_building"] = *meter.upstream_meter_in_building;
    if (meter.name) out["name"] = *meter.name;
    if (!meter.sensors.empty()) {
        json ss = json::array();
        for (const auto& s : meter.sensors) ss.push_back(sensor_json(s));
        out["sensors"] = std::move(ss);
    }
    if (!meter.appliances.empty()) {
        json as = json::array();
        for (const auto& a : meter.appliances) as.push_back(appliance_json(a));
        out["appliances"] = std::move(as);
    }
    if (meter.dominant_appliance) {
        json dom;
        dom["type"] = meter.dominant_appliance->type;
        dom["instance"] = meter.dominant_appliance->instance;
        out["dominant_appliance"] = std::move(dom);
    }
    if (!meter.preprocessing.empty()) {
        json ps = json::array();
        for (const auto& p : meter.preprocessing) ps.push_back(step_json(p));
        out["preprocessing"] = std::move(ps);
    }
    return out;
}

json meters_json(std::vector<ElecMeter> meters) {
    std::stable_sort(meters.begin(), meters.end(),
                     [](const ElecMeter& a, const ElecMeter& b) {
                         return a.instance < b.instance;
                     });
    json out = json::array();
    for (const auto& m : meters) out.push_back(meter_json(m));
    return out;
}

json building_json(const Building& building) {
    json out;
    out["instance"] = building.instance;
    if (!building.rooms.empty()) {
        json rs = json::array();
        for (const auto& room : building.rooms) {
            json r;
            r["name"] = room.name;
            r["instance"] = room.instance;
            rs.push_back(std::move(r));
        }
        out["rooms"] = std::move(rs);
    }
    if (building.timezone) out["timezone"] = *building.timezone;
    if (building.description) out["description"] = *building.description;
    if (building.geo_location) out["geo_location"] = geo_json(*building.geo_location);
    if (building.temporal_coverage)
        out["temporal_coverage"] = range_json(*building.temporal_coverage);
    if (!building.elec_meters.empty())
        out["elec_meters"] = meters_json(building.elec_meters);
    return out;
}

json dataset_json(const Dataset& dataset) {
    json out;
    out["name"] = dataset.name;
    if (dataset.long_name) out["long_name"] = *dataset.long_name;
    if (dataset.publication_date)
        out["publication_date"] = date_json(*dataset.publication_date);
    if (!dataset.rights_list.empty()) out["rights_list"] = dataset.rights_list;
    if (dataset.geospatial_coverage)
        out["geospatial_coverage"] = *dataset.geospatial_coverage;
    if (dataset.temporal_coverage)
        out["temporal_coverage"] = range_json(*dataset.temporal_coverage);
    if (!dataset.funding.empty()) out["funding"] = dataset.funding;
    if (!dataset.creators.empty()) out["creators"] = dataset.creators;
    if (!dataset.related_documents.empty())
        out["related_documents"] = dataset.related_documents;
    if (dataset.timezone) out["timezone"] = *dataset.timezone;
    if (dataset.description) out["description"] = *dataset.description;
    if (dataset.geo_location) out["geo_location"] = geo_json(*dataset.geo_location);
    if (!dataset.meter_devices.empty()) {
        json ds = json::object();
        for (const auto& [model, device] : dataset.meter_devices)
            ds[model] = device_json(device);
        out["meter_devices"] = std::move(ds);
    }
    if (!dataset.buildings.empty()) {
        std::vector<Building> buildings = dataset.buildings;
        std::stable_sort(buildings.begin(), buildings.end(),
                         [](const Building& a, const Building& b) {
                             return a.instance < b.instance;
                         });
        json bs = json::array();
        for (const auto& b : buildings) bs.push_back(building_json(b));
        out["buildings"] = std::move(bs);
    }
    if (!dataset.dataset_level_meters.empty())
        out["elec_meters"] = meters_json(dataset.dataset_level_meters);
    return out;
}

json categories_json(const Categories& categories) {
    json out = json::object();
    if (categories.traditional) out["traditional"] = *categories.traditional;
    if (categories.size) out["size"] = *categories.size;
    if (!categories.electrical.empty()) out["electrical"] = categories.electrical;
    if (!categories.google_shopping.empty())
        out["google_shopping"] = categories.google_shopping;
    return out;
}

json prior_json(const Prior& prior) {
    json out;
    if (prior.source) out["source"] = *prior.source;
    out["distance"] = prior.distance;
    if (prior.citation) out["citation"] = *prior.citation;
    if (prior.specific_to) out["specific_to"] = *prior.specific_to;
    if (prior.training_data) out["training_data"] = *prior.training_data;
    if (prior.distribution_of_data) {
        json data = json::object();
        if (!prior.distribution_of_data->bin_edges.empty())
            data["bin_edges"] = prior.distribution_of_data->bin_edges;
        if (!prior.distribution_of_data->categories.empty())
            data["categories"] = prior.distribution_of_data->categories;
        data["frequencies"] = prior.distribution_of_data->frequencies;
        out["distribution_of_data"] = std::move(data);
    }
    if (prior.model) {
        json model;
        model["distribution_name"] = prior.model->distribution_name;
        model["parameters"] = prior.model->parameters;
        out["model"] = std::move(model);
    }
    return out;
}

json collected_priors_json(const TypeLibrary& library, const std::string& type_name) {
    json out = json::object();
    for (const auto& name : distribution_names()) {
        auto priors = collect_priors(library, type_name, name);
        if (priors.empty()) continue;
        json list = json::array();
        for (const auto& prior : priors) list.push_back(prior_json(prior));
        out[name] = std::move(list);
    }
    return out;
}

json resolved_appliance_record(const TypeLibrary& library,
                               const ResolvedAppliance& resolved) {
    json out = appliance_json(resolved.appliance);
    out.erase("components");
    if (resolved.type != nullptr) {
        out["properties"] = node_to_json(resolved.type->properties);
        out["priors"] = collected_priors_json(library, resolved.type->name);
    }
    out["categories"] = categories_json(resolved.categories);
    if (!resolved.components.empty()) {
        json cs = json::array();
        for (const auto& component : resolved.components)
            cs.push_back(resolved_appliance_record(library, component));
        out["components"] = std::move(cs);
    }
    return out;
}

json resolved_meter_appliances(const TypeLibrary& library, const ElecMeter& meter) {
    json out = json::array();
    for (const auto& appliance : meter.appliances) {
        std::vector<Diagnostic> scratch;
        auto resolved = resolve_appliance(library, appliance, "", scratch);
        if (resolved) {
            out.push_back(resolved_appliance_record(library, *resolved));
        } else {
            out.push_back(appliance_json(appliance));
        }
    }
    return out;
}

std::string dump_canonical(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::string export_canonical(const Dataset& dataset) {
    return dump_canonical(dataset_json(dataset));
}

std::string export_resolved(const Dataset& dataset, const TypeLibrary& library) {
    json doc = dataset_json(dataset);
    auto rewrite_meters = [&](json& meters, const std::vector<ElecMeter>& source) {
        std::vector<ElecMeter> sorted = source;
        std::stable_sort(sorted.begin(), sorted.end(),
                         [](const ElecMeter& a, const ElecMeter& b) {
                             return a.instance < b.instance;
                         });
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (!sorted[i].appliances.empty())
                meters[i]["appliances"] = resolved_meter_appliances(library, sorted[i]);
        }
    };
    if (doc.contains("buildings")) {
        std::vector<Building> buildings = dataset.buildings;
        std::stable_sort(buildings.begin(), buildings.end(),
                         [](const Building& a, const Building& b) {
                             return a.instance < b.instance;
                         });
        for (std::size_t i = 0; i < buildings.size(); ++i) {
            if (doc["buildings"][i].contains("elec_meters"))
                rewrite_meters(doc["buildings"][i]["elec_meters"],
                               buildings[i].elec_meters);
        }
    }
    if (doc.contains("elec_meters"))
        rewrite_meters(doc["elec_meters"], dataset.dataset_level_meters);
    return dump_canonical(doc);
}

std::string resolved_records_json(const TypeLibrary& library, const ElecMeter& meter) {
    return dump_canonical(resolved_meter_appliances(library, meter));
}

std::string resolved_type_json(const TypeLibrary& library, const std::string& type_name) {
    const ResolvedApplianceType& resolved = resolve_type(library, type_name);
    json out;
    out["name"] = resolved.name;
    out["ancestry"] = resolved.ancestry;
    out["properties"] = node_to_json(resolved.properties);
    if (!resolved.subtypes.empty()) out["subtypes"] = resolved.subtypes;
    out["categories"] = categories_json(resolved.categories);
    if (!resolved.components.empty()) {
        json cs = json::array();
        for (const auto& component : resolved.components)
            cs.push_back(appliance_json(component));
        out["components"] = std::move(cs);
    }
    if (resolved.description) out["description"] = *resolved.description;
    return dump_canonical(out);
}

std::string type_priors_json(const TypeLibrary& library, const std::string& type_name) {
    if (!library.resolved.count(type_name))
        throw std::out_of_range("E-TYPE-NOT-FOUND: unknown appliance type '" + type_name +
                                "'");
    return dump_canonical(collected_priors_json(library, type_name));
}

}  // namespace nilmmeta
