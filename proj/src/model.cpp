#include "nilmmeta/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <utility>

namespace nilmmeta {

namespace {

int days_in_month(int year, int month) {
    static const int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) return 0;
    bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    if (month == 2 && leap) return 29;
    return days[month - 1];
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return c >= '0' && c <= '9';
    });
}

}  // namespace

std::optional<Date> Date::parse(const std::string& iso) {
    if (all_digits(iso) && iso.size() == 4) {
        Date d;
        d.year = std::stoi(iso);
        d.bare_year = true;
        return d;
    }
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
    std::string y = iso.substr(0, 4), m = iso.substr(5, 2), dd = iso.substr(8, 2);
    if (!all_digits(y) || !all_digits(m) || !all_digits(dd)) return std::nullopt;
    Date d;
    d.year = std::stoi(y);
    d.month = std::stoi(m);
    d.day = std::stoi(dd);
    if (d.month < 1 || d.month > 12) return std::nullopt;
    if (d.day < 1 || d.day > days_in_month(d.year, d.month)) return std::nullopt;
    return d;
}

std::string Date::to_string() const {
    char buf[16];
    if (bare_year) {
        std::snprintf(buf, sizeof buf, "%04d", year);
    } else {
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    }
    return buf;
}

bool is_distribution_name(std::string_view name) {
    const auto& names = distribution_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

bool is_physical_quantity(std::string_view v) {
    return v == "power" || v == "energy" || v == "cumulative_energy" || v == "voltage" ||
           v == "current";
}

bool is_ac_type(std::string_view v) {
    return v == "active" || v == "apparent" || v == "reactive";
}

bool is_traditional_category(std::string_view v) {
    return v == "wet" || v == "cold" || v == "consumer electronics" || v == "ICT" ||
           v == "cooking" || v == "lighting" || v == "heating";
}

bool is_size_category(std::string_view v) { return v == "large" || v == "small"; }

bool is_prior_source(std::string_view v) {
    return v == "subjective" || v == "analysis" || v == "publication";
}

std::string join_path(const std::string& prefix, const std::string& leaf) {
    if (prefix.empty()) return leaf;
    if (leaf.empty()) return prefix;
    return prefix + "/" + leaf;
}

namespace {

using Diags = std::vector<Diagnostic>;

void check_range(const DateRange& range, const std::string& path, Diags& out) {
    if (range.end && *range.end < range.start) {
        out.push_back(Diagnostic::error(codes::daterange_order, path,
                                        "range ends (" + range.end->to_string() +
                                            ") before it starts (" +
                                            range.start.to_string() + ")",
                                        range.span));
    }
}

void check_geo(const GeoLocation& geo, const std::string& path, Diags& out) {
    if (geo.latitude < -90.0 || geo.latitude > 90.0) {
        out.push_back(Diagnostic::error(codes::geo_range, join_path(path, "latitude"),
                                        "latitude outside [-90, 90]", geo.span));
    }
    if (geo.longitude < -180.0 || geo.longitude > 180.0) {
        out.push_back(Diagnostic::error(codes::geo_range, join_path(path, "longitude"),
                                        "longitude outside [-180, 180]", geo.span));
    }
}

void check_measurement(const Measurement& m, const std::string& path, Diags& out) {
    bool quantity_known = is_physical_quantity(m.physical_quantity);
    if (!quantity_known) {
        out.push_back(Diagnostic::error(codes::measurement_quantity,
                                        join_path(path, "physical_quantity"),
                                        "unknown physical quantity '" +
                                            m.physical_quantity + "'",
                                        m.span));
    }
    bool wants_ac = m.physical_quantity == "power" || m.physical_quantity == "energy" ||
                    m.physical_quantity == "cumulative_energy";
    if (quantity_known && wants_ac && !m.ac_type) {
        out.push_back(Diagnostic::error(codes::measurement_ac_type,
                                        join_path(path, "ac_type"),
                                        "ac_type is required for " + m.physical_quantity +
                                            " measurements",
                                        m.span));
    }
    if (quantity_known && !wants_ac && m.ac_type) {
        out.push_back(Diagnostic::error(codes::measurement_ac_type,
                                        join_path(path, "ac_type"),
                                        "ac_type does not apply to " + m.physical_quantity,
                                        m.span));
    }
    if (m.ac_type && !is_ac_type(*m.ac_type)) {
        out.push_back(Diagnostic::error(codes::measurement_ac_type,
                                        join_path(path, "ac_type"),
                                        "unknown ac_type '" + *m.ac_type + "'", m.span));
    }
    if (m.lower_limit && m.upper_limit && *m.lower_limit > *m.upper_limit) {
        out.push_back(Diagnostic::error(codes::measurement_limits, path,
                                        "lower_limit exceeds upper_limit", m.span));
    }
}

void check_device(const MeterDevice& device, const std::string& path, Diags& out) {
    if (device.sample_period && *device.sample_period <= 0.0) {
        out.push_back(Diagnostic::error(codes::device_sample_period,
                                        join_path(path, "sample_period"),
                                        "sample_period must be positive", device.span));
    }
    if (device.measurements.empty()) {
        out.push_back(Diagnostic::error(codes::device_no_measurements,
                                        join_path(path, "measurements"),
                                        "device declares no measurements", device.span));
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t i = 0; i < device.measurements.size(); ++i) {
        const auto& m = device.measurements[i];
        std::string mpath = join_path(path, "measurements/" + std::to_string(i + 1));
        auto key = std::make_pair(m.physical_quantity, m.ac_type.value_or(""));
        if (!seen.insert(key).second) {
            out.push_back(Diagnostic::error(codes::device_dup_measurement, mpath,
                                            "duplicate measurement of " +
                                                m.physical_quantity,
                                            m.span));
        }
        check_measurement(m, mpath, out);
    }
}

void check_room(const Room& room, const std::string& path, Diags& out) {
    if (room.instance < 1) {
        out.push_back(Diagnostic::error(codes::room_instance, join_path(path, "instance"),
                                        "room instance must be at least 1", room.span));
    }
}

void check_appliance(const Appliance& app, const std::string& path, Diags& out) {
    if (app.instance < 1) {
        out.push_back(Diagnostic::error(codes::appliance_instance,
                                        join_path(path, "instance"),
                                        "appliance instance must be at least 1", app.span));
    }
    if (app.count && app.multiple) {
        out.push_back(Diagnostic::error(codes::count_and_multiple, path,
                                        "count and multiple are mutually exclusive",
                                        app.span));
    }
    if (app.count && *app.count < 1) {
        out.push_back(Diagnostic::error(codes::appliance_count, join_path(path, "count"),
                                        "count must be a positive integer", app.span));
    }
    if (app.on_power_threshold && *app.on_power_threshold < 0.0) {
        out.push_back(Diagnostic::error(codes::appliance_threshold,
                                        join_path(path, "on_power_threshold"),
                                        "on_power_threshold must be non-negative",
                                        app.span));
    }
    if (app.room && app.room->instance < 1) {
        out.push_back(Diagnostic::error(codes::room_instance, join_path(path, "room"),
                                        "room instance must be at least 1",
                                        app.room->span));
    }
    for (std::size_t i = 0; i < app.dates_active.size(); ++i) {
        check_range(app.dates_active[i],
                    join_path(path, "dates_active/" + std::to_string(i + 1)), out);
    }
    for (std::size_t i = 0; i < app.components.size(); ++i) {
        check_appliance(app.components[i],
                        join_path(path, "components/" + std::to_string(i + 1)), out);
    }
}

void check_sensor(const Sensor& sensor, const std::string& path, Diags& out) {
    if (sensor.data_location.empty()) {
        out.push_back(Diagnostic::error(codes::sensor_data_location,
                                        join_path(path, "data_location"),
                                        "sensor has no data_location", sensor.span));
    }
}

void check_step(const PreprocessingStep& step, const std::string& path, Diags& out) {
    if (step.filter.empty()) {
        out.push_back(Diagnostic::error(codes::preprocess_filter, join_path(path, "filter"),
                                        "preprocessing step has no filter name",
                                        step.span));
    }
}

void check_meter(const ElecMeter& meter, const std::string& path, Diags& out) {
    if (meter.instance < 1) {
        out.push_back(Diagnostic::error(codes::meter_instance, join_path(path, "instance"),
                                        "meter instance must be at least 1", meter.span));
    }
    if (meter.site_meter && meter.submeter_of) {
        out.push_back(Diagnostic::error(codes::meter_root_and_sub, path,
                                        "a meter cannot be both a site meter and a submeter",
                                        meter.span));
    }
    if (!meter.site_meter && !meter.submeter_of) {
        out.push_back(Diagnostic::error(codes::wiring_no_parent_or_root, path,
                                        "meter needs site_meter: true or a submeter_of "
                                        "reference",
                                        meter.span));
    }
    if (meter.sensors.empty() || meter.sensors.size() > 3) {
        out.push_back(Diagnostic::error(codes::meter_sensor_count,
                                        join_path(path, "sensors"),
                                        "a meter carries between one and three sensors, " +
                                            std::to_string(meter.sensors.size()) +
                                            " given",
                                        meter.span));
    }
    if (meter.upstream_meter_in_building && !meter.submeter_of) {
        out.push_back(Diagnostic::error(codes::meter_upstream_without_sub,
                                        join_path(path, "upstream_meter_in_building"),
                                        "upstream_meter_in_building requires submeter_of",
                                        meter.span));
    }
    if (meter.dominant_appliance) {
        bool found = false;
        for (const auto& app : meter.appliances) {
            if (app.type == meter.dominant_appliance->type &&
                app.instance == meter.dominant_appliance->instance) {
                found = true;
                break;
            }
        }
        if (!found) {
            out.push_back(Diagnostic::error(
                codes::dominant_not_found, join_path(path, "dominant_appliance"),
                "dominant appliance " + meter.dominant_appliance->type + " " +
                    std::to_string(meter.dominant_appliance->instance) +
                    " is not in this meter's appliance list",
                meter.dominant_appliance->span));
        }
    }
    std::set<std::pair<std::string, int>> seen;
    for (std::size_t i = 0; i < meter.appliances.size(); ++i) {
        const auto& app = meter.appliances[i];
        std::string apath = join_path(path, "appliances/" + std::to_string(i + 1));
        if (!seen.insert({app.type, app.instance}).second) {
            out.push_back(Diagnostic::error(codes::appliance_dup_instance, apath,
                                            "duplicate appliance " + app.type + " " +
                                                std::to_string(app.instance),
                                            app.span));
        }
        check_appliance(app, apath, out);
    }
    for (std::size_t i = 0; i < meter.sensors.size(); ++i) {
        check_sensor(meter.sensors[i],
                     join_path(path, "sensors/" + std::to_string(i + 1)), out);
    }
    for (std::size_t i = 0; i < meter.preprocessing.size(); ++i) {
        check_step(meter.preprocessing[i],
                   join_path(path, "preprocessing/" + std::to_string(i + 1)), out);
    }
}

void check_building(const Building& building, const std::string& path, Diags& out) {
    if (building.instance < 1) {
        out.push_back(Diagnostic::error(codes::building_instance,
                                        join_path(path, "instance"),
                                        "building instance must be at least 1",
                                        building.span));
    }
    std::set<std::pair<std::string, int>> rooms_seen;
    for (std::size_t i = 0; i < building.rooms.size(); ++i) {
        const auto& room = building.rooms[i];
        std::string rpath = join_path(path, "rooms/" + std::to_string(i + 1));
        if (!rooms_seen.insert({room.name, room.instance}).second) {
            out.push_back(Diagnostic::error(codes::room_dup, rpath,
                                            "duplicate room " + room.name + " " +
                                                std::to_string(room.instance),
                                            room.span));
        }
        check_room(room, rpath, out);
    }
    if (building.geo_location)
        check_geo(*building.geo_location, join_path(path, "geo_location"), out);
    if (building.temporal_coverage)
        check_range(*building.temporal_coverage, join_path(path, "temporal_coverage"), out);
    std::set<int> meters_seen;
    for (const auto& meter : building.elec_meters) {
        std::string mpath =
            join_path(path, "elec_meters/" + std::to_string(meter.instance));
        if (!meters_seen.insert(meter.instance).second) {
            out.push_back(Diagnostic::error(codes::meter_dup_instance, mpath,
                                            "duplicate meter instance " +
                                                std::to_string(meter.instance),
                                            meter.span));
        }
        check_meter(meter, mpath, out);
    }
}

void check_dataset(const Dataset& dataset, Diags& out) {
    if (dataset.name.empty()) {
        out.push_back(Diagnostic::error(codes::dataset_name, "name",
                                        "dataset name must be non-empty", dataset.span));
    }
    for (const auto& [model, device] : dataset.meter_devices) {
        if (model.empty()) {
            out.push_back(Diagnostic::error(codes::device_key_empty, "meter_devices",
                                            "meter_devices key must be non-empty",
                                            device.span));
        }
        check_device(device, "meter_devices/" + (model.empty() ? "?" : model), out);
    }
    if (dataset.temporal_coverage)
        check_range(*dataset.temporal_coverage, "temporal_coverage", out);
    if (dataset.geo_location) check_geo(*dataset.geo_location, "geo_location", out);
    if (dataset.publication_date) {
        // nothing further; parse already guarantees a real calendar date
    }
    std::set<int> buildings_seen;
    for (const auto& building : dataset.buildings) {
        std::string bpath = "buildings/" + std::to_string(building.instance);
        if (!buildings_seen.insert(building.instance).second) {
            out.push_back(Diagnostic::error(codes::building_dup_instance, bpath,
                                            "duplicate building instance " +
                                                std::to_string(building.instance),
                                            building.span));
        }
        check_building(building, bpath, out);
    }
    std::set<int> dataset_meters_seen;
    for (const auto& meter : dataset.dataset_level_meters) {
        std::string mpath = "elec_meters/" + std::to_string(meter.instance);
        if (!dataset_meters_seen.insert(meter.instance).second) {
            out.push_back(Diagnostic::error(codes::meter_dup_instance, mpath,
                                            "duplicate meter instance " +
                                                std::to_string(meter.instance),
                                            meter.span));
        }
        check_meter(meter, mpath, out);
    }
}

void check_prior(const Prior& prior, const std::string& path, Diags& out) {
    if (!prior.distribution_of_data && !prior.model) {
        out.push_back(Diagnostic::error(codes::prior_empty, path,
                                        "prior carries neither distribution_of_data nor "
                                        "a model",
                                        prior.span));
    }
    if (prior.source && !is_prior_source(*prior.source)) {
        out.push_back(Diagnostic::error(codes::prior_source, join_path(path, "source"),
                                        "unknown prior source '" + *prior.source + "'",
                                        prior.span));
    }
    if (prior.distribution_of_data) {
        Diags inner = check_local_invariants(*prior.distribution_of_data, path);
        out.insert(out.end(), inner.begin(), inner.end());
    }
    if (prior.model) {
        Diags inner = check_local_invariants(*prior.model, join_path(path, "model"));
        out.insert(out.end(), inner.begin(), inner.end());
    }
}

void check_distribution_data(const DistributionData& data, const std::string& path,
                             Diags& out) {
    bool has_edges = !data.bin_edges.empty();
    bool has_categories = !data.categories.empty();
    if (has_edges == has_categories) {
        out.push_back(Diagnostic::error(codes::prior_data_kind, path,
                                        "exactly one of bin_edges and categories must be "
                                        "given",
                                        data.span));
        return;
    }
    bool lengths_ok = true;
    if (has_edges) {
        for (std::size_t i = 1; i < data.bin_edges.size(); ++i) {
            if (!(data.bin_edges[i - 1] < data.bin_edges[i])) {
                out.push_back(Diagnostic::error(codes::prior_bin_edges,
                                                join_path(path, "bin_edges"),
                                                "bin_edges must be strictly increasing",
                                                data.span));
                break;
            }
        }
        if (data.bin_edges.size() < 2 ||
            data.frequencies.size() != data.bin_edges.size() - 1) {
            out.push_back(Diagnostic::error(
                codes::prior_length, join_path(path, "frequencies"),
                "expected one frequency per bin (" +
                    std::to_string(data.bin_edges.size()) + " edges, " +
                    std::to_string(data.frequencies.size()) + " frequencies)",
                data.span));
            lengths_ok = false;
        }
    } else {
        if (data.frequencies.size() != data.categories.size()) {
            out.push_back(Diagnostic::error(
                codes::prior_length, join_path(path, "frequencies"),
                "expected one frequency per category", data.span));
            lengths_ok = false;
        }
    }
    double sum = 0.0;
    bool negative = false;
    for (double f : data.frequencies) {
        if (f < 0.0) negative = true;
        sum += f;
    }
    if (negative) {
        out.push_back(Diagnostic::error(codes::prior_neg_freq,
                                        join_path(path, "frequencies"),
                                        "frequencies must be non-negative", data.span));
    }
    if (lengths_ok && !negative && std::fabs(sum - 1.0) > 1e-6) {
        out.push_back(Diagnostic::error(codes::prior_not_normalized, path,
                                        "frequencies sum to " + std::to_string(sum) +
                                            ", expected 1",
                                        data.span));
    }
}

}  // namespace

std::vector<Diagnostic> check_local_invariants(const Dataset& dataset) {
    Diags out;
    check_dataset(dataset, out);
    return out;
}

std::vector<Diagnostic> check_local_invariants(const Building& b, const std::string& path) {
    Diags out;
    check_building(b, path, out);
    return out;
}

std::vector<Diagnostic> check_local_invariants(const ElecMeter& m, const std::string& path) {
    Diags out;
    check_meter(m, path, out);
    return out;
}

std::vector<Diagnostic> check_local_invariants(const Appliance& a, const std::string& path) {
    Diags out;
    check_appliance(a, path, out);
    return out;
}

std::vector<Diagnostic> check_local_invariants(const MeterDevice& d,
                                               const std::string& path) {
    Diags out;
    check_device(d, path, out);
    return out;
}

std::vector<Diagnostic> check_local_invariants(const Measurement& m,
                                               const std::string& path) {
    Diags out;
    check_measurement(m, path, out);
    return out;
}

std::vector<Diagnostic> check_local_invariants(const Sensor& s, const std::string& path) {
    Diags out;
    check_sensor(s, path, out);
    return out;
}

std::vector<Diagnostic> check_local_invariants(const PreprocessingStep& s,
                                               const std::string& path) {
    Diags out;
    check_step(s, path, out);
    return out;
}

std::vector<Diagnostic> check_local_invariants(const DateRange& r, const std::string& path) {
    Diags out;
    check_range(r, path, out);
    return out;
}

std::vector<Diagnostic> check_local_invariants(const GeoLocation& g,
                                               const std::string& path) {
    Diags out;
    check_geo(g, path, out);
    return out;
}

std::vector<Diagnostic> check_local_invariants(const Room& r, const std::string& path) {
    Diags out;
    check_room(r, path, out);
    return out;
}

std::vector<Diagnostic> check_local_invariants(const Categories& c,
                                               const std::string& path) {
    Diags out;
    if (c.traditional && !is_traditional_category(*c.traditional)) {
        out.push_back(Diagnostic::error(codes::category_traditional,
                                        join_path(path, "traditional"),
                                        "unknown traditional category '" + *c.traditional +
                                            "'",
                                        c.span));
    }
    if (c.size && !is_size_category(*c.size)) {
        out.push_back(Diagnostic::error(codes::category_size, join_path(path, "size"),
                                        "size must be 'large' or 'small'", c.span));
    }
    auto check_set = [&](const std::vector<std::string>& terms, const char* field) {
        std::set<std::string> seen;
        for (const auto& term : terms) {
            if (!seen.insert(term).second) {
                out.push_back(Diagnostic::error(codes::category_dup,
                                                join_path(path, field),
                                                "duplicate term '" + term + "'", c.span));
            }
        }
    };
    check_set(c.electrical, "electrical");
    check_set(c.google_shopping, "google_shopping");
    return out;
}

std::vector<Diagnostic> check_local_invariants(const Prior& p, const std::string& path) {
    Diags out;
    check_prior(p, path, out);
    return out;
}

std::vector<Diagnostic> check_local_invariants(const DistributionData& d,
                                               const std::string& path) {
    Diags out;
    check_distribution_data(d, path, out);
    return out;
}

std::vector<Diagnostic> check_local_invariants(const ModelSpec& s, const std::string& path) {
    Diags out;
    if (s.distribution_name.empty()) {
        out.push_back(Diagnostic::error(codes::model_spec_name,
                                        join_path(path, "distribution_name"),
                                        "distribution_name must be non-empty", s.span));
    }
    return out;
}

std::vector<Diagnostic> check_all_local_invariants(const Dataset& dataset) {
    return check_local_invariants(dataset);
}

}  // namespace nilmmeta
