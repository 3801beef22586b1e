#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilmmeta/diagnostics.hpp"
#include "nilmmeta/node.hpp"

namespace nilmmeta {

/// Calendar date. Metadata often gives only a year ("start: 2012"); such a
/// value keeps bare_year so exports can reproduce it, and compares as
/// January 1 of that year.
struct Date {
    int year = 0;
    int month = 1;
    int day = 1;
    bool bare_year = false;
    SourceRef span;

    static std::optional<Date> parse(const std::string& iso);

    /// "YYYY-MM-DD", or "YYYY" for bare years.
    std::string to_string() const;

    friend bool operator==(const Date& a, const Date& b) {
        return a.year == b.year && a.month == b.month && a.day == b.day &&
               a.bare_year == b.bare_year;
    }
    friend bool operator<(const Date& a, const Date& b) {
        if (a.year != b.year) return a.year < b.year;
        if (a.month != b.month) return a.month < b.month;
        return a.day < b.day;
    }
    friend bool operator<=(const Date& a, const Date& b) { return !(b < a); }
};

struct DateRange {
    Date start;
    std::optional<Date> end;
    SourceRef span;

    friend bool operator==(const DateRange&, const DateRange&) = default;
};

struct GeoLocation {
    double latitude = 0.0;
    double longitude = 0.0;
    std::optional<std::string> locality;
    std::optional<std::string> country;
    SourceRef span;

    friend bool operator==(const GeoLocation&, const GeoLocation&) = default;
};

struct Measurement {
    std::string physical_quantity;
    std::optional<std::string> ac_type;
    std::optional<double> lower_limit;
    std::optional<double> upper_limit;
    SourceRef span;

    friend bool operator==(const Measurement&, const Measurement&) = default;
};

struct MeterDevice {
    std::string model;
    std::optional<std::string> manufacturer;
    std::optional<double> sample_period;
    std::optional<std::string> description;
    std::vector<Measurement> measurements;
    std::optional<double> max_sample_period;
    std::optional<bool> wireless;
    SourceRef span;

    friend bool operator==(const MeterDevice&, const MeterDevice&) = default;
};

struct Room {
    std::string name;
    int instance = 1;
    SourceRef span;

    friend bool operator==(const Room&, const Room&) = default;
};

struct RoomRef {
    std::string name;
    int instance = 1;
    SourceRef span;

    friend bool operator==(const RoomRef&, const RoomRef&) = default;
};

struct Appliance {
    std::string type;
    int instance = 1;
    std::optional<std::string> subtype;
    std::vector<Appliance> components;
    std::optional<int> count;
    std::optional<bool> multiple;
    std::optional<double> on_power_threshold;
    Node nominal_consumption = Node::null();
    std::optional<std::string> manufacturer;
    std::optional<int> year_of_manufacture;
    std::optional<RoomRef> room;
    std::optional<bool> main_room_light;
    std::optional<std::string> description;
    std::vector<DateRange> dates_active;
    /// Fields outside the core schema, kept verbatim for schema-merged
    /// validation and canonical export.
    Node extras = Node::mapping();
    SourceRef span;

    friend bool operator==(const Appliance&, const Appliance&) = default;
};

struct DominantApplianceRef {
    std::string type;
    int instance = 1;
    SourceRef span;

    friend bool operator==(const DominantApplianceRef&, const DominantApplianceRef&) = default;
};

struct Sensor {
    std::string data_location;
    Node annotations = Node::mapping();
    SourceRef span;

    friend bool operator==(const Sensor&, const Sensor&) = default;
};

struct PreprocessingStep {
    std::string filter;
    Node parameters = Node::mapping();
    SourceRef span;

    friend bool operator==(const PreprocessingStep&, const PreprocessingStep&) = default;
};

struct ElecMeter {
    int instance = 0;
    std::string device_model;
    bool site_meter = false;
    std::optional<int> submeter_of;
    std::optional<int> upstream_meter_in_building;
    std::vector<Sensor> sensors;
    std::vector<Appliance> appliances;
    std::optional<DominantApplianceRef> dominant_appliance;
    std::vector<PreprocessingStep> preprocessing;
    std::optional<std::string> name;
    SourceRef span;

    friend bool operator==(const ElecMeter&, const ElecMeter&) = default;
};

struct Building {
    int instance = 0;
    std::vector<Room> rooms;
    std::optional<std::string> timezone;
    std::optional<GeoLocation> geo_location;
    std::optional<DateRange> temporal_coverage;
    std::optional<std::string> description;
    std::vector<ElecMeter> elec_meters;
    SourceRef span;

    friend bool operator==(const Building&, const Building&) = default;
};

struct Dataset {
    std::string name;
    std::optional<std::string> long_name;
    std::optional<Date> publication_date;
    std::vector<std::string> rights_list;
    std::optional<std::string> geospatial_coverage;
    std::optional<DateRange> temporal_coverage;
    std::vector<std::string> funding;
    std::vector<std::string> creators;
    std::vector<std::string> related_documents;
    std::optional<std::string> timezone;
    std::optional<GeoLocation> geo_location;
    std::optional<std::string> description;
    std::map<std::string, MeterDevice> meter_devices;
    std::vector<Building> buildings;
    /// Meters owned by the dataset itself, for corpora without a building
    /// structure.
    std::vector<ElecMeter> dataset_level_meters;
    SourceRef span;

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Common-metadata types.

struct Categories {
    std::optional<std::string> traditional;
    std::optional<std::string> size;
    std::vector<std::string> electrical;
    std::vector<std::string> google_shopping;
    SourceRef span;

    friend bool operator==(const Categories&, const Categories&) = default;
};

struct ModelSpec {
    std::string distribution_name;
    std::map<std::string, double> parameters;
    SourceRef span;

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

struct DistributionData {
    std::vector<double> bin_edges;
    std::vector<std::string> categories;
    std::vector<double> frequencies;
    SourceRef span;

    bool continuous() const { return !bin_edges.empty(); }

    friend bool operator==(const DistributionData&, const DistributionData&) = default;
};

struct Prior {
    std::optional<DistributionData> distribution_of_data;
    std::optional<ModelSpec> model;
    std::optional<std::string> source;
    std::optional<std::string> citation;
    std::optional<std::string> specific_to;
    std::optional<std::string> training_data;
    /// Generations between the type that declared this prior and the type it
    /// was collected for; 0 means declared on the type itself. Assigned by
    /// collect_priors, never read from documents.
    int distance = 0;
    SourceRef span;

    friend bool operator==(const Prior&, const Prior&) = default;
};

inline const std::vector<std::string>& distribution_names() {
    static const std::vector<std::string> names = {
        "on_power",          "on_duration",          "off_duration",
        "usage_hour_per_day", "usage_day_per_week",  "usage_month_per_year",
        "rooms",             "subtypes",             "appliance_correlations",
        "ownership",         "ownership_per_country", "ownership_per_continent",
    };
    return names;
}

bool is_distribution_name(std::string_view name);

using DistributionSet = std::map<std::string, std::vector<Prior>>;

struct LearntModel {
    std::string model_type;
    std::string appliance_type;
    std::optional<std::string> training_data;
    std::optional<Date> date_prepared;
    Node parameters = Node::mapping();
    SourceRef span;

    friend bool operator==(const LearntModel&, const LearntModel&) = default;
};

// Controlled value sets used by the local invariants.
bool is_physical_quantity(std::string_view v);
bool is_ac_type(std::string_view v);
bool is_traditional_category(std::string_view v);
bool is_size_category(std::string_view v);
bool is_prior_source(std::string_view v);

// Local (single-object) invariant checks. Each returns one diagnostic per
// violated invariant, at paths rooted at `path` (building and meter segments
// use instance numbers, sequence members 1-based positions).
std::vector<Diagnostic> check_local_invariants(const Dataset& dataset);
std::vector<Diagnostic> check_local_invariants(const Building& building,
                                               const std::string& path = "");
std::vector<Diagnostic> check_local_invariants(const ElecMeter& meter,
                                               const std::string& path = "");
std::vector<Diagnostic> check_local_invariants(const Appliance& appliance,
                                               const std::string& path = "");
std::vector<Diagnostic> check_local_invariants(const MeterDevice& device,
                                               const std::string& path = "");
std::vector<Diagnostic> check_local_invariants(const Measurement& m,
                                               const std::string& path = "");
std::vector<Diagnostic> check_local_invariants(const Sensor& sensor,
                                               const std::string& path = "");
std::vector<Diagnostic> check_local_invariants(const PreprocessingStep& step,
                                               const std::string& path = "");
std::vector<Diagnostic> check_local_invariants(const DateRange& range,
                                               const std::string& path = "");
std::vector<Diagnostic> check_local_invariants(const GeoLocation& geo,
                                               const std::string& path = "");
std::vector<Diagnostic> check_local_invariants(const Room& room,
                                               const std::string& path = "");
std::vector<Diagnostic> check_local_invariants(const Categories& categories,
                                               const std::string& path = "");
std::vector<Diagnostic> check_local_invariants(const Prior& prior,
                                               const std::string& path = "");
std::vector<Diagnostic> check_local_invariants(const DistributionData& data,
                                               const std::string& path = "");
std::vector<Diagnostic> check_local_invariants(const ModelSpec& spec,
                                               const std::string& path = "");

/// Recursive sweep over a whole dataset: every local invariant of every
/// contained object, with full document paths.
std::vector<Diagnostic> check_all_local_invariants(const Dataset& dataset);

std::string join_path(const std::string& prefix, const std::string& leaf);

}  // namespace nilmmeta
