#pragma once

#include <string>
#include <vector>

#include "nilmmeta/node.hpp"

namespace nilmmeta {

enum class Severity { Error, Warning };

const char* severity_name(Severity s);

/// One validation finding. `path` is the slash-separated field trail inside
/// the document tree (buildings and meters keyed by instance number,
/// sequence members by 1-based position).
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string path;
    std::string message;
    SourceRef where;

    static Diagnostic error(std::string code, std::string path, std::string message,
                            SourceRef where = {});
    static Diagnostic warning(std::string code, std::string path, std::string message,
                              SourceRef where = {});

    /// "SEVERITY CODE path - message (file:line)"
    std::string to_text() const;
};

struct ValidationReport {
    std::vector<Diagnostic> diagnostics;

    int error_count() const;
    int warning_count() const;
    bool valid() const { return error_count() == 0; }
};

bool has_code(const std::vector<Diagnostic>& diags, std::string_view code);
const Diagnostic* find_code(const std::vector<Diagnostic>& diags, std::string_view code);

/// Append `extra` to `into`.
void extend(std::vector<Diagnostic>& into, std::vector<Diagnostic> extra);

// Diagnostic codes. A stable namespace: tests and downstream tooling assert
// on these strings, never on message text.
namespace codes {

// parsing and folder layout
inline constexpr const char* parse = "E-PARSE";
inline constexpr const char* dup_key = "E-DUP-KEY";
inline constexpr const char* no_dataset_doc = "E-NO-DATASET-DOC";
inline constexpr const char* multi_dataset_doc = "E-MULTI-DATASET-DOC";
inline constexpr const char* building_dup_doc = "E-BUILDING-DUP-DOC";
inline constexpr const char* building_index_mismatch = "E-BUILDING-INDEX-MISMATCH";
inline constexpr const char* ignored_file = "W-IGNORED-FILE";

// binding
inline constexpr const char* type_mismatch = "E-TYPE-MISMATCH";
inline constexpr const char* missing_required = "E-MISSING-REQUIRED";
inline constexpr const char* unknown_field = "W-UNKNOWN-FIELD";
inline constexpr const char* device_dup_model = "E-DEVICE-DUP-MODEL";
inline constexpr const char* device_model_mismatch = "E-DEVICE-MODEL-MISMATCH";
inline constexpr const char* meter_instance_mismatch = "E-METER-INSTANCE-MISMATCH";

// model invariants
inline constexpr const char* dataset_name = "E-DATASET-NAME";
inline constexpr const char* device_key_empty = "E-DEVICE-KEY-EMPTY";
inline constexpr const char* building_dup_instance = "E-BUILDING-DUP-INSTANCE";
inline constexpr const char* daterange_order = "E-DATERANGE-ORDER";
inline constexpr const char* geo_range = "E-GEO-RANGE";
inline constexpr const char* device_sample_period = "E-DEVICE-SAMPLE-PERIOD";
inline constexpr const char* device_no_measurements = "E-DEVICE-NO-MEASUREMENTS";
inline constexpr const char* device_dup_measurement = "E-DEVICE-DUP-MEASUREMENT";
inline constexpr const char* measurement_quantity = "E-MEASUREMENT-QUANTITY";
inline constexpr const char* measurement_ac_type = "E-MEASUREMENT-AC-TYPE";
inline constexpr const char* measurement_limits = "E-MEASUREMENT-LIMITS";
inline constexpr const char* building_instance = "E-BUILDING-INSTANCE";
inline constexpr const char* meter_instance = "E-METER-INSTANCE";
inline constexpr const char* meter_dup_instance = "E-METER-DUP-INSTANCE";
inline constexpr const char* room_instance = "E-ROOM-INSTANCE";
inline constexpr const char* room_dup = "E-ROOM-DUP";
inline constexpr const char* meter_root_and_sub = "E-METER-ROOT-AND-SUB";
inline constexpr const char* wiring_no_parent_or_root = "E-WIRING-NO-PARENT-OR-ROOT";
inline constexpr const char* meter_sensor_count = "E-METER-SENSOR-COUNT";
inline constexpr const char* meter_upstream_without_sub = "E-METER-UPSTREAM-WITHOUT-SUB";
inline constexpr const char* dominant_not_found = "E-DOMINANT-NOT-FOUND";
inline constexpr const char* sensor_data_location = "E-SENSOR-DATA-LOCATION";
inline constexpr const char* preprocess_filter = "E-PREPROCESS-FILTER";
inline constexpr const char* count_and_multiple = "E-COUNT-AND-MULTIPLE";
inline constexpr const char* appliance_count = "E-APPLIANCE-COUNT";
inline constexpr const char* appliance_instance = "E-APPLIANCE-INSTANCE";
inline constexpr const char* appliance_threshold = "E-APPLIANCE-THRESHOLD";
inline constexpr const char* appliance_dup_instance = "E-APPLIANCE-DUP-INSTANCE";
inline constexpr const char* category_traditional = "E-CATEGORY-TRADITIONAL";
inline constexpr const char* category_size = "E-CATEGORY-SIZE";
inline constexpr const char* category_dup = "E-CATEGORY-DUP";
inline constexpr const char* bad_distribution_name = "E-BAD-DISTRIBUTION-NAME";
inline constexpr const char* prior_empty = "E-PRIOR-EMPTY";
inline constexpr const char* prior_source = "E-PRIOR-SOURCE";
inline constexpr const char* prior_neg_freq = "E-PRIOR-NEG-FREQ";
inline constexpr const char* prior_not_normalized = "E-PRIOR-NOT-NORMALIZED";
inline constexpr const char* prior_bin_edges = "E-PRIOR-BIN-EDGES";
inline constexpr const char* prior_length = "E-PRIOR-LENGTH";
inline constexpr const char* prior_data_kind = "E-PRIOR-DATA-KIND";
inline constexpr const char* model_spec_name = "E-MODEL-SPEC-NAME";
inline constexpr const char* type_dup_subtype = "E-TYPE-DUP-SUBTYPE";

// type library
inline constexpr const char* type_unknown_parent = "E-TYPE-UNKNOWN-PARENT";
inline constexpr const char* type_cycle = "E-TYPE-CYCLE";
inline constexpr const char* type_dup_name = "E-TYPE-DUP-NAME";
inline constexpr const char* type_not_found = "E-TYPE-NOT-FOUND";
inline constexpr const char* vocab_dup = "E-VOCAB-DUP";
inline constexpr const char* merge_kind_conflict = "E-MERGE-KIND-CONFLICT";
inline constexpr const char* unknown_appliance_type = "E-UNKNOWN-APPLIANCE-TYPE";
inline constexpr const char* bad_subtype = "E-BAD-SUBTYPE";
inline constexpr const char* category_term = "W-CATEGORY-TERM";
inline constexpr const char* authored_distance = "W-AUTHORED-DISTANCE";

// wiring
inline constexpr const char* wiring_dangling = "E-WIRING-DANGLING";
inline constexpr const char* wiring_cycle = "E-WIRING-CYCLE";
inline constexpr const char* wiring_bad_building = "E-WIRING-BAD-BUILDING";
inline constexpr const char* ref_not_found = "E-REF-NOT-FOUND";
inline constexpr const char* no_site_meter = "W-NO-SITE-METER";
inline constexpr const char* deep_tree = "W-DEEP-TREE";
inline constexpr const char* shared_appliance = "W-SHARED-APPLIANCE";

// schema checks
inline constexpr const char* schema_required = "E-SCHEMA-REQUIRED";
inline constexpr const char* schema_kind = "E-SCHEMA-KIND";
inline constexpr const char* schema_enum = "E-SCHEMA-ENUM";
inline constexpr const char* schema_range = "E-SCHEMA-RANGE";
inline constexpr const char* schema_pattern = "E-SCHEMA-PATTERN";
inline constexpr const char* unknown_appliance_field = "E-UNKNOWN-APPLIANCE-FIELD";
inline constexpr const char* unknown_device = "E-UNKNOWN-DEVICE";
inline constexpr const char* room_ref = "E-ROOM-REF";
inline constexpr const char* room_name = "E-ROOM-NAME";
inline constexpr const char* bad_model_type = "E-BAD-MODEL-TYPE";

}  // namespace codes

}  // namespace nilmmeta
