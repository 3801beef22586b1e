#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nilmmeta/loader.hpp"
#include "nilmmeta/validate.hpp"
#include "temp_dir.hpp"

using namespace nilmmeta;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string replace_nth(std::string text, const std::string& from,
                        const std::string& to, int nth) {
    std::size_t pos = std::string::npos;
    std::size_t search = 0;
    for (int i = 0; i < nth; ++i) {
        pos = text.find(from, search);
        REQUIRE(pos != std::string::npos);
        search = pos + 1;
    }
    return text.replace(pos, from.size(), to);
}

const TypeLibrary& seed() {
    static const TypeLibrary lib = load_seed_library().library;
    return lib;
}

ValidationReport full_report(const std::filesystem::path& dir, const TypeLibrary& lib) {
    BindResult bound = load_and_bind(dir);
    std::vector<Diagnostic> all = std::move(bound.diagnostics);
    extend(all, validate_dataset(bound.dataset, lib).diagnostics);
    return assemble_report(std::move(all));
}

/// Rewrites one snippet of the example building document, revalidates, and
/// returns the report.
ValidationReport mutated(const std::string& from, const std::string& to, int nth = 1,
                         const TypeLibrary& lib = seed()) {
    TempDir dir;
    dir.write("dataset.yaml", slurp(FIXTURE_DIR "/ukdale/metadata/dataset.yaml"));
    dir.write("building1.yaml",
              replace_nth(slurp(FIXTURE_DIR "/ukdale/metadata/building1.yaml"), from,
                          to, nth));
    return full_report(dir.path, lib);
}

void expect_single_error(const ValidationReport& report, const std::string& code,
                         const std::string& path) {
    REQUIRE(report.error_count() == 1);
    CHECK(report.warning_count() == 0);
    const Diagnostic* d = find_code(report.diagnostics, code);
    REQUIRE(d != nullptr);
    CHECK(d->severity == Severity::Error);
    CHECK(d->path == path);
}

}  // namespace

TEST_CASE("the example dataset is clean against the built-in library") {
    ValidationReport report = full_report(FIXTURE_DIR "/ukdale/metadata", seed());
    CHECK(report.valid());
    CHECK(report.error_count() == 0);
    CHECK(report.warning_count() == 0);
}

TEST_CASE("single-field mutations pinpoint their diagnostic") {
    SUBCASE("device_model removed") {
        expect_single_error(mutated("  device_model: EnviR\n", "", 2),
                            codes::missing_required,
                            "buildings/1/elec_meters/2/device_model");
    }
    SUBCASE("device_model unknown") {
        expect_single_error(
            mutated("device_model: EnviR", "device_model: NoSuchDevice", 2),
            codes::unknown_device, "buildings/1/elec_meters/2/device_model");
    }
    SUBCASE("submeter_of dangling") {
        expect_single_error(mutated("submeter_of: 1", "submeter_of: 3"),
                            codes::wiring_dangling,
                            "buildings/1/elec_meters/2/submeter_of");
    }
    SUBCASE("site meter and submeter at once") {
        expect_single_error(
            mutated("submeter_of: 1", "submeter_of: 1\n  site_meter: true"),
            codes::meter_root_and_sub, "buildings/1/elec_meters/2");
    }
    SUBCASE("four sensors") {
        expect_single_error(
            mutated("  - data_location: house1/channel_2.dat\n",
                    "  - data_location: house1/channel_2.dat\n"
                    "  - data_location: house1/channel_2b.dat\n"
                    "  - data_location: house1/channel_2c.dat\n"
                    "  - data_location: house1/channel_2d.dat\n"),
            codes::meter_sensor_count, "buildings/1/elec_meters/2/sensors");
    }
    SUBCASE("count together with multiple") {
        expect_single_error(
            mutated("      count: 10\n", "      count: 10\n      multiple: true\n"),
            codes::count_and_multiple,
            "buildings/1/elec_meters/2/appliances/1/components/1");
    }
    SUBCASE("subtype outside the declared set") {
        expect_single_error(
            mutated("  - type: light\n", "  - type: light\n    subtype: halogen\n"),
            codes::bad_subtype, "buildings/1/elec_meters/2/appliances/1/subtype");
    }
    SUBCASE("library prior that does not sum to one") {
        TempDir overlay;
        overlay.write("central_metadata/appliance_types/light.yaml",
                      R"(name: light
subtypes: [ceiling, floor, table, wall]
categories:
  traditional: lighting
  size: small
components:
- type: LED lamp
- type: dimmer
distributions:
  on_power:
  - distribution_of_data:
      bin_edges: [0, 20, 60]
      frequencies: [0.9, 0.4]
    source: subjective
)");
        LibraryLoadResult broken = load_overlaid_library(overlay.path);
        REQUIRE(broken.diagnostics.empty());
        expect_single_error(full_report(FIXTURE_DIR "/ukdale/metadata", broken.library),
                            codes::prior_not_normalized,
                            "library/light/distributions/on_power/1");
    }
}

TEST_CASE("appliance extras check against the merged schema") {
    const TypeLibrary& lib = seed();
    Appliance tv;
    tv.type = "television";

    tv.extras = Node::mapping({{"screen_size", Node::integer(40)}});
    CHECK(validate_appliance_extras(lib, tv, "a").empty());

    tv.extras = Node::mapping({{"screen_size", Node::string("ten")}});
    auto kind = validate_appliance_extras(lib, tv, "a");
    REQUIRE(has_code(kind, codes::schema_kind));
    CHECK(find_code(kind, codes::schema_kind)->path == "a/screen_size");

    tv.extras = Node::mapping({{"screen_size", Node::real(-5.0)}});
    auto range = validate_appliance_extras(lib, tv, "a");
    REQUIRE(has_code(range, codes::schema_range));
    CHECK(find_code(range, codes::schema_range)->path == "a/screen_size");

    tv.extras = Node::mapping({{"display_technology", Node::string("HD-DVD")}});
    auto choice = validate_appliance_extras(lib, tv, "a");
    REQUIRE(has_code(choice, codes::schema_enum));
    CHECK(find_code(choice, codes::schema_enum)->path == "a/display_technology");

    Appliance cooker;
    cooker.type = "cooker";
    cooker.extras = Node::mapping({{"screen_size", Node::integer(40)}});
    auto unknown = validate_appliance_extras(lib, cooker, "a");
    REQUIRE(has_code(unknown, codes::unknown_appliance_field));
    const Diagnostic* d = find_code(unknown, codes::unknown_appliance_field);
    CHECK(d->path == "a/screen_size");
    CHECK(d->message ==
          "'screen_size' is not a field of appliance type 'cooker'");

    Appliance stranger;
    stranger.type = "hovercraft";
    stranger.extras = Node::mapping({{"x", Node::integer(1)}});
    CHECK(validate_appliance_extras(lib, stranger, "a").empty());
}

namespace {

Dataset small_dataset() {
    Dataset ds;
    ds.name = "T";
    MeterDevice dev;
    dev.model = "X";
    Measurement me;
    me.physical_quantity = "voltage";
    dev.measurements = {me};
    ds.meter_devices["X"] = dev;
    Building b;
    b.instance = 1;
    ElecMeter m;
    m.instance = 1;
    m.device_model = "X";
    m.site_meter = true;
    m.sensors = {Sensor{"house/channel_1.dat"}};
    b.elec_meters = {m};
    ds.buildings = {b};
    return ds;
}

}  // namespace

TEST_CASE("room names and room references") {
    Dataset ds = small_dataset();
    ds.buildings[0].rooms = {Room{"pantry", 1}, Room{"kitchen", 1}};
    Appliance a;
    a.type = "light";
    a.room = RoomRef{"kitchen", 2};
    ds.buildings[0].elec_meters[0].appliances = {a};

    ValidationReport report = validate_dataset(ds, seed());
    REQUIRE(has_code(report.diagnostics, codes::room_name));
    const Diagnostic* name = find_code(report.diagnostics, codes::room_name);
    CHECK(name->severity == Severity::Error);
    CHECK(name->path == "buildings/1/rooms/1/name");
    REQUIRE(has_code(report.diagnostics, codes::room_ref));
    CHECK(find_code(report.diagnostics, codes::room_ref)->path ==
          "buildings/1/elec_meters/1/appliances/1/room");

    Dataset flat;
    flat.name = "T";
    flat.meter_devices = ds.meter_devices;
    ElecMeter lone;
    lone.instance = 1;
    lone.device_model = "X";
    lone.site_meter = true;
    lone.sensors = {Sensor{"house/channel_1.dat"}};
    Appliance homeless;
    homeless.type = "light";
    homeless.room = RoomRef{"kitchen", 1};
    lone.appliances = {homeless};
    flat.dataset_level_meters = {lone};
    ValidationReport flat_report = validate_dataset(flat, seed());
    REQUIRE(has_code(flat_report.diagnostics, codes::room_ref));
    CHECK(find_code(flat_report.diagnostics, codes::room_ref)->path ==
          "elec_meters/1/appliances/1/room");
}

TEST_CASE("one appliance on two meters warns") {
    Dataset ds = small_dataset();
    ElecMeter second;
    second.instance = 2;
    second.device_model = "X";
    second.submeter_of = 1;
    second.sensors = {Sensor{"house/channel_2.dat"}};
    Appliance a;
    a.type = "light";
    a.instance = 1;
    ds.buildings[0].elec_meters[0].appliances = {a};
    second.appliances = {a};
    ds.buildings[0].elec_meters.push_back(second);

    ValidationReport report = validate_dataset(ds, seed());
    CHECK(report.valid());
    REQUIRE(has_code(report.diagnostics, codes::shared_appliance));
    const Diagnostic* d = find_code(report.diagnostics, codes::shared_appliance);
    CHECK(d->severity == Severity::Warning);
    CHECK(d->path == "buildings/1/elec_meters/2/appliances");
    CHECK(d->message == "light 1 is also listed on meter 1");

    // a different instance is a different appliance
    ds.buildings[0].elec_meters[1].appliances[0].instance = 2;
    CHECK_FALSE(has_code(validate_dataset(ds, seed()).diagnostics,
                         codes::shared_appliance));
}

TEST_CASE("learnt model checks") {
    const TypeLibrary& lib = seed();
    LearntModel ok;
    ok.model_type = "HMM";
    ok.appliance_type = "fridge";
    CHECK(validate_learnt_model(ok, lib).empty());

    LearntModel wrong;
    wrong.model_type = "SVM-FOO";
    wrong.appliance_type = "warp drive";
    auto diags = validate_learnt_model(wrong, lib, "m");
    REQUIRE(has_code(diags, codes::bad_model_type));
    CHECK(find_code(diags, codes::bad_model_type)->path == "m/model_type");
    REQUIRE(has_code(diags, codes::unknown_appliance_type));
    CHECK(find_code(diags, codes::unknown_appliance_type)->path == "m/appliance_type");
}

TEST_CASE("report assembly dedupes and orders by document") {
    std::vector<Diagnostic> raw = {
        Diagnostic::error("E-X", "library/light/p", "m1"),
        Diagnostic::error("E-X", "buildings/2/a", "m2"),
        Diagnostic::error("E-Y", "name", "m3"),
        Diagnostic::error("E-X", "buildings/1/a", "m4"),
        Diagnostic::error("E-X", "buildings/2/a", "same key, dropped"),
        Diagnostic::warning("E-X", "buildings/2/a", "other severity, kept"),
    };
    ValidationReport report = assemble_report(raw);
    REQUIRE(report.diagnostics.size() == 5);
    CHECK(report.diagnostics[0].path == "name");
    CHECK(report.diagnostics[1].path == "buildings/1/a");
    CHECK(report.diagnostics[2].path == "buildings/2/a");
    CHECK(report.diagnostics[2].severity == Severity::Error);
    CHECK(report.diagnostics[2].message == "m2");
    CHECK(report.diagnostics[3].severity == Severity::Warning);
    CHECK(report.diagnostics[4].path == "library/light/p");
}

TEST_CASE("validation output is deterministic and leaves inputs alone") {
    BindResult bound = load_and_bind(FIXTURE_DIR "/ukdale/metadata");
    Dataset before = bound.dataset;
    ValidationReport a = validate_dataset(bound.dataset, seed());
    ValidationReport b = validate_dataset(bound.dataset, seed());
    CHECK(render_report_text(a) == render_report_text(b));
    CHECK(render_report_json(a) == render_report_json(b));
    CHECK(bound.dataset == before);
}

TEST_CASE("report rendering") {
    ValidationReport report;
    report.diagnostics = {
        Diagnostic::error("E-X", "a/b", "broken", SourceRef{"f.yaml", 3}),
        Diagnostic::warning("W-Y", "c", "odd"),
    };
    std::string text = render_report_text(report);
    CHECK(text.find("E-X") != std::string::npos);
    CHECK(text.find("a/b") != std::string::npos);
    CHECK(text.find("1 errors, 1 warnings\n") != std::string::npos);

    nlohmann::json doc = nlohmann::json::parse(render_report_json(report));
    CHECK(doc["valid"] == false);
    CHECK(doc["error_count"] == 1);
    CHECK(doc["warning_count"] == 1);
    REQUIRE(doc["diagnostics"].size() == 2);
    CHECK(doc["diagnostics"][0]["code"] == "E-X");
    CHECK(doc["diagnostics"][0]["file"] == "f.yaml");
    CHECK(doc["diagnostics"][0]["line"] == 3);
    CHECK(doc["diagnostics"][1]["severity"] == "warning");
}
