#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nilmmeta/cli.hpp"
#include "nilmmeta/export.hpp"
#include "nilmmeta/loader.hpp"
#include "temp_dir.hpp"

using namespace nilmmeta;
using nlohmann::json;

namespace {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliRun result;
    result.code = run_cli(args, out, err);
    result.out = out.str();
    result.err = err.str();
    return result;
}

const std::string kFixture = FIXTURE_DIR "/ukdale/metadata";

const char* kPlainDataset = R"(name: T
meter_devices:
  X:
    measurements:
    - physical_quantity: voltage
)";

}  // namespace

TEST_CASE("validate") {
    CliRun ok = run({"validate", kFixture});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("0 errors, 0 warnings") != std::string::npos);

    CliRun as_json = run({"validate", kFixture, "--format", "json"});
    CHECK(as_json.code == 0);
    json doc = json::parse(as_json.out);
    CHECK(doc["valid"] == true);
    CHECK(doc["error_count"] == 0);

    TempDir broken;
    broken.write("dataset.yaml", kPlainDataset);
    broken.write("building1.yaml", R"(instance: 1
elec_meters:
- instance: 1
  device_model: X
  site_meter: true
- instance: 2
  device_model: X
  submeter_of: 9
)");
    CliRun bad = run({"validate", broken.path.string()});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("E-WIRING-DANGLING") != std::string::npos);

    CliRun gone = run({"validate", (broken.path / "nowhere").string()});
    CHECK(gone.code == 2);
}

TEST_CASE("validate --strict promotes warnings") {
    TempDir dir;
    dir.write("dataset.yaml", "name: T\nfancy_extension: 1\n");
    CliRun relaxed = run({"validate", dir.path.string()});
    CHECK(relaxed.code == 0);
    CHECK(relaxed.out.find("0 errors, 1 warnings") != std::string::npos);

    CliRun strict = run({"validate", dir.path.string(), "--strict"});
    CHECK(strict.code == 1);
    CHECK(strict.out.find("W-UNKNOWN-FIELD") != std::string::npos);
}

TEST_CASE("tree") {
    CliRun ok = run({"tree", kFixture});
    CHECK(ok.code == 0);
    CHECK(ok.out ==
          "* building1/meter1\n"
          "  building1/meter2\n");
    CHECK(ok.err.empty());

    TempDir cyclic;
    cyclic.write("dataset.yaml", kPlainDataset);
    cyclic.write("building1.yaml", R"(instance: 1
elec_meters:
- instance: 1
  device_model: X
  site_meter: true
- instance: 2
  device_model: X
  submeter_of: 3
- instance: 3
  device_model: X
  submeter_of: 2
)");
    CliRun looped = run({"tree", cyclic.path.string()});
    CHECK(looped.code == 1);
    CHECK(looped.err.find("E-WIRING-CYCLE") != std::string::npos);
    CHECK(looped.out.find("* building1/meter1") != std::string::npos);

    TempDir bare;
    bare.write("dataset.yaml", "name: T\n");
    CliRun empty = run({"tree", bare.path.string()});
    CHECK(empty.code == 0);
    CHECK(empty.out.empty());
}

TEST_CASE("resolve") {
    CliRun ok = run({"resolve", kFixture, "--building", "1", "--meter", "2"});
    REQUIRE(ok.code == 0);
    json records = json::parse(ok.out);
    REQUIRE(records.size() == 1);
    CHECK(records[0]["type"] == "light");
    CHECK(records[0]["on_power_threshold"] == 10.0);
    REQUIRE(records[0]["components"].size() == 2);
    CHECK(records[0]["components"][0]["type"] == "LED lamp");
    CHECK(records[0]["components"][0]["count"] == 10);
    CHECK(records[0]["categories"]["traditional"] == "lighting");

    CliRun bare = run({"resolve", kFixture, "--building", "1", "--meter", "1"});
    CHECK(bare.code == 0);
    CHECK(bare.out == "[]\n");

    CliRun no_building = run({"resolve", kFixture, "--building", "9", "--meter", "1"});
    CHECK(no_building.code == 2);
    CHECK(no_building.err.find("E-REF-NOT-FOUND: no building 9") != std::string::npos);

    CliRun no_meter = run({"resolve", kFixture, "--building", "1", "--meter", "99"});
    CHECK(no_meter.code == 2);
    CHECK(no_meter.err.find("no meter 99") != std::string::npos);

    CliRun unaddressed = run({"resolve", kFixture});
    CHECK(unaddressed.code == 2);
}

TEST_CASE("types") {
    CliRun chain = run({"types", "ancestry", "wine cooler"});
    CHECK(chain.code == 0);
    CHECK(chain.out == "fridge\n");

    CliRun shown = run({"types", "show", "light"});
    REQUIRE(shown.code == 0);
    json light = json::parse(shown.out);
    CHECK(light["name"] == "light");
    const json& subtypes = light["subtypes"];
    CHECK(std::find(subtypes.begin(), subtypes.end(), json("ceiling")) != subtypes.end());

    CliRun priors = run({"types", "priors", "wine cooler"});
    REQUIRE(priors.code == 0);
    json doc = json::parse(priors.out);
    CHECK(doc["on_power"][0]["distance"] == 1);

    CliRun unknown = run({"types", "show", "hovercraft"});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("E-TYPE-NOT-FOUND") != std::string::npos);

    CliRun bad_action = run({"types", "paint", "light"});
    CHECK(bad_action.code == 2);
}

TEST_CASE("export") {
    BindResult bound = load_and_bind(kFixture);
    std::string expected = export_canonical(bound.dataset);

    CliRun to_stdout = run({"export", kFixture});
    CHECK(to_stdout.code == 0);
    CHECK(to_stdout.out == expected);

    TempDir dir;
    auto out_file = dir.path / "canon.json";
    CliRun to_file = run({"export", kFixture, "-o", out_file.string()});
    CHECK(to_file.code == 0);
    std::ifstream in(out_file, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == expected);

    CliRun resolved = run({"export", kFixture, "--resolved"});
    REQUIRE(resolved.code == 0);
    json doc = json::parse(resolved.out);
    CHECK(doc["buildings"][0]["elec_meters"][1]["appliances"][0]["categories"]
             ["traditional"] == "lighting");
}

TEST_CASE("export refuses an invalid dataset") {
    TempDir broken;
    broken.write("dataset.yaml", kPlainDataset);
    broken.write("building1.yaml", R"(instance: 1
elec_meters:
- instance: 1
  device_model: NoSuchDevice
  site_meter: true
)");
    TempDir out_dir;
    auto out_file = out_dir.path / "canon.json";
    CliRun refused = run({"export", broken.path.string(), "-o", out_file.string()});
    CHECK(refused.code == 1);
    CHECK(refused.err.find("E-UNKNOWN-DEVICE") != std::string::npos);
    CHECK_FALSE(std::filesystem::exists(out_file));
}

TEST_CASE("a library overlay can come from the flag or the environment") {
    TempDir overlay;
    overlay.write("central_metadata/appliance_types/sauna heater.yaml",
                  R"(name: sauna heater
parent: heating element
description: sauna stove
)");

    CliRun flagged = run({"types", "ancestry", "sauna heater", "--library",
                          overlay.path.string()});
    CHECK(flagged.code == 0);
    CHECK(flagged.out == "heating element\n");

    setenv("NILM_META_LIBRARY", overlay.path.string().c_str(), 1);
    CliRun from_env = run({"types", "ancestry", "sauna heater"});
    unsetenv("NILM_META_LIBRARY");
    CHECK(from_env.code == 0);
    CHECK(from_env.out == "heating element\n");

    CliRun without = run({"types", "ancestry", "sauna heater"});
    CHECK(without.code == 2);
}

TEST_CASE("usage errors and help") {
    CHECK(run({}).code == 2);
    CHECK(run({"validate"}).code == 2);
    CHECK(run({"validate", kFixture, "--format", "xml"}).code == 2);
    CHECK(run({"frobnicate", kFixture}).code == 2);

    CliRun help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("validate") != std::string::npos);
    CHECK(help.out.find("export") != std::string::npos);
}
