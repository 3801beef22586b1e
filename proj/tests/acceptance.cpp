// Acceptance checks for the metadata toolkit. Each numbered check prints one
// PASS or FAIL line; the process exits nonzero if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nilmmeta/export.hpp"
#include "nilmmeta/loader.hpp"
#include "nilmmeta/typedb.hpp"
#include "nilmmeta/validate.hpp"
#include "nilmmeta/wiring.hpp"
#include "temp_dir.hpp"

using namespace nilmmeta;
namespace chrono = std::chrono;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
};

int failures = 0;

void report(int number, const std::string& name, const Check& check) {
    std::cout << (check.ok ? "PASS" : "FAIL") << " " << number << ". " << name;
    if (!check.ok && !check.detail.empty()) std::cout << " [" << check.detail << "]";
    std::cout << "\n";
    if (!check.ok) ++failures;
}

const std::string kFixture = FIXTURE_DIR "/ukdale/metadata";

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

double seconds_since(chrono::steady_clock::time_point start) {
    return chrono::duration<double>(chrono::steady_clock::now() - start).count();
}

ValidationReport full_report(const std::filesystem::path& dir, const TypeLibrary& lib) {
    BindResult bound = load_and_bind(dir);
    std::vector<Diagnostic> all = std::move(bound.diagnostics);
    extend(all, validate_dataset(bound.dataset, lib).diagnostics);
    return assemble_report(std::move(all));
}

// ---------------------------------------------------------------------------
// 1. the example folder validates cleanly, fast

Check fixture_validates(const TypeLibrary& lib) {
    Check c;
    auto start = chrono::steady_clock::now();
    ValidationReport report = full_report(kFixture, lib);
    double elapsed = seconds_since(start);
    c.expect(report.error_count() == 0, "expected 0 errors, got " +
                                            std::to_string(report.error_count()));
    c.expect(report.warning_count() == 0, "unexpected warnings");
    c.expect(elapsed < 1.0, "took " + std::to_string(elapsed) + "s");
    return c;
}

// ---------------------------------------------------------------------------
// 2. single-field mutations hit the documented diagnostic

Check mutation_suite(const TypeLibrary& lib) {
    Check c;
    std::string dataset_text = slurp(kFixture + "/dataset.yaml");
    std::string building_text = slurp(kFixture + "/building1.yaml");

    struct Mutation {
        const char* label;
        const char* from;
        const char* to;
        int nth;
        const char* code;
        const char* path;
    };
    const Mutation mutations[] = {
        {"missing device_model", "  device_model: EnviR\n", "", 2,
         codes::missing_required, "buildings/1/elec_meters/2/device_model"},
        {"unknown device", "device_model: EnviR", "device_model: NoSuchDevice", 2,
         codes::unknown_device, "buildings/1/elec_meters/2/device_model"},
        {"dangling submeter_of", "submeter_of: 1", "submeter_of: 3", 1,
         codes::wiring_dangling, "buildings/1/elec_meters/2/submeter_of"},
        {"site meter and submeter", "submeter_of: 1",
         "submeter_of: 1\n  site_meter: true", 1, codes::meter_root_and_sub,
         "buildings/1/elec_meters/2"},
        {"four sensors", "  - data_location: house1/channel_2.dat\n",
         "  - data_location: house1/channel_2.dat\n"
         "  - data_location: house1/channel_2b.dat\n"
         "  - data_location: house1/channel_2c.dat\n"
         "  - data_location: house1/channel_2d.dat\n",
         1, codes::meter_sensor_count, "buildings/1/elec_meters/2/sensors"},
        {"count with multiple", "      count: 10\n",
         "      count: 10\n      multiple: true\n", 1, codes::count_and_multiple,
         "buildings/1/elec_meters/2/appliances/1/components/1"},
        {"bad subtype", "  - type: light\n",
         "  - type: light\n    subtype: halogen\n", 1, codes::bad_subtype,
         "buildings/1/elec_meters/2/appliances/1/subtype"},
    };

    for (const auto& m : mutations) {
        std::string text = building_text;
        std::size_t pos = std::string::npos;
        std::size_t search = 0;
        for (int i = 0; i < m.nth; ++i) {
            pos = text.find(m.from, search);
            if (pos == std::string::npos) break;
            search = pos + 1;
        }
        if (pos == std::string::npos) {
            c.expect(false, std::string(m.label) + ": snippet not found");
            continue;
        }
        text.replace(pos, std::string(m.from).size(), m.to);

        TempDir dir;
        dir.write("dataset.yaml", dataset_text);
        dir.write("building1.yaml", text);
        ValidationReport report = full_report(dir.path, lib);
        c.expect(report.error_count() == 1,
                 std::string(m.label) + ": expected exactly one error");
        const Diagnostic* d = find_code(report.diagnostics, m.code);
        c.expect(d != nullptr, std::string(m.label) + ": " + m.code + " missing");
        if (d != nullptr)
            c.expect(d->path == m.path,
                     std::string(m.label) + ": path was " + d->path);
    }

    // eighth mutation: a library whose light prior does not sum to one
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
    ValidationReport report = full_report(kFixture, broken.library);
    c.expect(report.error_count() == 1, "broken prior: expected exactly one error");
    const Diagnostic* d = find_code(report.diagnostics, codes::prior_not_normalized);
    c.expect(d != nullptr, "broken prior: E-PRIOR-NOT-NORMALIZED missing");
    if (d != nullptr)
        c.expect(d->path == "library/light/distributions/on_power/1",
                 "broken prior: path was " + d->path);
    return c;
}

// ---------------------------------------------------------------------------
// 3. merge engine equals a brute-force reference merger

Node ref_combine(const Node& parent, const Node& child) {
    if (parent.is_mapping() && child.is_mapping()) {
        Node out = parent;
        for (const auto& [key, value] : child.entries()) {
            const Node* existing = parent.find(key);
            out.set(key, existing ? ref_combine(*existing, value) : value);
        }
        return out;
    }
    if (parent.is_sequence() && child.is_sequence()) {
        Node out = Node::sequence();
        auto push_unique = [&out](const Node& item) {
            for (const auto& have : out.items())
                if (have == item) return;
            out.items().push_back(item);
        };
        for (const auto& item : parent.items()) push_unique(item);
        for (const auto& item : child.items()) push_unique(item);
        return out;
    }
    return child;
}

Node ref_merge(const Node& parent, const Node& child,
               const std::set<std::string>& dni) {
    Node stripped = parent;
    if (stripped.is_mapping())
        for (const auto& key : dni) stripped.erase(key);
    return ref_combine(stripped, child);
}

struct MergeGen {
    std::mt19937 rng;

    explicit MergeGen(unsigned seed) : rng(seed) {}

    int irange(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    }
    std::string key() { return std::string(1, static_cast<char>('a' + irange(0, 5))); }

    Node scalar() {
        switch (irange(0, 4)) {
            case 0: return Node::integer(irange(-5, 20));
            case 1: return Node::real(irange(0, 40) / 4.0);
            case 2: return Node::string("s" + std::to_string(irange(0, 9)));
            case 3: return Node::boolean(irange(0, 1) == 1);
            default: return Node::null();
        }
    }

    Node value(int depth) {
        if (depth <= 0) return scalar();
        switch (irange(0, 3)) {
            case 0: {
                std::vector<Node> items;
                int n = irange(0, 5);
                for (int i = 0; i < n; ++i) items.push_back(value(depth - 1));
                return Node::sequence(std::move(items));
            }
            case 1: return mapping(depth - 1);
            default: return scalar();
        }
    }

    Node mapping(int depth) {
        Node out = Node::mapping();
        int n = irange(0, 5);
        for (int i = 0; i < n; ++i) out.set(key(), value(depth));
        return out;
    }

    std::set<std::string> dni() {
        std::set<std::string> out;
        int n = irange(0, 2);
        for (int i = 0; i < n; ++i) out.insert(key());
        return out;
    }
};

std::set<std::string> key_set(const Node& mapping) {
    std::set<std::string> out;
    for (const auto& [key, value] : mapping.entries()) out.insert(key);
    return out;
}

Check merge_oracle() {
    Check c;
    MergeGen gen(20260819);
    for (int i = 0; i < 1200 && c.ok; ++i) {
        Node parent = gen.mapping(4);
        Node child = gen.mapping(4);
        std::set<std::string> dni = gen.dni();
        Node parent_copy = parent;
        Node child_copy = child;

        Node merged = merge_node(parent, child, dni);
        Node expected = ref_merge(parent, child, dni);
        c.expect(merged == expected, "case " + std::to_string(i) + " diverged");
        c.expect(parent == parent_copy && child == child_copy,
                 "inputs were mutated in case " + std::to_string(i));

        std::set<std::string> want = key_set(parent);
        for (const auto& k : dni) want.erase(k);
        for (const auto& k : key_set(child)) want.insert(k);
        c.expect(key_set(merged) == want,
                 "key law failed in case " + std::to_string(i));

        c.expect(merge_node(Node::mapping(), child, dni) == child,
                 "empty-parent identity failed");
        Node parent_minus = parent;
        for (const auto& k : dni) parent_minus.erase(k);
        c.expect(merge_node(parent, Node::mapping(), dni) == parent_minus,
                 "empty-child identity failed");
    }

    // unit laws on handwritten cases
    Node a = Node::mapping({{"tags", Node::sequence({Node::string("x")})},
                            {"n", Node::integer(1)},
                            {"m", Node::mapping({{"k", Node::integer(1)}})}});
    Node b = Node::mapping(
        {{"tags", Node::sequence({Node::string("x"), Node::string("y")})},
         {"n", Node::integer(2)},
         {"m", Node::mapping({{"j", Node::integer(2)}})}});
    Node merged = merge_node(a, b, {});
    c.expect(merged.find("tags")->items().size() == 2, "list union law failed");
    c.expect(merged.find("n")->as_integer() == 2, "scalar shadow law failed");
    c.expect(merged.find("m")->contains("k") && merged.find("m")->contains("j"),
             "recursive merge law failed");
    Node blocked = merge_node(a, Node::mapping(), {"tags"});
    c.expect(!blocked.contains("tags"), "do_not_inherit law failed");
    return c;
}

// ---------------------------------------------------------------------------
// 4. a four-deep inheritance chain resolves by the documented rules

Node fold_reference(const TypeLibrary& lib, const std::string& name) {
    std::vector<std::string> chain = ancestry(lib, name);
    std::reverse(chain.begin(), chain.end());
    chain.push_back(name);
    Node acc = Node::mapping();
    for (const auto& level : chain) {
        const ApplianceType& t = lib.types.at(level);
        Node own = t.properties;
        own.erase("do_not_inherit");
        std::set<std::string> dni(t.do_not_inherit.begin(), t.do_not_inherit.end());
        acc = merge_node(acc, own, dni);
    }
    return acc;
}

Check inheritance_chain() {
    Check c;
    TempDir dir;
    dir.write("central_metadata/appliance_types/base.yaml", R"(name: base
subtypes: [one]
scalar_prop: 1
nest: {x: 1, z: 5}
additional_properties:
  f: {type: integer, minimum: 0}
  only_base: {type: string}
distributions:
  on_power:
  - model: {distribution_name: normal, parameters: {mu: 1}}
    source: subjective
)");
    dir.write("central_metadata/appliance_types/mid.yaml", R"(name: mid
parent: base
subtypes: [two]
scalar_prop: 2
nest: {x: 2}
additional_properties:
  f: {type: integer, minimum: 5}
distributions:
  on_power:
  - model: {distribution_name: normal, parameters: {mu: 2}}
    source: subjective
)");
    dir.write("central_metadata/appliance_types/near.yaml", R"(name: near
parent: mid
subtypes: [three]
distributions:
  on_power:
  - model: {distribution_name: normal, parameters: {mu: 3}}
    source: subjective
)");
    dir.write("central_metadata/appliance_types/leaf.yaml", R"(name: leaf
parent: near
)");

    LibraryLoadResult loaded = load_type_library(dir.path);
    c.expect(loaded.diagnostics.empty(), "chain library did not load cleanly");
    const TypeLibrary& lib = loaded.library;

    const ResolvedApplianceType& leaf = resolve_type(lib, "leaf");
    c.expect(leaf.properties.find("scalar_prop") != nullptr &&
                 leaf.properties.find("scalar_prop")->as_integer() == 2,
             "nearest declaration did not win");
    const Node* nest = leaf.properties.find("nest");
    c.expect(nest != nullptr && nest->find("x")->as_integer() == 2 &&
                 nest->find("z")->as_integer() == 5,
             "recursive mapping merge failed");
    c.expect(leaf.subtypes == std::vector<std::string>{"one", "two", "three"},
             "subtype union out of order");

    SchemaFragment schema = merged_additional_schema(lib, "leaf");
    c.expect(schema.has("f") && schema.has("only_base"),
             "merged schema lost a property");
    c.expect(schema.properties.at("f").minimum == 5.0,
             "merged schema kept the farther bound");

    std::vector<Prior> priors = collect_priors(lib, "leaf", "on_power");
    std::vector<int> distances;
    for (const auto& p : priors) distances.push_back(p.distance);
    c.expect(distances == std::vector<int>{1, 2, 3}, "prior distances wrong");
    if (priors.size() == 3) {
        c.expect(priors[0].model->parameters.at("mu") == 3.0 &&
                     priors[2].model->parameters.at("mu") == 1.0,
                 "prior order wrong");
    }

    for (const char* name : {"base", "mid", "near", "leaf"}) {
        c.expect(resolve_type(lib, name).properties == fold_reference(lib, name),
                 std::string("fold reference diverged for ") + name);
    }
    TypeLibrary seed = load_seed_library().library;
    for (const auto& [name, resolved] : seed.resolved) {
        c.expect(resolved.properties == fold_reference(seed, name),
                 "fold reference diverged for seed type " + name);
    }
    return c;
}

// ---------------------------------------------------------------------------
// 5. wiring forests: structure laws, order independence, cycle rejection

ElecMeter make_meter(int instance, bool site, std::optional<int> sub,
                     std::optional<int> upstream) {
    ElecMeter m;
    m.instance = instance;
    m.device_model = "X";
    m.site_meter = site;
    m.submeter_of = sub;
    m.upstream_meter_in_building = upstream;
    return m;
}

Check wiring_properties() {
    Check c;
    std::mt19937 rng(914);
    auto irange = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    auto coin = [&](double p) {
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
    };

    for (int iter = 0; iter < 100 && c.ok; ++iter) {
        Dataset ds;
        ds.name = "T";
        int n_buildings = irange(1, 3);
        int total = irange(n_buildings + 1, 50);
        std::vector<MeterRef> existing;
        for (int b = 1; b <= n_buildings; ++b) {
            Building building;
            building.instance = b;
            building.elec_meters = {make_meter(1, true, {}, {})};
            ds.buildings.push_back(std::move(building));
            existing.push_back(MeterRef{b, 1});
        }
        for (int i = n_buildings; i < total; ++i) {
            int b = irange(1, n_buildings);
            Building& home = ds.buildings[static_cast<std::size_t>(b - 1)];
            int instance = static_cast<int>(home.elec_meters.size()) + 1;
            if (coin(0.08)) {
                home.elec_meters.push_back(make_meter(instance, true, {}, {}));
            } else {
                MeterRef parent =
                    existing[static_cast<std::size_t>(irange(0, static_cast<int>(existing.size()) - 1))];
                std::optional<int> upstream;
                if (parent.building != b) upstream = parent.building;
                home.elec_meters.push_back(
                    make_meter(instance, false, parent.meter, upstream));
            }
            existing.push_back(MeterRef{b, instance});
        }

        WiringBuildResult built = build_wiring_forest(ds);
        c.expect(built.diagnostics.empty(), "valid forest produced diagnostics");
        const WiringForest& f = built.forest;
        c.expect(f.edges.size() == f.nodes.size() - f.roots.size(),
                 "edge count law failed");
        for (const auto& node : f.nodes) {
            MeterRef cur = node;
            std::size_t hops = 0;
            while (!f.roots.count(cur) && hops <= f.nodes.size()) {
                auto up = upstream_of(f, cur);
                if (!up) break;
                cur = *up;
                ++hops;
            }
            c.expect(f.roots.count(cur) == 1, "a node cannot reach a root");
        }

        Dataset shuffled = ds;
        std::shuffle(shuffled.buildings.begin(), shuffled.buildings.end(), rng);
        for (auto& b : shuffled.buildings)
            std::shuffle(b.elec_meters.begin(), b.elec_meters.end(), rng);
        WiringBuildResult again = build_wiring_forest(shuffled);
        c.expect(again.forest.nodes == f.nodes && again.forest.edges == f.edges &&
                     again.forest.roots == f.roots,
                 "order of declaration changed the forest");

        if (!f.edges.empty()) {
            MeterRef child = f.edges.begin()->first;
            MeterRef root = child;
            while (!f.roots.count(root)) root = *upstream_of(f, root);
            for (auto& b : ds.buildings) {
                if (b.instance != *root.building) continue;
                for (auto& m : b.elec_meters) {
                    if (m.instance != root.meter) continue;
                    m.site_meter = false;
                    m.submeter_of = child.meter;
                    if (child.building != root.building)
                        m.upstream_meter_in_building = child.building;
                }
            }
            c.expect(has_code(build_wiring_forest(ds).diagnostics, codes::wiring_cycle),
                     "cyclic perturbation was not rejected");
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// 6. export, import, export again: byte-identical

struct DataGen {
    std::mt19937 rng;

    explicit DataGen(unsigned seed) : rng(seed) {}

    int irange(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    }
    double dreal(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }
    bool coin(double p = 0.5) {
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
    }
    std::string word(const char* stem) {
        return std::string(stem) + std::to_string(irange(1, 99));
    }

    Date date() {
        Date d;
        d.year = irange(2000, 2020);
        if (coin(0.4)) {
            d.bare_year = true;
            return d;
        }
        d.month = irange(1, 12);
        d.day = irange(1, 28);
        return d;
    }

    DateRange range() {
        DateRange r;
        r.start = date();
        if (coin()) r.end = date();
        return r;
    }

    Appliance appliance(int instance, int depth) {
        static const char* kTypes[] = {"light", "fridge", "television",
                                       "radio", "computer", "washing machine"};
        Appliance a;
        a.type = kTypes[irange(0, 5)];
        a.instance = instance;
        if (coin(0.2)) a.subtype = word("variant");
        if (coin(0.3))
            a.count = irange(1, 12);
        else if (coin(0.2))
            a.multiple = coin();
        if (coin(0.4)) a.on_power_threshold = dreal(1.0, 3000.0);
        if (coin(0.3))
            a.nominal_consumption =
                Node::mapping({{"on_power", Node::real(dreal(1.0, 250.0))}});
        if (coin(0.3)) a.manufacturer = word("maker");
        if (coin(0.2)) a.room = RoomRef{"kitchen", irange(1, 2)};
        if (coin(0.4)) a.dates_active = {range()};
        if (coin(0.35))
            a.extras = Node::mapping(
                {{"zz_note", Node::string(word("n"))},
                 {"zz_shape", Node::mapping({{"w", Node::integer(irange(1, 9))}})}});
        if (depth < 2 && coin(0.3)) a.components = {appliance(1, depth + 1)};
        return a;
    }

    ElecMeter meter(int instance, bool site, std::optional<int> parent,
                    const std::vector<std::string>& models) {
        ElecMeter m;
        m.instance = instance;
        m.device_model =
            models[static_cast<std::size_t>(irange(0, static_cast<int>(models.size()) - 1))];
        m.site_meter = site;
        m.submeter_of = parent;
        if (coin(0.3)) m.name = word("circuit");
        int sensors = irange(0, 2);
        for (int s = 1; s <= sensors; ++s) {
            Sensor sensor;
            sensor.data_location = "house/channel_" + std::to_string(s) + ".dat";
            if (coin(0.3))
                sensor.annotations =
                    Node::mapping({{"sample_rate", Node::integer(irange(1, 60))}});
            m.sensors.push_back(std::move(sensor));
        }
        int appliances = irange(0, 2);
        for (int a = 1; a <= appliances; ++a) m.appliances.push_back(appliance(a, 0));
        if (!m.appliances.empty() && coin(0.3))
            m.dominant_appliance =
                DominantApplianceRef{m.appliances[0].type, m.appliances[0].instance};
        if (coin(0.25)) {
            PreprocessingStep step;
            step.filter = "clip";
            step.parameters =
                Node::mapping({{"maximum", Node::integer(irange(1000, 5000))}});
            m.preprocessing = {step};
        }
        return m;
    }

    Dataset dataset() {
        Dataset ds;
        ds.name = word("set");
        if (coin(0.5)) ds.long_name = word("long name ");
        if (coin(0.4)) ds.publication_date = date();
        if (coin(0.4)) ds.temporal_coverage = range();
        if (coin(0.5)) ds.timezone = "Europe/London";
        if (coin(0.4)) {
            GeoLocation g;
            g.latitude = dreal(-80.0, 80.0);
            g.longitude = dreal(-170.0, 170.0);
            ds.geo_location = g;
        }
        if (coin(0.4)) ds.description = word("about");
        if (coin(0.4)) ds.creators = {word("lab")};

        int devices = irange(1, 3);
        std::vector<std::string> models;
        for (int d = 1; d <= devices; ++d) {
            MeterDevice dev;
            dev.model = "dev" + std::to_string(d);
            if (coin(0.5)) dev.manufacturer = word("corp");
            if (coin(0.5)) dev.sample_period = dreal(0.5, 60.0);
            Measurement me;
            me.physical_quantity = coin() ? "power" : "voltage";
            if (me.physical_quantity == "power") me.ac_type = "apparent";
            if (coin(0.5)) {
                me.lower_limit = 0.0;
                me.upper_limit = dreal(1000.0, 50000.0);
            }
            dev.measurements = {me};
            ds.meter_devices[dev.model] = dev;
            models.push_back(dev.model);
        }

        int buildings = irange(0, 3);
        for (int b = 1; b <= buildings; ++b) {
            Building building;
            building.instance = b;
            if (coin(0.5)) building.rooms = {Room{"kitchen", 1}, Room{"lounge", 1}};
            if (coin(0.3)) building.timezone = "Europe/Paris";
            int meters = irange(1, 6);
            for (int m = 1; m <= meters; ++m) {
                std::optional<int> parent;
                if (m > 1) parent = irange(1, m - 1);
                building.elec_meters.push_back(meter(m, m == 1, parent, models));
            }
            ds.buildings.push_back(std::move(building));
        }
        if (buildings == 0 || coin(0.2)) {
            int meters = irange(1, 3);
            for (int m = 1; m <= meters; ++m) {
                std::optional<int> parent;
                if (m > 1) parent = irange(1, m - 1);
                ds.dataset_level_meters.push_back(meter(m, m == 1, parent, models));
            }
        }

        for (auto& b : ds.buildings) {
            if (!b.timezone && ds.timezone) b.timezone = ds.timezone;
            if (!b.geo_location && ds.geo_location) b.geo_location = ds.geo_location;
            if (!b.temporal_coverage && ds.temporal_coverage)
                b.temporal_coverage = ds.temporal_coverage;
        }
        return ds;
    }
};

bool round_trips(const Dataset& ds, std::string& why) {
    std::string first = export_canonical(ds);
    TempDir dir;
    auto file = dir.write("canon.json", first);
    BindResult reloaded = load_and_bind(file);
    if (!reloaded.diagnostics.empty()) {
        why = "reimport produced diagnostics";
        return false;
    }
    std::string second = export_canonical(reloaded.dataset);
    if (first != second) {
        why = "second export differs";
        return false;
    }
    return true;
}

Check round_trip_exports() {
    Check c;
    BindResult fixture = load_and_bind(kFixture);
    std::string why;
    c.expect(round_trips(fixture.dataset, why), "fixture: " + why);

    DataGen gen(20260819);
    for (int i = 0; i < 20 && c.ok; ++i) {
        c.expect(round_trips(gen.dataset(), why),
                 "generated dataset " + std::to_string(i) + ": " + why);
    }
    return c;
}

// ---------------------------------------------------------------------------
// 7. library priors are normalized; a broken one is flagged

Check prior_normalization(const TypeLibrary& lib) {
    Check c;
    int counted = 0;
    for (const auto& [name, type] : lib.types) {
        for (const auto& [dist, priors] : type.distributions) {
            for (const auto& prior : priors) {
                if (!prior.distribution_of_data) continue;
                double sum = 0.0;
                for (double f : prior.distribution_of_data->frequencies) sum += f;
                c.expect(std::abs(sum - 1.0) <= 1e-6,
                         name + "/" + dist + " sums to " + std::to_string(sum));
                ++counted;
            }
        }
    }
    c.expect(counted > 0, "no data priors found in the library");

    TempDir dir;
    dir.write("central_metadata/appliance_types/broken.yaml", R"(name: broken
distributions:
  on_power:
  - distribution_of_data:
      bin_edges: [0, 10, 20]
      frequencies: [0.7, 0.7]
    source: subjective
)");
    LibraryLoadResult loaded = load_type_library(dir.path);
    c.expect(has_code(validate_library(loaded.library), codes::prior_not_normalized),
             "the deliberately broken prior was not flagged");
    return c;
}

// ---------------------------------------------------------------------------
// 8. a 20-building, 300-meter dataset validates and exports quickly

Dataset synthetic_large() {
    Dataset ds;
    ds.name = "synthetic";
    ds.timezone = "Europe/London";
    MeterDevice dev;
    dev.model = "X";
    dev.manufacturer = "Synth";
    Measurement me;
    me.physical_quantity = "power";
    me.ac_type = "apparent";
    me.lower_limit = 0.0;
    me.upper_limit = 30000.0;
    dev.measurements = {me};
    ds.meter_devices["X"] = dev;

    static const char* kTypes[] = {"light",  "fridge",   "television",
                                   "radio",  "computer", "washing machine"};
    for (int b = 1; b <= 20; ++b) {
        Building building;
        building.instance = b;
        building.timezone = ds.timezone;
        building.rooms = {Room{"kitchen", 1}, Room{"lounge", 1}};
        for (int m = 1; m <= 15; ++m) {
            ElecMeter meter;
            meter.instance = m;
            meter.device_model = "X";
            meter.site_meter = (m == 1);
            if (m > 1) meter.submeter_of = std::max(1, m / 2);
            Sensor sensor;
            sensor.data_location = "house" + std::to_string(b) + "/channel_" +
                                   std::to_string(m) + ".dat";
            meter.sensors = {sensor};
            if (m > 1) {
                Appliance a;
                a.type = kTypes[m % 6];
                a.instance = m;
                a.room = RoomRef{"kitchen", 1};
                if (a.type == std::string("radio")) a.subtype = "digital";
                if (a.type == std::string("television"))
                    a.extras = Node::mapping({{"screen_size", Node::integer(40)}});
                DateRange r;
                r.start = Date{2012, 1, 1, true, {}};
                a.dates_active = {r};
                meter.appliances = {a};
            }
            building.elec_meters.push_back(std::move(meter));
        }
        ds.buildings.push_back(std::move(building));
    }
    return ds;
}

Check large_dataset_runtime(const TypeLibrary& lib) {
    Check c;
    Dataset ds = synthetic_large();
    auto start = chrono::steady_clock::now();
    ValidationReport report = validate_dataset(ds, lib);
    std::string canonical = export_canonical(ds);
    std::string resolved = export_resolved(ds, lib);
    double elapsed = seconds_since(start);
    c.expect(report.valid(), "synthetic dataset should be valid, got " +
                                 std::to_string(report.error_count()) + " errors");
    c.expect(!canonical.empty() && !resolved.empty(), "export came back empty");
    c.expect(elapsed < 5.0, "took " + std::to_string(elapsed) + "s");
    return c;
}

}  // namespace

int main() {
    TypeLibrary seed = load_seed_library().library;

    report(1, "example folder validates with 0 errors in under 1s",
           fixture_validates(seed));
    report(2, "each single-field mutation yields its documented diagnostic",
           mutation_suite(seed));
    report(3, "merge engine matches the brute-force reference on 1200 random cases",
           merge_oracle());
    report(4, "four-deep inheritance chain resolves by the documented rules",
           inheritance_chain());
    report(5, "random wiring forests obey the structure laws", wiring_properties());
    report(6, "canonical export round-trips byte-identically", round_trip_exports());
    report(7, "library priors are normalized within 1e-6", prior_normalization(seed));
    report(8, "20-building, 300-meter dataset validates and exports in under 5s",
           large_dataset_runtime(seed));

    if (failures != 0) {
        std::cout << failures << " acceptance check(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance checks passed\n";
    return 0;
}
