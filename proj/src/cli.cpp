#include "nilmmeta/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "nilmmeta/export.hpp"
#include "nilmmeta/loader.hpp"
#include "nilmmeta/typedb.hpp"
#include "nilmmeta/validate.hpp"
#include "nilmmeta/wiring.hpp"

namespace nilmmeta {

namespace {

namespace fs = std::filesystem;

void print_diags(const std::vector<Diagnostic>& diags, std::ostream& err) {
    for (const auto& d : diags) err << d.to_text() << '\n';
}

/// Loads the seed library, overlaid when a folder was given. Structural
/// library problems are fatal (exit 2).
std::optional<TypeLibrary> load_library(const std::string& overlay, std::ostream& err) {
    std::optional<fs::path> folder;
    if (!overlay.empty()) folder = fs::path(overlay);
    LibraryLoadResult result = load_overlaid_library(folder);
    print_diags(result.diagnostics, err);
    for (const auto& d : result.diagnostics) {
        if (d.severity == Severity::Error) return std::nullopt;
    }
    return std::move(result.library);
}

/// Loads and binds a dataset. Layout and parse errors are fatal (exit 2);
/// the collected diagnostics (including bind findings) are handed back for
/// the caller's report.
std::optional<Dataset> load_dataset(const std::string& dir,
                                    std::vector<Diagnostic>& diags, std::ostream& err) {
    RawDatasetFolder raw = load_dataset_dir(dir);
    if (!raw.ok()) {
        print_diags(raw.diagnostics, err);
        return std::nullopt;
    }
    BindResult bound = bind(raw);
    diags = std::move(raw.diagnostics);
    extend(diags, std::move(bound.diagnostics));
    return std::move(bound.dataset);
}

int cmd_validate(const std::string& dir, const std::string& overlay,
                 const std::string& format, bool strict, std::ostream& out,
                 std::ostream& err) {
    auto library = load_library(overlay, err);
    if (!library) return 2;
    std::vector<Diagnostic> diags;
    auto dataset = load_dataset(dir, diags, err);
    if (!dataset) return 2;

    ValidationReport checked = validate_dataset(*dataset, *library);
    extend(diags, std::move(checked.diagnostics));
    ValidationReport report = assemble_report(std::move(diags));
    if (strict) {
        for (auto& d : report.diagnostics) d.severity = Severity::Error;
    }
    out << (format == "json" ? render_report_json(report) : render_report_text(report));
    return report.valid() ? 0 : 1;
}

int cmd_tree(const std::string& dir, std::ostream& out, std::ostream& err) {
    std::vector<Diagnostic> diags;
    auto dataset = load_dataset(dir, diags, err);
    if (!dataset) return 2;
    WiringBuildResult built = build_wiring_forest(*dataset);
    out << render_forest(*dataset, built.forest);
    print_diags(built.diagnostics, err);
    for (const auto& d : built.diagnostics) {
        if (d.severity == Severity::Error) return 1;
    }
    return 0;
}

int cmd_resolve(const std::string& dir, const std::string& overlay, int building,
                int meter, std::ostream& out, std::ostream& err) {
    auto library = load_library(overlay, err);
    if (!library) return 2;
    std::vector<Diagnostic> diags;
    auto dataset = load_dataset(dir, diags, err);
    if (!dataset) return 2;

    const std::vector<ElecMeter>* meters = nullptr;
    if (building > 0) {
        for (const auto& b : dataset->buildings) {
            if (b.instance == building) {
                meters = &b.elec_meters;
                break;
            }
        }
        if (meters == nullptr) {
            err << "E-REF-NOT-FOUND: no building " << building << '\n';
            return 2;
        }
    } else {
        meters = &dataset->dataset_level_meters;
    }
    for (const auto& m : *meters) {
        if (m.instance == meter) {
            out << resolved_records_json(*library, m);
            return 0;
        }
    }
    err << "E-REF-NOT-FOUND: no meter " << meter
        << (building > 0 ? " in building " + std::to_string(building)
                         : std::string(" at dataset level"))
        << '\n';
    return 2;
}

int cmd_types(const std::string& action, const std::string& name,
              const std::string& overlay, std::ostream& out, std::ostream& err) {
    auto library = load_library(overlay, err);
    if (!library) return 2;
    try {
        if (action == "show") {
            out << resolved_type_json(*library, name);
        } else if (action == "ancestry") {
            for (const auto& ancestor : ancestry(*library, name)) out << ancestor << '\n';
        } else {
            out << type_priors_json(*library, name);
        }
    } catch (const std::out_of_range& e) {
        err << e.what() << '\n';
        return 2;
    }
    return 0;
}

int cmd_export(const std::string& dir, const std::string& overlay,
               const std::string& out_path, bool resolved, std::ostream& out,
               std::ostream& err) {
    auto library = load_library(overlay, err);
    if (!library) return 2;
    std::vector<Diagnostic> diags;
    auto dataset = load_dataset(dir, diags, err);
    if (!dataset) return 2;

    ValidationReport checked = validate_dataset(*dataset, *library);
    extend(diags, std::move(checked.diagnostics));
    ValidationReport report = assemble_report(std::move(diags));
    if (!report.valid()) {
        err << render_report_text(report);
        return 1;
    }

    std::string text =
        resolved ? export_resolved(*dataset, *library) : export_canonical(*dataset);
    if (out_path.empty()) {
        out << text;
        return 0;
    }
    std::ofstream file(out_path, std::ios::binary);
    file << text;
    file.flush();
    if (!file) {
        err << "cannot write " << out_path << '\n';
        return 2;
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Metadata tools for energy disaggregation datasets"};
    app.require_subcommand(1);

    std::string dir, overlay, format = "text", out_path, types_action, type_name;
    int building = 0, meter = 0;
    bool strict = false, resolved = false;

    auto add_library_flag = [&](CLI::App* cmd) {
        cmd->add_option("--library", overlay,
                        "folder with appliance types overlaying the built-in library")
            ->envname("NILM_META_LIBRARY");
    };

    CLI::App* validate = app.add_subcommand("validate", "check a metadata folder");
    validate->add_option("dir", dir, "metadata folder")->required();
    add_library_flag(validate);
    validate->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    validate->add_flag("--strict", strict, "treat warnings as errors");

    CLI::App* resolve = app.add_subcommand("resolve", "resolve a meter's appliances");
    resolve->add_option("dir", dir, "metadata folder")->required();
    add_library_flag(resolve);
    resolve->add_option("--building", building, "building instance");
    resolve->add_option("--meter", meter, "meter instance")->required();

    CLI::App* tree = app.add_subcommand("tree", "print the wiring forest");
    tree->add_option("dir", dir, "metadata folder")->required();

    CLI::App* types = app.add_subcommand("types", "query the appliance type library");
    types->add_option("action", types_action, "show, ancestry, or priors")
        ->required()
        ->check(CLI::IsMember({"show", "ancestry", "priors"}));
    types->add_option("name", type_name, "appliance type name")->required();
    add_library_flag(types);

    CLI::App* exp = app.add_subcommand("export", "write the canonical JSON form");
    exp->add_option("dir", dir, "metadata folder")->required();
    add_library_flag(exp);
    exp->add_option("-o,--output", out_path, "output file (stdout when omitted)");
    exp->add_flag("--resolved", resolved, "inline appliance types post-inheritance");

    std::vector<const char*> argv;
    argv.push_back("nilm-meta");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 2;
    }

    if (validate->parsed())
        return cmd_validate(dir, overlay, format, strict, out, err);
    if (tree->parsed()) return cmd_tree(dir, out, err);
    if (resolve->parsed())
        return cmd_resolve(dir, overlay, building, meter, out, err);
    if (types->parsed())
        return cmd_types(types_action, type_name, overlay, out, err);
    return cmd_export(dir, overlay, out_path, resolved, out, err);
}

}  // namespace nilmmeta
