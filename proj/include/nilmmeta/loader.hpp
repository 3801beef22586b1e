#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "nilmmeta/diagnostics.hpp"
#include "nilmmeta/model.hpp"
#include "nilmmeta/node.hpp"
#include "nilmmeta/parse.hpp"

namespace nilmmeta {

/// A metadata folder as parsed, before binding: the dataset document plus
/// per-building documents keyed by the index in their file name.
struct RawDatasetFolder {
    Node dataset_doc = Node::mapping();
    std::map<int, Node> building_docs;
    std::vector<Diagnostic> diagnostics;

    bool ok() const {
        for (const auto& d : diagnostics)
            if (d.severity == Severity::Error) return false;
        return true;
    }
};

/// Read a metadata folder: exactly one dataset.{yaml,yml,json} plus any
/// number of building<I>.{yaml,yml,json}. Other files are ignored with a
/// warning. The folder may also be a parent directory holding metadata/, or
/// a single canonical document file with buildings inline.
RawDatasetFolder load_dataset_dir(const std::filesystem::path& path);

struct BindResult {
    Dataset dataset;
    std::vector<Diagnostic> diagnostics;
};

/// Bind parsed documents to the typed model. Binding is total: problems
/// accumulate as diagnostics (E-TYPE-MISMATCH, E-MISSING-REQUIRED, ...) and
/// a best-effort Dataset always comes back. Unknown fields warn, except
/// inside appliances where they are kept as extras for schema-merged
/// validation. Building timezone, geo_location, and temporal_coverage
/// default to the dataset's values.
BindResult bind(const RawDatasetFolder& raw);

/// Convenience: load_dataset_dir followed by bind, diagnostics combined.
BindResult load_and_bind(const std::filesystem::path& path);

/// Bind one appliance node (also used for the component lists inside
/// appliance type documents). Unknown fields land in extras.
Appliance bind_appliance(const Node& node, const std::string& path,
                         std::vector<Diagnostic>& diags);

/// Bind a learnt-model document.
LearntModel bind_learnt_model(const Node& node, const std::string& path,
                              std::vector<Diagnostic>& diags);

}  // namespace nilmmeta
