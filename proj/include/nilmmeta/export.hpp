#pragma once

#include <string>

#include "nilmmeta/model.hpp"
#include "nilmmeta/typedb.hpp"

namespace nilmmeta {

/// The dataset as one canonical JSON document: UTF-8, sorted keys, two-space
/// indent, LF endings, trailing newline, buildings inline, defaults made
/// explicit. Canonicalization is a fixed point: exporting, importing, and
/// exporting again reproduces the bytes.
std::string export_canonical(const Dataset& dataset);

/// Canonical document with every appliance record inlined post-inheritance:
/// merged type properties, effective categories, expanded components, and
/// collected priors tagged with ancestry distance.
std::string export_resolved(const Dataset& dataset, const TypeLibrary& library);

/// The resolved appliance records of one meter as a canonical JSON array
/// (empty array for a meter without appliances). Unresolvable appliances
/// fall back to their plain record.
std::string resolved_records_json(const TypeLibrary& library, const ElecMeter& meter);

/// One resolved type as canonical JSON: ancestry, merged properties,
/// subtypes, categories, default components.
std::string resolved_type_json(const TypeLibrary& library, const std::string& type_name);

/// Collected priors of a type for every distribution that has any, as
/// canonical JSON keyed by distribution name.
std::string type_priors_json(const TypeLibrary& library, const std::string& type_name);

}  // namespace nilmmeta
