#pragma once

#include <string>
#include <vector>

#include "nilmmeta/diagnostics.hpp"
#include "nilmmeta/model.hpp"
#include "nilmmeta/typedb.hpp"

namespace nilmmeta {

/// Check an appliance's extra fields against the type's merged
/// additional-properties schema. Extras not covered by the merged fragment
/// yield E-UNKNOWN-APPLIANCE-FIELD; covered ones are checked by rule. Types
/// that do not resolve yield nothing here (resolution reports separately).
std::vector<Diagnostic> validate_appliance_extras(const TypeLibrary& library,
                                                  const Appliance& appliance,
                                                  const std::string& path = "");

/// Full-dataset validation: local invariants, device references, wiring,
/// appliance resolution, extras, room references, and prior declarations of
/// every appliance type the dataset uses. Diagnostics are deduplicated and
/// ordered by document (dataset document, then buildings by instance, then
/// library findings), with check order preserved within a document.
ValidationReport validate_dataset(const Dataset& dataset, const TypeLibrary& library);

/// Deduplicate exact (severity, code, path) repeats keeping the first, then
/// order by document as validate_dataset does. Use to fold loader
/// diagnostics into one report.
ValidationReport assemble_report(std::vector<Diagnostic> diagnostics);

/// Controlled vocabulary for LearntModel.model_type.
const std::vector<std::string>& model_type_vocabulary();

/// Checks a learnt model: model_type in vocabulary (E-BAD-MODEL-TYPE) and
/// appliance_type resolvable (E-UNKNOWN-APPLIANCE-TYPE).
std::vector<Diagnostic> validate_learnt_model(const LearntModel& model,
                                              const TypeLibrary& library,
                                              const std::string& path = "");

/// One diagnostic per line plus a trailing "N errors, M warnings" summary.
std::string render_report_text(const ValidationReport& report);

/// Machine-readable form: {valid, error_count, warning_count, diagnostics}.
/// Canonical layout: sorted keys, two-space indent, trailing newline.
std::string render_report_json(const ValidationReport& report);

}  // namespace nilmmeta
