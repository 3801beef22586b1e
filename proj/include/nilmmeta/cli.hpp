#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nilmmeta {

/// The nilm-meta command line: validate, resolve, tree, types, export.
/// Returns the process exit status: 0 when the request succeeded and the
/// data was valid, 1 for validation errors, 2 for usage, I/O, or parse
/// failures. Data goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilmmeta
