#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "smeforge/assembly.hpp"

namespace smeforge::cli {

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kUsage = 2 };

/// Selection file: either a JSON array of fragment ids or an object
/// {"name", "chosen": [...], "stage_of": {...}, "notes"}. Throws
/// Error{ParseError | SchemaError}.
MethodConstruction parse_selection(std::string_view document, const std::string& default_name);

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smeforge::cli
