#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace smeforge {

enum class ErrorCode {
  ParseError,
  SchemaError,
  IntegrityError,
  UnknownId,
  Cycle,
  Precondition,
  EmptyFragmentSet,
  UnknownFragment,
  NoRequirements,
  IoError,
};

std::string_view error_code_name(ErrorCode code);

// Every expected failure in the engine is raised as an Error. `subjects`
// names the offending ids (fragments, cells rendered as "row->col", SDM
// entries, requirement labels) so callers can surface them verbatim.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string message, std::vector<std::string> subjects = {});

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::string>& subjects() const noexcept { return subjects_; }

private:
  ErrorCode code_;
  std::vector<std::string> subjects_;
};

}  // namespace smeforge
