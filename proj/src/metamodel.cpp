#include "smeforge/metamodel.hpp"

#include <algorithm>
#include <cctype>

#include "smeforge/error.hpp"

namespace smeforge {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::SchemaError: return "SCHEMA_ERROR";
    case ErrorCode::IntegrityError: return "INTEGRITY_ERROR";
    case ErrorCode::UnknownId: return "UNKNOWN_ID";
    case ErrorCode::Cycle: return "CYCLE";
    case ErrorCode::Precondition: return "PRECONDITION";
    case ErrorCode::EmptyFragmentSet: return "EMPTY_FRAGMENT_SET";
    case ErrorCode::UnknownFragment: return "UNKNOWN_FRAGMENT";
    case ErrorCode::NoRequirements: return "NO_REQUIREMENTS";
    case ErrorCode::IoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, std::string message, std::vector<std::string> subjects)
    : std::runtime_error(std::move(message)), code_(code), subjects_(std::move(subjects)) {}

PairLegality classify_pair(FragmentKind row, FragmentKind col) noexcept {
  const bool legal = std::any_of(kLegalPairs.begin(), kLegalPairs.end(),
                                 [&](const auto& p) { return p.first == row && p.second == col; });
  return legal ? PairLegality::Legal : PairLegality::Illegal;
}

std::string_view to_string(FragmentKind kind) noexcept {
  switch (kind) {
    case FragmentKind::Process: return "process";
    case FragmentKind::Task: return "task";
    case FragmentKind::Technique: return "technique";
    case FragmentKind::WorkProduct: return "work_product";
    case FragmentKind::Producer: return "producer";
    case FragmentKind::Language: return "language";
    case FragmentKind::Stage: return "stage";
  }
  return "?";
}

std::string_view display_name(FragmentKind kind) noexcept {
  switch (kind) {
    case FragmentKind::Process: return "Process";
    case FragmentKind::Task: return "Task";
    case FragmentKind::Technique: return "Technique";
    case FragmentKind::WorkProduct: return "Work Product";
    case FragmentKind::Producer: return "Producer";
    case FragmentKind::Language: return "Language";
    case FragmentKind::Stage: return "Stage";
  }
  return "?";
}

std::string_view to_string(DeonticValue value) noexcept {
  switch (value) {
    case DeonticValue::M: return "M";
    case DeonticValue::R: return "R";
    case DeonticValue::O: return "O";
    case DeonticValue::D: return "D";
    case DeonticValue::F: return "F";
  }
  return "?";
}

std::string_view to_string(Origin origin) noexcept {
  return origin == Origin::SoExtension ? "so-extension" : "opf-baseline";
}

std::optional<FragmentKind> parse_kind(std::string_view text) noexcept {
  for (auto kind : kAllKinds)
    if (to_string(kind) == text) return kind;
  return std::nullopt;
}

std::optional<DeonticValue> parse_value(std::string_view text) noexcept {
  for (auto value : kAllValues)
    if (to_string(value) == text) return value;
  return std::nullopt;
}

std::optional<Origin> parse_origin(std::string_view text) noexcept {
  if (text == "so-extension") return Origin::SoExtension;
  if (text == "opf-baseline") return Origin::OpfBaseline;
  return std::nullopt;
}

namespace {

bool is_slug_char(char c) noexcept { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }

}  // namespace

bool is_valid_slug(std::string_view id) noexcept {
  if (id.empty() || id.size() > kMaxSlugLength) return false;
  if (id.front() == '-' || id.back() == '-') return false;
  char prev = '-';
  for (char c : id) {
    if (c == '-') {
      if (prev == '-') return false;
    } else if (!is_slug_char(c)) {
      return false;
    }
    prev = c;
  }
  return true;
}

std::string slugify(std::string_view name) {
  std::string out;
  bool pending_hyphen = false;
  for (unsigned char c : name) {
    if (std::isalnum(c)) {
      if (pending_hyphen && !out.empty()) out.push_back('-');
      pending_hyphen = false;
      out.push_back(static_cast<char>(std::tolower(c)));
    } else {
      pending_hyphen = true;
    }
  }
  return out;
}

ValidationReport validate_fragment(const MethodFragment& fragment) {
  ValidationReport report;
  if (!is_valid_slug(fragment.id))
    report.push_back({"BAD_ID", "id '" + fragment.id + "' does not match [a-z0-9]+(-[a-z0-9]+)* (max 80)"});
  const auto raw = static_cast<int>(fragment.kind);
  if (raw < 0 || raw >= static_cast<int>(kAllKinds.size()))
    report.push_back({"BAD_KIND", "kind value " + std::to_string(raw) + " is not a fragment kind"});
  const bool blank = std::all_of(fragment.name.begin(), fragment.name.end(),
                                 [](unsigned char c) { return std::isspace(c); });
  if (blank) report.push_back({"EMPTY_NAME", "fragment '" + fragment.id + "' has no name"});
  return report;
}

}  // namespace smeforge
