#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace smeforge {

// Process, Task and Technique are the three Work Unit granularities.
enum class FragmentKind { Process, Task, Technique, WorkProduct, Producer, Language, Stage };

inline constexpr std::array<FragmentKind, 7> kAllKinds = {
    FragmentKind::Process,  FragmentKind::Task,     FragmentKind::Technique, FragmentKind::WorkProduct,
    FragmentKind::Producer, FragmentKind::Language, FragmentKind::Stage,
};

// M and F carry hard validation force; R and D are advisory; O is neutral.
enum class DeonticValue { M, R, O, D, F };

inline constexpr std::array<DeonticValue, 5> kAllValues = {
    DeonticValue::M, DeonticValue::R, DeonticValue::O, DeonticValue::D, DeonticValue::F,
};

enum class Origin { SoExtension, OpfBaseline };

enum class PairLegality { Legal, Illegal };

// The six meaningful (row, column) kind combinations of a deontic matrix,
// in canonical orientation. Reversed pairs are illegal.
inline constexpr std::array<std::pair<FragmentKind, FragmentKind>, 6> kLegalPairs = {{
    {FragmentKind::Process, FragmentKind::Task},
    {FragmentKind::Task, FragmentKind::Technique},
    {FragmentKind::Producer, FragmentKind::Task},
    {FragmentKind::Task, FragmentKind::WorkProduct},
    {FragmentKind::Producer, FragmentKind::WorkProduct},
    {FragmentKind::WorkProduct, FragmentKind::Language},
}};

PairLegality classify_pair(FragmentKind row, FragmentKind col) noexcept;

std::string_view to_string(FragmentKind kind) noexcept;
std::string_view to_string(DeonticValue value) noexcept;
std::string_view to_string(Origin origin) noexcept;

std::optional<FragmentKind> parse_kind(std::string_view text) noexcept;
std::optional<DeonticValue> parse_value(std::string_view text) noexcept;
std::optional<Origin> parse_origin(std::string_view text) noexcept;

/// Human-readable label ("Work Product") as opposed to the wire token.
std::string_view display_name(FragmentKind kind) noexcept;

struct MethodFragment {
  std::string id;
  std::string name;
  FragmentKind kind = FragmentKind::Task;
  std::string description;
  Origin origin = Origin::SoExtension;
  std::optional<std::string> owner_process;
  std::vector<std::string> aliases;

  bool operator==(const MethodFragment&) const = default;
};

inline constexpr std::size_t kMaxSlugLength = 80;

/// `[a-z0-9]+(-[a-z0-9]+)*`, at most 80 characters.
bool is_valid_slug(std::string_view id) noexcept;

/// Lowercases, maps every run of non-alphanumerics to a single hyphen and
/// trims hyphens at both ends. "Specify Service Level Agreement (SLA)"
/// becomes "specify-service-level-agreement-sla".
std::string slugify(std::string_view name);

struct ValidationIssue {
  std::string code;  // BAD_ID, EMPTY_NAME
  std::string detail;

  bool operator==(const ValidationIssue&) const = default;
};

using ValidationReport = std::vector<ValidationIssue>;

ValidationReport validate_fragment(const MethodFragment& fragment);

}  // namespace smeforge
