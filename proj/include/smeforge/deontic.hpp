#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "smeforge/repository.hpp"

namespace smeforge {

using Selection = std::set<std::string>;

enum class Severity { Error, Warning, Suggestion };

// Declared in name order so enum order and "by code" ordering agree.
enum class FindingCode { DiscouragedPresent, ForbiddenPresent, MissingMandatory, RecommendedAbsent };

struct DeonticFinding {
  Severity severity = Severity::Suggestion;
  FindingCode code = FindingCode::RecommendedAbsent;
  DeonticCell cell;

  bool operator==(const DeonticFinding&) const = default;
};

std::string_view to_string(Severity severity) noexcept;
std::string_view to_string(FindingCode code) noexcept;
Severity severity_of(FindingCode code) noexcept;

enum class CellSide { Row, Col };

/// Which side of a cell of kinds (row, col) governs the obligation: the
/// coarser fragment. Producer/Task cells are governed by the Task. Returns
/// nullopt for Producer/WorkProduct, which is advisory-only.
std::optional<CellSide> governing_side(FragmentKind row, FragmentKind col) noexcept;

/// Least superset of `selection` closed under Mandatory cells whose
/// governing side is chosen. Throws Error{UnknownId}.
Selection required_closure(const Repository& repository, const Selection& selection);

/// Findings sorted by (code, row, col). Throws Error{UnknownId}.
std::vector<DeonticFinding> selection_findings(const Repository& repository, const Selection& selection);

/// Throws Error{UnknownId} naming every id in `selection` absent from the
/// repository.
void require_known(const Repository& repository, const Selection& selection);

}  // namespace smeforge
