#include "smeforge/deontic.hpp"

#include <algorithm>
#include <deque>
#include <tuple>

#include "smeforge/error.hpp"

namespace smeforge {

std::string_view to_string(Severity severity) noexcept {
  switch (severity) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Suggestion: return "suggestion";
  }
  return "?";
}

std::string_view to_string(FindingCode code) noexcept {
  switch (code) {
    case FindingCode::DiscouragedPresent: return "DISCOURAGED_PRESENT";
    case FindingCode::ForbiddenPresent: return "FORBIDDEN_PRESENT";
    case FindingCode::MissingMandatory: return "MISSING_MANDATORY";
    case FindingCode::RecommendedAbsent: return "RECOMMENDED_ABSENT";
  }
  return "?";
}

Severity severity_of(FindingCode code) noexcept {
  switch (code) {
    case FindingCode::MissingMandatory:
    case FindingCode::ForbiddenPresent: return Severity::Error;
    case FindingCode::DiscouragedPresent: return Severity::Warning;
    case FindingCode::RecommendedAbsent: return Severity::Suggestion;
  }
  return Severity::Suggestion;
}

std::optional<CellSide> governing_side(FragmentKind row, FragmentKind col) noexcept {
  using K = FragmentKind;
  if (row == K::Producer && col == K::Task) return CellSide::Col;
  if (row == K::Producer && col == K::WorkProduct) return std::nullopt;
  if (classify_pair(row, col) == PairLegality::Legal) return CellSide::Row;
  return std::nullopt;
}

void require_known(const Repository& repository, const Selection& selection) {
  std::vector<std::string> unknown;
  for (const auto& id : selection)
    if (!repository.contains(id)) unknown.push_back(id);
  if (unknown.empty()) return;
  std::string msg = "unknown fragment id(s):";
  for (const auto& id : unknown) msg += " " + id;
  throw Error(ErrorCode::UnknownId, msg, std::move(unknown));
}

namespace {

struct Oriented {
  const std::string* governor;
  const std::string* counterpart;
};

std::optional<Oriented> orient(const Repository& repository, const DeonticCell& cell) {
  auto side = governing_side(repository.kind_of(cell.row), repository.kind_of(cell.col));
  if (!side) return std::nullopt;
  if (*side == CellSide::Row) return Oriented{&cell.row, &cell.col};
  return Oriented{&cell.col, &cell.row};
}

}  // namespace

Selection required_closure(const Repository& repository, const Selection& selection) {
  require_known(repository, selection);
  Selection closed = selection;
  std::deque<std::string> work(selection.begin(), selection.end());
  while (!work.empty()) {
    const std::string id = std::move(work.front());
    work.pop_front();
    for (const auto& cell : repository.cells_of(id)) {
      if (cell.value != DeonticValue::M) continue;
      auto o = orient(repository, cell);
      if (!o || *o->governor != id) continue;
      if (closed.insert(*o->counterpart).second) work.push_back(*o->counterpart);
    }
  }
  return closed;
}

std::vector<DeonticFinding> selection_findings(const Repository& repository, const Selection& selection) {
  require_known(repository, selection);
  std::vector<DeonticFinding> findings;
  auto emit = [&](FindingCode code, const DeonticCell& cell) {
    findings.push_back({severity_of(code), code, cell});
  };

  for (const auto& cell : repository.cells()) {
    const bool row_in = selection.count(cell.row) > 0;
    const bool col_in = selection.count(cell.col) > 0;
    const auto o = orient(repository, cell);

    switch (cell.value) {
      case DeonticValue::M:
      case DeonticValue::R:
        if (o && selection.count(*o->governor) && !selection.count(*o->counterpart))
          emit(cell.value == DeonticValue::M ? FindingCode::MissingMandatory : FindingCode::RecommendedAbsent, cell);
        break;
      case DeonticValue::F:
        // Advisory-only pairs never produce errors; co-presence is downgraded.
        if (row_in && col_in) emit(o ? FindingCode::ForbiddenPresent : FindingCode::DiscouragedPresent, cell);
        break;
      case DeonticValue::D:
        if (row_in && col_in) emit(FindingCode::DiscouragedPresent, cell);
        break;
      case DeonticValue::O:
        break;
    }
  }

  std::sort(findings.begin(), findings.end(), [](const auto& a, const auto& b) {
    return std::tie(a.code, a.cell.row, a.cell.col) < std::tie(b.code, b.cell.row, b.cell.col);
  });
  return findings;
}

}  // namespace smeforge
