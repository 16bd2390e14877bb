#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "smeforge/metrics.hpp"
#include "smeforge/repository.hpp"

namespace smeforge {

struct Requirement {
  std::string id;  // display label, e.g. "#R1"
  std::string title;
  std::string explanation;
  std::vector<std::string> tasks;
  std::vector<std::string> techniques;

  // Techniques alone never satisfy a requirement.
  bool met() const noexcept { return !tasks.empty(); }
  bool operator==(const Requirement&) const = default;
};

struct ProjectSpec {
  std::string name;
  std::vector<Requirement> requirements;

  bool operator==(const ProjectSpec&) const = default;
};

/// Throws Error{ParseError | SchemaError | IntegrityError}.
ProjectSpec load_project(std::string_view document);
std::string save_project(const ProjectSpec& project);

struct UsabilityReport {
  std::size_t r = 0;
  std::size_t m = 0;
  Rational percent_exact;  // 100 * M / R
  int percent_display = 0;  // truncated toward zero
  std::vector<std::string> unmet;
  std::set<std::string> implied_selection;

  bool operator==(const UsabilityReport&) const = default;
};

/// Usability(%) = 100 * M / R. Throws Error{NoRequirements}.
UsabilityReport usability(const ProjectSpec& project);

/// Requirement-by-requirement mapping table followed by the usability
/// summary. Throws Error{UnknownFragment} naming requirement and id.
std::string project_report(const ProjectSpec& project, const Repository& repository, ReportFormat format);

}  // namespace smeforge
