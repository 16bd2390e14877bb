#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "smeforge/deontic.hpp"
#include "smeforge/repository.hpp"

namespace smeforge {

// A project-specific method under construction. Values are immutable in
// use: every edit returns a new MethodConstruction.
struct MethodConstruction {
  std::string name;
  Selection selection;
  std::map<std::string, std::string> stage_of;  // Task id -> Stage id
  std::string notes;

  bool operator==(const MethodConstruction&) const = default;
};

struct StructuralIssue {
  std::string code;  // ORPHAN_TASK, EMPTY_METHOD
  std::vector<std::string> subjects;

  bool operator==(const StructuralIssue&) const = default;
};

struct AssemblyReport {
  std::vector<DeonticFinding> deontic;
  std::vector<StructuralIssue> structural;
  std::vector<PrecedenceConstraint> precedence;
  bool ok = true;

  bool operator==(const AssemblyReport&) const = default;
};

/// Adds or removes `id`. Removing a Task drops its stage assignment.
/// Throws Error{UnknownId}.
MethodConstruction toggle_fragment(const MethodConstruction& method, const Repository& repository,
                                   std::string_view id, bool include);

/// Places a chosen Task into a Stage. Throws Error{UnknownId} for unknown
/// ids and Error{Precondition} when `task` is not a chosen Task or `stage`
/// is not a Stage.
MethodConstruction assign_stage(const MethodConstruction& method, const Repository& repository,
                                std::string_view task, std::string_view stage);

/// Throws Error{UnknownId} if the selection names unknown fragments.
AssemblyReport validate_method(const MethodConstruction& method, const Repository& repository);

/// Chosen Tasks in an order respecting every precedence edge among them;
/// ties go to the earlier stage, then the smaller id. Throws
/// Error{Precondition} when validate_method reports precedence violations
/// and Error{Cycle} if the induced subgraph is cyclic.
std::vector<std::string> order_tasks(const MethodConstruction& method, const Repository& repository);

struct ExportedTask {
  std::string id;
  std::vector<std::string> techniques;
  std::vector<std::string> producers;
  std::vector<std::string> work_products;

  bool operator==(const ExportedTask&) const = default;
};

struct ExportedProcess {
  std::string id;
  std::vector<ExportedTask> tasks;

  bool operator==(const ExportedProcess&) const = default;
};

struct MethodExport {
  std::string name;
  std::vector<ExportedProcess> processes;
  std::vector<std::string> task_order;

  bool operator==(const MethodExport&) const = default;
};

/// Table-shaped rendering of a valid method: one section per chosen
/// Process, its chosen Tasks in task order, and for each Task the
/// Techniques, Producers and Work Products linked by non-D/F cells.
/// Throws Error{Precondition} if validation fails.
MethodExport export_method(const MethodConstruction& method, const Repository& repository);

std::string render_export(const MethodExport& exported);

/// Throws Error{ParseError | SchemaError}.
MethodExport parse_export(std::string_view document);

}  // namespace smeforge
