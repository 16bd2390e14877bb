#include "smeforge/assembly.hpp"

#include <algorithm>
#include <limits>

#include "json.hpp"
#include "smeforge/error.hpp"
#include "smeforge/graph.hpp"

namespace smeforge {

MethodConstruction toggle_fragment(const MethodConstruction& method, const Repository& repository,
                                   std::string_view id, bool include) {
  repository.at(id);
  MethodConstruction next = method;
  const std::string key(id);
  if (include) {
    next.selection.insert(key);
  } else {
    next.selection.erase(key);
    next.stage_of.erase(key);
  }
  return next;
}

MethodConstruction assign_stage(const MethodConstruction& method, const Repository& repository,
                                std::string_view task, std::string_view stage) {
  const auto& t = repository.at(task);
  const auto& s = repository.at(stage);
  if (t.kind != FragmentKind::Task || !method.selection.count(t.id))
    throw Error(ErrorCode::Precondition, "'" + t.id + "' is not a chosen task", {t.id});
  if (s.kind != FragmentKind::Stage)
    throw Error(ErrorCode::Precondition, "'" + s.id + "' is not a stage", {s.id});
  MethodConstruction next = method;
  next.stage_of[t.id] = s.id;
  return next;
}

AssemblyReport validate_method(const MethodConstruction& method, const Repository& repository) {
  AssemblyReport report;
  report.deontic = selection_findings(repository, method.selection);

  bool has_task = false;
  for (const auto& id : method.selection) {
    const auto& f = repository.at(id);
    if (f.kind != FragmentKind::Task) continue;
    has_task = true;
    if (f.owner_process && !method.selection.count(*f.owner_process))
      report.structural.push_back({"ORPHAN_TASK", {f.id, *f.owner_process}});
  }
  if (!has_task) report.structural.push_back({"EMPTY_METHOD", {}});

  for (const auto& e : repository.precedence())
    if (method.selection.count(e.after) && !method.selection.count(e.before)) report.precedence.push_back(e);

  const bool deontic_error = std::any_of(report.deontic.begin(), report.deontic.end(),
                                         [](const auto& f) { return f.severity == Severity::Error; });
  report.ok = !deontic_error && report.structural.empty() && report.precedence.empty();
  return report;
}

std::vector<std::string> order_tasks(const MethodConstruction& method, const Repository& repository) {
  const auto report = validate_method(method, repository);
  if (!report.precedence.empty()) {
    std::vector<std::string> missing;
    for (const auto& e : report.precedence) missing.push_back(e.before);
    throw Error(ErrorCode::Precondition, "method has unmet precedence constraints", std::move(missing));
  }

  std::vector<std::string> tasks;
  for (const auto& id : method.selection)
    if (repository.kind_of(id) == FragmentKind::Task) tasks.push_back(id);

  std::vector<Edge> edges;
  for (const auto& e : repository.precedence()) edges.emplace_back(e.before, e.after);

  auto rank = [&](const std::string& task) {
    auto it = method.stage_of.find(task);
    if (it == method.stage_of.end()) return std::numeric_limits<std::size_t>::max();
    return repository.stage_rank(it->second).value_or(std::numeric_limits<std::size_t>::max());
  };
  return precedence_order(tasks, edges, [&](const std::string& a, const std::string& b) {
    const auto ra = rank(a), rb = rank(b);
    return ra != rb ? ra < rb : a < b;
  });
}

MethodExport export_method(const MethodConstruction& method, const Repository& repository) {
  const auto report = validate_method(method, repository);
  if (!report.ok) throw Error(ErrorCode::Precondition, "method '" + method.name + "' does not validate");

  MethodExport out;
  out.name = method.name;
  out.task_order = order_tasks(method, repository);

  auto linked = [&](const std::string& task, FragmentKind kind) {
    std::vector<std::string> ids;
    for (const auto& c : repository.cells_of(task)) {
      if (c.value == DeonticValue::D || c.value == DeonticValue::F) continue;
      const std::string& other = c.row == task ? c.col : c.row;
      if (repository.kind_of(other) == kind) ids.push_back(other);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
  };

  for (const auto& pid : method.selection) {
    if (repository.kind_of(pid) != FragmentKind::Process) continue;
    ExportedProcess section{pid, {}};
    for (const auto& tid : out.task_order) {
      const auto& task = repository.at(tid);
      bool belongs = task.owner_process == pid;
      for (const auto& c : repository.cells_of(tid))
        belongs = belongs || (c.row == pid && c.value != DeonticValue::D && c.value != DeonticValue::F);
      if (!belongs) continue;
      section.tasks.push_back({tid, linked(tid, FragmentKind::Technique), linked(tid, FragmentKind::Producer),
                               linked(tid, FragmentKind::WorkProduct)});
    }
    out.processes.push_back(std::move(section));
  }
  return out;
}

std::string render_export(const MethodExport& exported) {
  nlohmann::ordered_json doc;
  doc["name"] = exported.name;
  auto processes = nlohmann::ordered_json::array();
  for (const auto& p : exported.processes) {
    auto tasks = nlohmann::ordered_json::array();
    for (const auto& t : p.tasks) {
      tasks.push_back(nlohmann::ordered_json{{"id", t.id},
                                             {"techniques", t.techniques},
                                             {"producers", t.producers},
                                             {"work_products", t.work_products}});
    }
    processes.push_back(nlohmann::ordered_json{{"id", p.id}, {"tasks", std::move(tasks)}});
  }
  doc["processes"] = std::move(processes);
  doc["task_order"] = exported.task_order;
  return doc.dump(2) + "\n";
}

MethodExport parse_export(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed method export: ") + e.what());
  }
  try {
    MethodExport out;
    out.name = doc.at("name").get<std::string>();
    for (const auto& p : doc.at("processes")) {
      ExportedProcess section{p.at("id").get<std::string>(), {}};
      for (const auto& t : p.at("tasks")) {
        section.tasks.push_back({t.at("id").get<std::string>(),
                                 t.at("techniques").get<std::vector<std::string>>(),
                                 t.at("producers").get<std::vector<std::string>>(),
                                 t.at("work_products").get<std::vector<std::string>>()});
      }
      out.processes.push_back(std::move(section));
    }
    out.task_order = doc.at("task_order").get<std::vector<std::string>>();
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("method export: ") + e.what());
  }
}

}  // namespace smeforge
