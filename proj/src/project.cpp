#include "smeforge/project.hpp"

#include <algorithm>

#include "json.hpp"
#include "smeforge/error.hpp"

namespace smeforge {

ProjectSpec load_project(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed project document: ") + e.what());
  }
  ProjectSpec project;
  try {
    project.name = doc.at("name").get<std::string>();
    for (const auto& r : doc.at("requirements")) {
      project.requirements.push_back({r.at("id").get<std::string>(), r.at("title").get<std::string>(),
                                      r.at("explanation").get<std::string>(),
                                      r.at("tasks").get<std::vector<std::string>>(),
                                      r.at("techniques").get<std::vector<std::string>>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("project: ") + e.what());
  }
  std::set<std::string> ids;
  for (const auto& r : project.requirements)
    if (!ids.insert(r.id).second)
      throw Error(ErrorCode::IntegrityError, "duplicate requirement id '" + r.id + "'", {r.id});
  return project;
}

std::string save_project(const ProjectSpec& project) {
  nlohmann::ordered_json reqs = nlohmann::ordered_json::array();
  for (const auto& r : project.requirements) {
    reqs.push_back({{"id", r.id},
                    {"title", r.title},
                    {"explanation", r.explanation},
                    {"tasks", r.tasks},
                    {"techniques", r.techniques}});
  }
  nlohmann::ordered_json doc;
  doc["name"] = project.name;
  doc["requirements"] = std::move(reqs);
  return doc.dump(2) + "\n";
}

UsabilityReport usability(const ProjectSpec& project) {
  if (project.requirements.empty())
    throw Error(ErrorCode::NoRequirements, "project '" + project.name + "' has no requirements", {project.name});
  UsabilityReport report;
  report.r = project.requirements.size();
  for (const auto& req : project.requirements) {
    if (req.met())
      ++report.m;
    else
      report.unmet.push_back(req.id);
    report.implied_selection.insert(req.tasks.begin(), req.tasks.end());
    report.implied_selection.insert(req.techniques.begin(), req.techniques.end());
  }
  std::sort(report.unmet.begin(), report.unmet.end());
  const auto m = static_cast<std::int64_t>(report.m);
  const auto r = static_cast<std::int64_t>(report.r);
  report.percent_exact = Rational(100 * m, r);
  report.percent_display = static_cast<int>(100 * m / r);
  return report;
}

namespace {

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

}  // namespace

std::string project_report(const ProjectSpec& project, const Repository& repository, ReportFormat format) {
  for (const auto& req : project.requirements) {
    for (const auto* list : {&req.tasks, &req.techniques})
      for (const auto& id : *list)
        if (!repository.contains(id))
          throw Error(ErrorCode::UnknownFragment, "requirement " + req.id + " maps unknown fragment '" + id + "'",
                      {req.id, id});
  }
  const auto report = usability(project);

  if (format == ReportFormat::Machine) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& req : project.requirements) {
      rows.push_back({{"id", req.id},
                      {"title", req.title},
                      {"explanation", req.explanation},
                      {"tasks", req.tasks},
                      {"techniques", req.techniques},
                      {"supported", req.met()}});
    }
    nlohmann::ordered_json doc;
    doc["name"] = project.name;
    doc["requirements"] = std::move(rows);
    doc["usability"] = {{"r", report.r},
                        {"m", report.m},
                        {"percent_exact", report.percent_exact.to_string()},
                        {"percent_display", report.percent_display},
                        {"unmet", report.unmet},
                        {"implied_selection", report.implied_selection}};
    return doc.dump(2) + "\n";
  }

  auto names = [&](const std::vector<std::string>& ids) {
    std::vector<std::string> out;
    for (const auto& id : ids) out.push_back(repository.at(id).name + " [" + id + "]");
    return out;
  };

  std::string out = "Project: " + project.name + "\n\n";
  for (const auto& req : project.requirements) {
    out += req.id + "  " + req.title + "\n";
    out += "    analysis:   " + req.explanation + "\n";
    if (!req.met()) {
      out += "    tasks:      Not supported\n";
    } else {
      out += "    tasks:      " + join(names(req.tasks), "; ") + "\n";
      out += "    techniques: " + (req.techniques.empty() ? std::string("-") : join(names(req.techniques), "; ")) + "\n";
    }
  }
  out += "\nUsability(%) = " + std::to_string(report.m) + " / " + std::to_string(report.r) + " (" +
         std::to_string(report.percent_display) + "%)\n";
  out += "Unmet: " + (report.unmet.empty() ? std::string("none") : join(report.unmet, ", ")) + "\n";
  return out;
}

}  // namespace smeforge
