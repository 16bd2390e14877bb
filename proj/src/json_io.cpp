#include "smeforge/json_io.hpp"

namespace smeforge::json_io {

Json to_json(const MethodFragment& f) {
  Json o;
  o["id"] = f.id;
  o["name"] = f.name;
  o["kind"] = std::string(to_string(f.kind));
  o["description"] = f.description;
  o["origin"] = std::string(to_string(f.origin));
  if (f.owner_process) o["owner_process"] = *f.owner_process;
  o["aliases"] = f.aliases;
  return o;
}

Json to_json(const DeonticCell& c) {
  return Json{{"row", c.row}, {"col", c.col}, {"value", std::string(to_string(c.value))}};
}

Json to_json(const PrecedenceConstraint& e) {
  return Json{{"before", e.before}, {"after", e.after}, {"source", e.source}};
}

Json to_json(const DeonticFinding& f) {
  return Json{{"severity", std::string(to_string(f.severity))},
              {"code", std::string(to_string(f.code))},
              {"cell", to_json(f.cell)}};
}

Json to_json(const AssemblyReport& report) {
  Json deontic = Json::array();
  for (const auto& f : report.deontic) deontic.push_back(to_json(f));
  Json structural = Json::array();
  for (const auto& s : report.structural) structural.push_back(Json{{"code", s.code}, {"subjects", s.subjects}});
  Json precedence = Json::array();
  for (const auto& e : report.precedence) precedence.push_back(to_json(e));
  Json o;
  o["ok"] = report.ok;
  o["deontic"] = std::move(deontic);
  o["structural"] = std::move(structural);
  o["precedence"] = std::move(precedence);
  return o;
}

Json to_json(const Relations& rel) {
  Json cells = Json::array();
  for (const auto& c : rel.cells) cells.push_back(to_json(c));
  Json o;
  o["cells"] = std::move(cells);
  o["predecessors"] = rel.predecessors;
  o["successors"] = rel.successors;
  return o;
}

Json to_json(const UsabilityReport& r) {
  Json o;
  o["r"] = r.r;
  o["m"] = r.m;
  o["percent_exact"] = r.percent_exact.to_string();
  o["percent_display"] = r.percent_display;
  o["unmet"] = r.unmet;
  o["implied_selection"] = r.implied_selection;
  return o;
}

Json to_json(const Error& error) {
  return Json{{"error", std::string(error_code_name(error.code()))},
              {"message", error.what()},
              {"subjects", error.subjects()}};
}

Json construction_to_json(const std::string& id, const MethodConstruction& m) {
  Json o;
  o["id"] = id;
  o["name"] = m.name;
  o["chosen"] = m.selection;
  o["stage_of"] = m.stage_of;
  o["notes"] = m.notes;
  return o;
}

namespace {

Severity parse_severity(const std::string& s) {
  for (auto v : {Severity::Error, Severity::Warning, Severity::Suggestion})
    if (to_string(v) == s) return v;
  throw Error(ErrorCode::SchemaError, "unknown severity '" + s + "'");
}

FindingCode parse_finding_code(const std::string& s) {
  for (auto v : {FindingCode::DiscouragedPresent, FindingCode::ForbiddenPresent, FindingCode::MissingMandatory,
                 FindingCode::RecommendedAbsent})
    if (to_string(v) == s) return v;
  throw Error(ErrorCode::SchemaError, "unknown finding code '" + s + "'");
}

DeonticCell parse_cell(const nlohmann::json& c) {
  const auto value = parse_value(c.at("value").get<std::string>());
  if (!value) throw Error(ErrorCode::SchemaError, "unknown deontic value");
  return {c.at("row").get<std::string>(), c.at("col").get<std::string>(), *value};
}

}  // namespace

AssemblyReport assembly_report_from_json(const nlohmann::json& doc) {
  try {
    AssemblyReport report;
    report.ok = doc.at("ok").get<bool>();
    for (const auto& f : doc.at("deontic")) {
      report.deontic.push_back({parse_severity(f.at("severity").get<std::string>()),
                                parse_finding_code(f.at("code").get<std::string>()), parse_cell(f.at("cell"))});
    }
    for (const auto& s : doc.at("structural"))
      report.structural.push_back({s.at("code").get<std::string>(), s.at("subjects").get<std::vector<std::string>>()});
    for (const auto& e : doc.at("precedence"))
      report.precedence.push_back(
          {e.at("before").get<std::string>(), e.at("after").get<std::string>(), e.at("source").get<std::string>()});
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("assembly report: ") + e.what());
  }
}

}  // namespace smeforge::json_io
