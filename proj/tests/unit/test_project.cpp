#include "doctest.h"
#include "smeforge/error.hpp"
#include "smeforge/project.hpp"
#include "support.hpp"

#include "json.hpp"

using namespace smeforge;

namespace {

ProjectSpec seed_project(const std::string& name) {
  return load_project(testsupport::read_text(testsupport::seed_path(name)));
}

}  // namespace

TEST_CASE("case study 1: every requirement is met") {
  const auto p = seed_project("case1-residential.json");
  const auto u = usability(p);
  CHECK(u.r == 7);
  CHECK(u.m == 7);
  CHECK(u.percent_exact == Rational(100, 1));
  CHECK(u.percent_display == 100);
  CHECK(u.unmet.empty());

  const auto text = project_report(p, testsupport::seed_repo(), ReportFormat::Table);
  CHECK(text.find("Usability(%) = 7 / 7 (100%)") != std::string::npos);
  const auto r1 = text.find("#R1");
  const auto r2 = text.find("#R2");
  REQUIRE(r1 != std::string::npos);
  const auto row = text.substr(r1, r2 - r1);
  for (const char* id : {"specify-service-level-agreement", "discover-necessary-web-services",
                         "monitor-operational-web-services"})
    CHECK(row.find(id) != std::string::npos);
}

TEST_CASE("case study 2: two hardware requirements are unsupported") {
  const auto p = seed_project("case2-das.json");
  const auto u = usability(p);
  CHECK(u.r == 6);
  CHECK(u.m == 4);
  CHECK(u.percent_exact == Rational(200, 3));
  CHECK(std::abs(u.percent_exact.to_double() - 200.0 / 3.0) < 1e-9);
  CHECK(u.percent_display == 66);
  CHECK(u.unmet == std::vector<std::string>{"#R5", "#R6"});
  CHECK(u.implied_selection ==
        std::set<std::string>{"create-sla-contract", "discover-necessary-web-services", "search-web-services",
                              "specify-service-level-agreement"});

  const auto text = project_report(p, testsupport::seed_repo(), ReportFormat::Table);
  CHECK(text.find("Usability(%) = 4 / 6 (66%)") != std::string::npos);
  const auto r5 = text.find("#R5");
  REQUIRE(r5 != std::string::npos);
  CHECK(text.find("Not supported", r5) != std::string::npos);
}

TEST_CASE("usability invariants") {
  auto p = seed_project("case2-das.json");
  const auto before = usability(p);
  std::reverse(p.requirements.begin(), p.requirements.end());
  const auto after = usability(p);
  CHECK(after.m == before.m);
  CHECK(after.percent_exact == before.percent_exact);
  CHECK(std::set<std::string>(after.unmet.begin(), after.unmet.end()) ==
        std::set<std::string>(before.unmet.begin(), before.unmet.end()));

  for (auto& r : p.requirements) {
    r.tasks.clear();
    r.techniques = {"search-web-services"};
  }
  const auto none = usability(p);
  CHECK(none.m == 0);
  CHECK(none.percent_display == 0);
  CHECK(none.unmet.size() == 6);
  const auto text = project_report(p, testsupport::seed_repo(), ReportFormat::Table);
  CHECK(text.find("Usability(%) = 0 / 6 (0%)") != std::string::npos);
}

TEST_CASE("usability errors") {
  try {
    usability(ProjectSpec{"empty", {}});
    FAIL("expected NoRequirements");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoRequirements);
  }
  ProjectSpec bad{"bad", {{"#R1", "t", "", {"ghost-task"}, {}}}};
  try {
    project_report(bad, testsupport::seed_repo(), ReportFormat::Table);
    FAIL("expected UnknownFragment");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownFragment);
    CHECK(e.subjects() == std::vector<std::string>{"#R1", "ghost-task"});
  }
  try {
    load_project(R"({"name":"d","requirements":[{"id":"#R1","title":"","explanation":"","tasks":[],"techniques":[]},
                                                {"id":"#R1","title":"","explanation":"","tasks":[],"techniques":[]}]})");
    FAIL("expected IntegrityError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IntegrityError);
  }
}

TEST_CASE("project files round-trip and machine output parses") {
  for (const char* name : {"case1-residential.json", "case2-das.json"}) {
    const auto p = seed_project(name);
    CHECK(load_project(save_project(p)) == p);
    const auto j = nlohmann::json::parse(project_report(p, testsupport::seed_repo(), ReportFormat::Machine));
    CHECK(j.is_object());
  }
  const auto j = nlohmann::json::parse(
      project_report(seed_project("case2-das.json"), testsupport::seed_repo(), ReportFormat::Machine));
  CHECK(j.dump().find("200/3") != std::string::npos);
}
