#include "doctest.h"
#include "smeforge/error.hpp"
#include "smeforge/repository.hpp"
#include "support.hpp"

#include "json.hpp"

using namespace smeforge;
using testsupport::seed_repo;

namespace {

std::string frag(const std::string& id, const std::string& kind, const std::string& extra = "") {
  return R"({"id":")" + id + R"(","name":")" + id + R"(","kind":")" + kind +
         R"(","description":"","origin":"so-extension")" + extra + "}";
}

std::string doc(const std::string& fragments, const std::string& cells = "", const std::string& edges = "") {
  return R"({"meta":{"name":"t","version":"1"},"fragments":[)" + fragments + R"(],"deontic_cells":[)" + cells +
         R"(],"precedence":[)" + edges + "]}";
}

Error load_error(const std::string& text) {
  try {
    load_repository(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected load_repository to throw");
  return Error(ErrorCode::IoError, "unreachable");
}

bool names(const Error& e, const std::string& subject) {
  const auto& s = e.subjects();
  return std::find(s.begin(), s.end(), subject) != s.end();
}

}  // namespace

TEST_CASE("seed repository cardinalities") {
  const auto& repo = seed_repo();
  FragmentFilter f;
  f.kind = FragmentKind::Task;
  f.origin = Origin::SoExtension;
  CHECK(query(repo, f).size() == 16);

  f = {};
  f.kind = FragmentKind::Process;
  CHECK(query(repo, f).size() >= 10);
  f.kind = FragmentKind::Producer;
  CHECK(query(repo, f).size() == 12);
  f.kind = FragmentKind::Language;
  CHECK(query(repo, f).empty());
}

TEST_CASE("every extension task matches its published listing") {
  const auto& repo = seed_repo();
  for (const auto& [task, want] : testsupport::task_listings()) {
    CAPTURE(task);
    const auto& fr = repo.at(task);
    CHECK(fr.kind == FragmentKind::Task);
    CHECK(fr.owner_process == want.owner);
    const auto got = testsupport::linked(repo, task);
    CHECK(got.owner == want.owner);
    CHECK(got.producers == want.producers);
    CHECK(got.techniques == want.techniques);
    CHECK(got.work_products == want.work_products);
  }
}

TEST_CASE("owner_process only on extension tasks") {
  for (const auto& [id, f] : seed_repo().fragments()) {
    CAPTURE(id);
    CHECK(f.owner_process.has_value() == (testsupport::task_listings().count(id) > 0));
  }
}

TEST_CASE("query examples") {
  const auto& repo = seed_repo();
  FragmentFilter f;
  f.owner_process = "design-services";
  std::vector<std::string> ids;
  for (const auto& fr : query(repo, f)) ids.push_back(fr.id);
  CHECK(ids == std::vector<std::string>{"classify-services", "evaluate-quality-of-designed-services",
                                        "identify-services", "specify-details-of-services"});

  f = {};
  f.name_substring = "zzz";
  CHECK(query(repo, f).empty());

  f.name_substring = "WRAPPER";
  ids.clear();
  for (const auto& fr : query(repo, f)) ids.push_back(fr.id);
  CHECK(ids == std::vector<std::string>{"implement-necessary-wrappers", "implement-wrapper"});

  // Alias hit: "Develop Services" is the section heading for Implementation.
  f.name_substring = "develop services";
  ids.clear();
  for (const auto& fr : query(repo, f)) ids.push_back(fr.id);
  CHECK(ids == std::vector<std::string>{"implementation"});

  f = {};
  f.kind = FragmentKind::Task;
  CHECK(query(repo, f) == query(repo, f));
}

TEST_CASE("relations_of the SLA task") {
  const auto rel = relations_of(seed_repo(), "specify-service-level-agreement");
  std::set<std::tuple<std::string, std::string, std::string>> got;
  for (const auto& c : rel.cells) got.emplace(c.row, c.col, std::string(to_string(c.value)));
  const std::string t = "specify-service-level-agreement";
  const std::set<std::tuple<std::string, std::string, std::string>> want = {
      {"service-consumer", t, "R"},
      {"service-provider", t, "R"},
      {"requirement-engineer", t, "R"},
      {t, "create-sla-contract", "R"},
      {t, "document-of-service-level-agreement-contract", "R"},
      {"requirements-engineering", t, "M"},
  };
  CHECK(got == want);
  CHECK(rel.predecessors.empty());
  CHECK(rel.successors == std::vector<std::string>{"monitor-operational-web-services"});
}

TEST_CASE("relations_of edges and empties") {
  const auto& repo = seed_repo();
  const auto rel = relations_of(repo, "identify-services");
  CHECK(std::find(rel.successors.begin(), rel.successors.end(), "discover-necessary-web-services") !=
        rel.successors.end());
  const auto none = relations_of(repo, "initiation-phase");
  CHECK(none == Relations{});
  CHECK_THROWS_AS(relations_of(repo, "no-such-thing"), Error);
}

TEST_CASE("seed precedence graph") {
  const auto& prec = seed_repo().precedence();
  CHECK(prec.size() == 7);
  bool found = false;
  for (const auto& e : prec) {
    found = found || (e.before == "identify-services" && e.after == "discover-necessary-web-services");
    CHECK_FALSE(e.source.empty());
  }
  CHECK(found);
}

TEST_CASE("save and reload") {
  const auto& repo = seed_repo();
  const auto text = save_repository(repo);
  CHECK(load_repository(text) == repo);
  CHECK(save_repository(load_repository(text)) == text);
  CHECK(save_repository(repo) == text);
  // The shipped seed file is already in canonical form.
  CHECK(text == testsupport::read_text(testsupport::seed_path("so-fragments.json")));
  CHECK(repo.meta().stage_order.size() == 6);
  CHECK(repo.stage_rank("business-optimization-phase") == 0u);
  CHECK(repo.stage_rank("retirement-phase") == 5u);
}

TEST_CASE("empty repository") {
  const auto repo = load_repository(doc(""));
  CHECK(repo.fragments().empty());
  CHECK(repo.cells().empty());
  const auto text = save_repository(repo);
  CHECK(load_repository(text) == repo);
  const auto j = nlohmann::json::parse(text);
  CHECK(j.at("fragments").empty());
  CHECK(j.at("deontic_cells").empty());
  CHECK(j.at("precedence").empty());
}

TEST_CASE("load errors") {
  CHECK(load_error("{not json").code() == ErrorCode::ParseError);
  CHECK(load_error(doc(frag("a", "widget"))).code() == ErrorCode::SchemaError);
  CHECK(load_error(R"({"meta":{"name":"t","version":"1"},"fragments":[]})").code() == ErrorCode::SchemaError);
  CHECK(load_error(doc(frag("a", "task", R"(,"colour":"red")"))).code() == ErrorCode::SchemaError);
  CHECK(load_error(doc(frag("a", "task") + "," + frag("b", "technique"), R"({"row":"a","col":"b","value":"Q"})"))
            .code() == ErrorCode::SchemaError);

  SUBCASE("illegal pair names the cell") {
    const auto e = load_error(doc(frag("a", "task") + "," + frag("b", "technique"), R"({"row":"b","col":"a","value":"R"})"));
    CHECK(e.code() == ErrorCode::IntegrityError);
    CHECK(names(e, "b->a"));
    CHECK(classify_pair(FragmentKind::Technique, FragmentKind::Task) == PairLegality::Illegal);
  }
  SUBCASE("dangling cell") {
    const auto e = load_error(doc(frag("a", "task"), R"({"row":"a","col":"ghost","value":"R"})"));
    CHECK(e.code() == ErrorCode::IntegrityError);
    CHECK(names(e, "ghost"));
  }
  SUBCASE("duplicate id") {
    const auto e = load_error(doc(frag("a", "task") + "," + frag("a", "task")));
    CHECK(e.code() == ErrorCode::IntegrityError);
    CHECK(names(e, "a"));
  }
  SUBCASE("duplicate cell") {
    const auto e = load_error(doc(frag("a", "task") + "," + frag("b", "technique"),
                                  R"({"row":"a","col":"b","value":"R"},{"row":"a","col":"b","value":"O"})"));
    CHECK(e.code() == ErrorCode::IntegrityError);
  }
  SUBCASE("precedence cycle names both ids") {
    const auto e = load_error(doc(frag("a", "task") + "," + frag("b", "task"), "",
                                  R"({"before":"a","after":"b","source":""},{"before":"b","after":"a","source":""})"));
    CHECK(e.code() == ErrorCode::IntegrityError);
    CHECK(names(e, "a"));
    CHECK(names(e, "b"));
  }
  SUBCASE("precedence on non-task") {
    const auto e =
        load_error(doc(frag("a", "task") + "," + frag("p", "process"), "", R"({"before":"p","after":"a","source":""})"));
    CHECK(e.code() == ErrorCode::IntegrityError);
  }
  SUBCASE("owner must be a process") {
    const auto e = load_error(doc(frag("a", "task", R"(,"owner_process":"b")") + "," + frag("b", "technique")));
    CHECK(e.code() == ErrorCode::IntegrityError);
  }
  SUBCASE("alias collides with another name") {
    const auto e = load_error(doc(frag("a", "task", R"(,"aliases":["B"])") + "," + frag("b", "task")));
    CHECK(e.code() == ErrorCode::IntegrityError);
  }
  SUBCASE("bad slug") {
    const auto e = load_error(doc(frag("Bad Id", "task")));
    CHECK(e.code() == ErrorCode::IntegrityError);
  }
}

TEST_CASE("read_document resolves the .json suffix") {
  CHECK(read_document(testsupport::seed_path("table19")) == read_document(testsupport::seed_path("table19.json")));
  try {
    read_document("/nonexistent/file");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}
