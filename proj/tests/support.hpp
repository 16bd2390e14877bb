#pragma once

// Shared fixtures and independent oracles for the unit and acceptance
// suites. Nothing here calls into the engine code it is used to check.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "smeforge/assembly.hpp"
#include "smeforge/deontic.hpp"
#include "smeforge/repository.hpp"

namespace testsupport {

inline std::string seed_path(const std::string& name) { return std::string(SMEFORGE_SEED_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const smeforge::Repository& seed_repo() {
  static const smeforge::Repository repo = smeforge::load_repository_file(seed_path("so-fragments.json"));
  return repo;
}

// Runs the built CLI binary and captures stdout. Returns the exit status.
inline int run_binary(const std::string& args, std::string& out) {
  const std::string cmd = std::string(SMEFORGE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  out.clear();
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// The six legal pairs spelled out by hand, with which side pulls the other
// in under an M value: 'r' row governs, 'c' column governs, '-' advisory only.
inline const std::map<std::pair<std::string, std::string>, char>& pair_table() {
  static const std::map<std::pair<std::string, std::string>, char> table = {
      {{"process", "task"}, 'r'},          {{"task", "technique"}, 'r'},
      {{"producer", "task"}, 'c'},         {{"task", "work_product"}, 'r'},
      {{"producer", "work_product"}, '-'}, {{"work_product", "language"}, 'r'},
  };
  return table;
}

inline char governor(const smeforge::Repository& repo, const smeforge::DeonticCell& c) {
  const auto key = std::make_pair(std::string(smeforge::to_string(repo.kind_of(c.row))),
                                  std::string(smeforge::to_string(repo.kind_of(c.col))));
  return pair_table().at(key);
}

// A set is closed when every M cell whose governing side is chosen has its
// other side chosen too.
inline bool is_closed(const smeforge::Repository& repo, const std::set<std::string>& s) {
  for (const auto& c : repo.cells()) {
    if (c.value != smeforge::DeonticValue::M) continue;
    const char g = governor(repo, c);
    if (g == 'r' && s.count(c.row) && !s.count(c.col)) return false;
    if (g == 'c' && s.count(c.col) && !s.count(c.row)) return false;
  }
  return true;
}

// Least closed superset, found by intersecting every closed superset of
// `start` over the full power set. Only usable on toy repositories.
inline std::set<std::string> brute_force_closure(const smeforge::Repository& repo,
                                                 const std::set<std::string>& start) {
  std::vector<std::string> ids;
  for (const auto& [id, f] : repo.fragments()) ids.push_back(id);
  std::set<std::string> best(ids.begin(), ids.end());
  const unsigned long total = 1ul << ids.size();
  for (unsigned long mask = 0; mask < total; ++mask) {
    std::set<std::string> s;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (mask & (1ul << i)) s.insert(ids[i]);
    if (!std::includes(s.begin(), s.end(), start.begin(), start.end())) continue;
    if (!is_closed(repo, s)) continue;
    std::set<std::string> meet;
    std::set_intersection(best.begin(), best.end(), s.begin(), s.end(), std::inserter(meet, meet.end()));
    best = std::move(meet);
  }
  return best;
}

// Random repository of at most `max_fragments` fragments with cells on legal
// pairs only. Ids encode the kind so failures are easy to read.
inline smeforge::Repository random_toy(std::mt19937& rng, int max_fragments = 9) {
  using namespace smeforge;
  static const std::vector<std::pair<FragmentKind, std::string>> kinds = {
      {FragmentKind::Process, "p"},  {FragmentKind::Task, "t"},     {FragmentKind::Technique, "q"},
      {FragmentKind::WorkProduct, "w"}, {FragmentKind::Producer, "r"}, {FragmentKind::Language, "l"},
  };
  std::uniform_int_distribution<int> count(2, max_fragments);
  std::uniform_int_distribution<int> pick_kind(0, static_cast<int>(kinds.size()) - 1);
  std::uniform_int_distribution<int> pick_value(0, 4);
  std::bernoulli_distribution place(0.45);

  std::vector<MethodFragment> fragments;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    const auto& [kind, prefix] = kinds[pick_kind(rng)];
    MethodFragment f;
    f.id = prefix + std::to_string(i);
    f.name = "Toy " + f.id;
    f.kind = kind;
    fragments.push_back(f);
  }
  std::vector<DeonticCell> cells;
  for (const auto& a : fragments)
    for (const auto& b : fragments)
      if (a.id != b.id && classify_pair(a.kind, b.kind) == PairLegality::Legal && place(rng))
        cells.push_back({a.id, b.id, kAllValues[pick_value(rng)]});
  return Repository::build({"toy", "0", {}}, fragments, cells, {});
}

inline std::set<std::string> random_subset(std::mt19937& rng, const smeforge::Repository& repo, double p) {
  std::bernoulli_distribution take(p);
  std::set<std::string> s;
  for (const auto& [id, f] : repo.fragments())
    if (take(rng)) s.insert(id);
  return s;
}

// Edge-scan oracle: `order` is a permutation of the chosen Tasks and every
// precedence edge with both ends chosen points forward.
inline bool order_respects_edges(const smeforge::Repository& repo, const std::set<std::string>& chosen,
                                 const std::vector<std::string>& order) {
  std::set<std::string> tasks;
  for (const auto& id : chosen)
    if (repo.kind_of(id) == smeforge::FragmentKind::Task) tasks.insert(id);
  std::vector<std::string> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (std::set<std::string>(sorted.begin(), sorted.end()) != tasks) return false;
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  for (const auto& e : repo.precedence())
    if (pos.count(e.before) && pos.count(e.after) && pos[e.before] >= pos[e.after]) return false;
  return true;
}

// Violations recomputed from the raw edge list.
inline std::vector<std::pair<std::string, std::string>> expected_violations(const smeforge::Repository& repo,
                                                                            const std::set<std::string>& chosen) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : repo.precedence())
    if (chosen.count(e.after) && !chosen.count(e.before)) out.emplace_back(e.before, e.after);
  std::sort(out.begin(), out.end());
  return out;
}

// The 16 so-extension tasks plus their owner processes.
inline std::set<std::string> extension_tasks_with_owners(const smeforge::Repository& repo) {
  std::set<std::string> s;
  for (const auto& [id, f] : repo.fragments()) {
    if (f.kind != smeforge::FragmentKind::Task || f.origin != smeforge::Origin::SoExtension) continue;
    s.insert(id);
    if (f.owner_process) s.insert(*f.owner_process);
  }
  return s;
}

// Per-task listings transcribed by hand from the published task tables.
struct Listing {
  std::string owner;
  std::set<std::string> producers;
  std::set<std::string> techniques;
  std::set<std::string> work_products;
};

inline const std::map<std::string, Listing>& task_listings() {
  static const std::string sc = "service-consumer", sp = "service-provider", re = "requirement-engineer",
                           sd = "service-designer", dev = "service-developer", tst = "service-tester";
  static const std::map<std::string, Listing> listings = {
      {"specify-service-level-agreement",
       {"requirements-engineering", {sc, sp, re}, {"create-sla-contract"}, {"document-of-service-level-agreement-contract"}}},
      {"evaluate-environment-readiness",
       {"environments-engineering",
        {re, "database-administrator", "network-administrator"},
        {"create-a-readiness-report"},
        {"report-of-readiness-assessment"}}},
      {"plan-transition",
       {"management",
        {sc, sp, "project-manager"},
        {"make-transition-plan"},
        {"transition-plan", "list-of-transition-issues", "cost-and-effort-of-selected-strategies"}}},
      {"develop-governance-model-for-current-iteration",
       {"develop-governance",
        {sc, sp, re},
        {"create-governance-model"},
        {"documented-textural-description-governance-model", "policies", "executive-mechanisms",
         "quality-indicators-and-measurement-metrics"}}},
      {"identify-services",
       {"design-services",
        {sd},
        {"top-down", "bottom-up", "meet-in-the-middle"},
        {"service-models", "services-interfaces-signatures"}}},
      {"specify-details-of-services",
       {"design-services",
        {sd},
        {"add-specific-details-to-service"},
        {"services-interfaces-signatures", "software-components-specification", "service-dependency"}}},
      {"classify-services", {"design-services", {sd}, {"classify-service"}, {"classified-service-model"}}},
      {"evaluate-quality-of-designed-services",
       {"design-services",
        {sd},
        {"evaluate-service-granularity", "evaluate-service-coupling", "evaluate-service-cohesion"},
        {"refined-service-model"}}},
      {"implement-and-test-necessary-services",
       {"implementation",
        {dev, tst},
        {"implement-services", "perform-wsdl-testing"},
        {"executable-web-services", "services-wsdls-and-ws-policy"}}},
      {"implement-necessary-wrappers",
       {"implementation", {dev, tst}, {"implement-wrapper"}, {"executable-web-services", "services-wsdls"}}},
      {"develop-necessary-composite-web-services",
       {"implementation",
        {sc, "business-process-engineer"},
        {"compose-web-services"},
        {"composite-services-as-business-process"}}},
      {"discover-necessary-web-services",
       {"reuse-engineering", {sc}, {"search-web-services"}, {"executable-web-services"}}},
      {"publish-web-services",
       {"deployment",
        {"service-installer"},
        {"import-web-services-into-the-common-web-service-repository"},
        {"deployed-and-published-services"}}},
      {"perform-test-in-large",
       {"deployment",
        {"orchestrator-choreographer-tester"},
        {"perform-orchestration-choreography-testing"},
        {"test-cases", "results-of-running-test-cases"}}},
      {"monitor-operational-web-services",
       {"maintenance",
        {sc, sp},
        {"monitor-qos-of-web-services"},
        {"statically-reports-of-qos", "service-metering", "billing-report-and-defect-report"}}},
      {"compose-web-services-dynamically",
       {"maintenance", {sc}, {"reconfigure-composite-web-services"}, {"new-discovered-web-services"}}},
  };
  return listings;
}

// Producers, techniques and work products linked to `task` by any cell.
inline Listing linked(const smeforge::Repository& repo, const std::string& task) {
  using smeforge::FragmentKind;
  Listing out;
  for (const auto& c : repo.cells()) {
    if (c.col == task && repo.kind_of(c.row) == FragmentKind::Producer) out.producers.insert(c.row);
    if (c.col == task && repo.kind_of(c.row) == FragmentKind::Process) out.owner = c.row;
    if (c.row == task && repo.kind_of(c.col) == FragmentKind::Technique) out.techniques.insert(c.col);
    if (c.row == task && repo.kind_of(c.col) == FragmentKind::WorkProduct) out.work_products.insert(c.col);
  }
  return out;
}

}  // namespace testsupport
