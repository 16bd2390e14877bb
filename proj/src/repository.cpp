#include "smeforge/repository.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "smeforge/error.hpp"
#include "smeforge/graph.hpp"

namespace smeforge {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

struct Problems {
  std::vector<std::string> messages;
  std::set<std::string> subjects;

  void add(std::string message, std::initializer_list<std::string> ids) {
    messages.push_back(std::move(message));
    subjects.insert(ids.begin(), ids.end());
  }

  void raise_if_any() const {
    if (messages.empty()) return;
    std::string msg = messages.front();
    for (std::size_t i = 1; i < messages.size(); ++i) msg += "; " + messages[i];
    throw Error(ErrorCode::IntegrityError, msg, {subjects.begin(), subjects.end()});
  }
};

}  // namespace

Repository Repository::build(RepositoryMeta meta, std::vector<MethodFragment> fragments,
                             std::vector<DeonticCell> cells, std::vector<PrecedenceConstraint> precedence) {
  Repository repo;
  Problems problems;

  std::vector<std::string> declared_stages;
  for (auto& f : fragments) {
    for (const auto& issue : validate_fragment(f)) problems.add(issue.code + ": " + issue.detail, {f.id});
    if (f.kind == FragmentKind::Stage) declared_stages.push_back(f.id);
    const std::string id = f.id;
    if (!repo.fragments_.emplace(id, std::move(f)).second) problems.add("duplicate fragment id " + id, {id});
  }

  // Names and aliases share one case-insensitive namespace per fragment;
  // an alias may not equal any other fragment's name or alias.
  std::map<std::string, std::string> label_owner;
  for (const auto& [id, f] : repo.fragments_) {
    std::set<std::string> own{lower(f.name)};
    for (const auto& a : f.aliases) own.insert(lower(a));
    for (const auto& label : own) {
      auto [it, inserted] = label_owner.emplace(label, id);
      if (inserted || it->second == id) continue;
      const bool alias_involved =
          label != lower(f.name) || label != lower(repo.fragments_.at(it->second).name);
      if (alias_involved) problems.add("alias '" + label + "' collides between " + it->second + " and " + id,
                                       {it->second, id});
    }
  }

  for (const auto& [id, f] : repo.fragments_) {
    if (!f.owner_process) continue;
    if (f.kind != FragmentKind::Task) {
      problems.add("owner_process set on non-task " + id, {id});
      continue;
    }
    const auto* owner = repo.find(*f.owner_process);
    if (!owner)
      problems.add("dangling owner_process " + *f.owner_process + " on " + id, {id, *f.owner_process});
    else if (owner->kind != FragmentKind::Process)
      problems.add("owner_process " + *f.owner_process + " of " + id + " is not a process", {id, *f.owner_process});
  }

  std::sort(cells.begin(), cells.end(),
            [](const auto& a, const auto& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    const std::string label = c.row + "->" + c.col;
    if (i > 0 && cells[i - 1].row == c.row && cells[i - 1].col == c.col) {
      problems.add("duplicate cell " + label, {c.row, c.col});
      continue;
    }
    const auto* row = repo.find(c.row);
    const auto* col = repo.find(c.col);
    if (!row || !col) {
      problems.add("dangling cell " + label, {c.row, c.col});
      continue;
    }
    if (classify_pair(row->kind, col->kind) == PairLegality::Illegal)
      problems.add("illegal cell " + label + " (" + std::string(to_string(row->kind)) + "/" +
                       std::string(to_string(col->kind)) + ")",
                   {label});
  }

  std::sort(precedence.begin(), precedence.end(),
            [](const auto& a, const auto& b) { return std::tie(a.before, a.after) < std::tie(b.before, b.after); });
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < precedence.size(); ++i) {
    const auto& e = precedence[i];
    const std::string label = e.before + "->" + e.after;
    if (i > 0 && precedence[i - 1].before == e.before && precedence[i - 1].after == e.after) {
      problems.add("duplicate precedence edge " + label, {e.before, e.after});
      continue;
    }
    if (e.before == e.after) {
      problems.add("self precedence edge " + label, {e.before});
      continue;
    }
    const auto* before = repo.find(e.before);
    const auto* after = repo.find(e.after);
    if (!before || !after) {
      problems.add("dangling precedence edge " + label, {e.before, e.after});
      continue;
    }
    if (before->kind != FragmentKind::Task || after->kind != FragmentKind::Task) {
      problems.add("precedence edge " + label + " joins non-task fragments", {e.before, e.after});
      continue;
    }
    edges.emplace_back(e.before, e.after);
  }
  std::vector<std::string> task_ids;
  for (const auto& [id, f] : repo.fragments_)
    if (f.kind == FragmentKind::Task) task_ids.push_back(id);
  if (auto cycle = find_cycle(task_ids, edges); !cycle.empty()) {
    std::string msg = "precedence cycle:";
    for (const auto& id : cycle) msg += " " + id;
    problems.messages.push_back(msg);
    problems.subjects.insert(cycle.begin(), cycle.end());
  }

  std::vector<std::string> stage_order;
  std::set<std::string> seen;
  for (const auto& id : meta.stage_order) {
    const auto* f = repo.find(id);
    if (!f || f->kind != FragmentKind::Stage) {
      problems.add("stage_order entry " + id + " is not a stage", {id});
    } else if (!seen.insert(id).second) {
      problems.add("stage_order lists " + id + " twice", {id});
    } else {
      stage_order.push_back(id);
    }
  }
  for (const auto& id : declared_stages)
    if (repo.find(id) && seen.insert(id).second) stage_order.push_back(id);
  meta.stage_order = std::move(stage_order);

  problems.raise_if_any();

  repo.meta_ = std::move(meta);
  repo.cells_ = std::move(cells);
  repo.precedence_ = std::move(precedence);
  for (std::size_t i = 0; i < repo.cells_.size(); ++i) {
    repo.cells_by_fragment_[repo.cells_[i].row].push_back(i);
    repo.cells_by_fragment_[repo.cells_[i].col].push_back(i);
  }
  return repo;
}

bool Repository::contains(std::string_view id) const { return fragments_.find(id) != fragments_.end(); }

const MethodFragment* Repository::find(std::string_view id) const {
  auto it = fragments_.find(id);
  return it == fragments_.end() ? nullptr : &it->second;
}

const MethodFragment& Repository::at(std::string_view id) const {
  if (const auto* f = find(id)) return *f;
  throw Error(ErrorCode::UnknownId, "unknown fragment id '" + std::string(id) + "'", {std::string(id)});
}

std::optional<std::size_t> Repository::stage_rank(std::string_view stage_id) const {
  const auto& order = meta_.stage_order;
  auto it = std::find(order.begin(), order.end(), stage_id);
  if (it == order.end()) return std::nullopt;
  return static_cast<std::size_t>(it - order.begin());
}

std::vector<DeonticCell> Repository::cells_of(std::string_view id) const {
  std::vector<DeonticCell> out;
  auto it = cells_by_fragment_.find(id);
  if (it == cells_by_fragment_.end()) return out;
  for (auto i : it->second) out.push_back(cells_[i]);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
  return out;
}

// --- persistence -----------------------------------------------------------

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SchemaError, where + ": " + what, {where});
}

void expect_keys(const json& obj, const std::string& where, std::initializer_list<std::string_view> required,
                 std::initializer_list<std::string_view> optional = {}) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  for (auto key : required)
    if (!obj.contains(std::string(key))) schema_error(where, "missing field '" + std::string(key) + "'");
  for (const auto& [key, _] : obj.items()) {
    const bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                       std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) schema_error(where, "unknown field '" + key + "'");
  }
}

std::string string_field(const json& obj, const std::string& key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_string()) schema_error(where, "field '" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> string_list(const json& v, const std::string& where) {
  if (!v.is_array()) schema_error(where, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) schema_error(where, "expected an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

const json& array_field(const json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_array()) schema_error(key, "expected an array");
  return v;
}

}  // namespace

Repository load_repository(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed repository document: ") + e.what());
  }
  expect_keys(doc, "repository", {"meta", "fragments", "deontic_cells", "precedence"});

  RepositoryMeta meta;
  const auto& m = doc.at("meta");
  expect_keys(m, "meta", {"name", "version"}, {"stage_order"});
  meta.name = string_field(m, "name", "meta");
  meta.version = string_field(m, "version", "meta");
  if (m.contains("stage_order")) meta.stage_order = string_list(m.at("stage_order"), "meta.stage_order");

  std::vector<MethodFragment> fragments;
  std::size_t index = 0;
  for (const auto& f : array_field(doc, "fragments")) {
    const std::string where = "fragments[" + std::to_string(index++) + "]";
    expect_keys(f, where, {"id", "name", "kind", "description", "origin"}, {"owner_process", "aliases"});
    MethodFragment frag;
    frag.id = string_field(f, "id", where);
    frag.name = string_field(f, "name", where);
    frag.description = string_field(f, "description", where);
    const auto kind_text = string_field(f, "kind", where);
    auto kind = parse_kind(kind_text);
    if (!kind) schema_error(where, "unknown kind '" + kind_text + "'");
    frag.kind = *kind;
    const auto origin_text = string_field(f, "origin", where);
    auto origin = parse_origin(origin_text);
    if (!origin) schema_error(where, "unknown origin '" + origin_text + "'");
    frag.origin = *origin;
    if (f.contains("owner_process")) frag.owner_process = string_field(f, "owner_process", where);
    if (f.contains("aliases")) frag.aliases = string_list(f.at("aliases"), where + ".aliases");
    fragments.push_back(std::move(frag));
  }

  std::vector<DeonticCell> cells;
  index = 0;
  for (const auto& c : array_field(doc, "deontic_cells")) {
    const std::string where = "deontic_cells[" + std::to_string(index++) + "]";
    expect_keys(c, where, {"row", "col", "value"});
    DeonticCell cell;
    cell.row = string_field(c, "row", where);
    cell.col = string_field(c, "col", where);
    const auto value_text = string_field(c, "value", where);
    auto value = parse_value(value_text);
    if (!value) schema_error(where, "unknown deontic value '" + value_text + "'");
    cell.value = *value;
    cells.push_back(std::move(cell));
  }

  std::vector<PrecedenceConstraint> precedence;
  index = 0;
  for (const auto& e : array_field(doc, "precedence")) {
    const std::string where = "precedence[" + std::to_string(index++) + "]";
    expect_keys(e, where, {"before", "after", "source"});
    precedence.push_back({string_field(e, "before", where), string_field(e, "after", where),
                          string_field(e, "source", where)});
  }

  return Repository::build(std::move(meta), std::move(fragments), std::move(cells), std::move(precedence));
}

std::string save_repository(const Repository& repository) {
  ordered_json doc;
  ordered_json meta;
  meta["name"] = repository.meta().name;
  meta["version"] = repository.meta().version;
  if (!repository.meta().stage_order.empty()) meta["stage_order"] = repository.meta().stage_order;
  doc["meta"] = std::move(meta);

  ordered_json fragments = ordered_json::array();
  for (const auto& [id, f] : repository.fragments()) {
    ordered_json o;
    o["id"] = f.id;
    o["name"] = f.name;
    o["kind"] = std::string(to_string(f.kind));
    o["description"] = f.description;
    o["origin"] = std::string(to_string(f.origin));
    if (f.owner_process) o["owner_process"] = *f.owner_process;
    if (!f.aliases.empty()) o["aliases"] = f.aliases;
    fragments.push_back(std::move(o));
  }
  doc["fragments"] = std::move(fragments);

  ordered_json cells = ordered_json::array();
  for (const auto& c : repository.cells())
    cells.push_back(ordered_json{{"row", c.row}, {"col", c.col}, {"value", std::string(to_string(c.value))}});
  doc["deontic_cells"] = std::move(cells);

  ordered_json edges = ordered_json::array();
  for (const auto& e : repository.precedence())
    edges.push_back(ordered_json{{"before", e.before}, {"after", e.after}, {"source", e.source}});
  doc["precedence"] = std::move(edges);

  return doc.dump(2) + "\n";
}

std::string read_document(const std::string& path) {
  for (const auto& candidate : {path, path + ".json"}) {
    std::ifstream in(candidate, std::ios::binary);
    if (!in) continue;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  throw Error(ErrorCode::IoError, "cannot read '" + path + "'", {path});
}

Repository load_repository_file(const std::string& path) { return load_repository(read_document(path)); }

// --- queries ---------------------------------------------------------------

std::vector<MethodFragment> query(const Repository& repository, const FragmentFilter& filter) {
  std::vector<MethodFragment> out;
  const std::string needle = filter.name_substring ? lower(*filter.name_substring) : std::string();
  for (const auto& [id, f] : repository.fragments()) {
    if (filter.kind && f.kind != *filter.kind) continue;
    if (filter.origin && f.origin != *filter.origin) continue;
    if (filter.owner_process && f.owner_process != filter.owner_process) continue;
    if (filter.name_substring) {
      bool hit = lower(f.name).find(needle) != std::string::npos;
      for (const auto& a : f.aliases) hit = hit || lower(a).find(needle) != std::string::npos;
      if (!hit) continue;
    }
    out.push_back(f);
  }
  return out;
}

Relations relations_of(const Repository& repository, std::string_view id) {
  repository.at(id);
  Relations rel;
  rel.cells = repository.cells_of(id);
  for (const auto& e : repository.precedence()) {
    if (e.after == id) rel.predecessors.push_back(e.before);
    if (e.before == id) rel.successors.push_back(e.after);
  }
  std::sort(rel.predecessors.begin(), rel.predecessors.end());
  std::sort(rel.successors.begin(), rel.successors.end());
  return rel;
}

}  // namespace smeforge
