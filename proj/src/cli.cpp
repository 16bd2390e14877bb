#include "smeforge/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "smeforge/error.hpp"
#include "smeforge/json_io.hpp"
#include "smeforge/metrics.hpp"
#include "smeforge/project.hpp"
#include "smeforge/service.hpp"

#ifndef SMEFORGE_SEED_DIR
#define SMEFORGE_SEED_DIR "seed"
#endif

namespace smeforge::cli {

MethodConstruction parse_selection(std::string_view document, const std::string& default_name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed selection file: ") + e.what());
  }
  MethodConstruction m;
  m.name = default_name;
  try {
    if (doc.is_array()) {
      for (const auto& id : doc) m.selection.insert(id.get<std::string>());
      return m;
    }
    if (!doc.at("chosen").is_array()) throw Error(ErrorCode::SchemaError, "selection file: chosen must be an array");
    for (const auto& id : doc.at("chosen")) m.selection.insert(id.get<std::string>());
    if (doc.contains("name")) m.name = doc.at("name").get<std::string>();
    if (doc.contains("notes")) m.notes = doc.at("notes").get<std::string>();
    if (doc.contains("stage_of")) m.stage_of = doc.at("stage_of").get<std::map<std::string, std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("selection file: ") + e.what());
  }
  return m;
}

namespace {

struct Options {
  std::string repo;
  std::string corpus;
  std::string project;
  std::string selection;
  std::string out_path;
  std::string format = "table";
  bool closure = false;
  std::string fragment_id;
  std::string kind;
  std::string origin;
  std::string owner_process;
  std::string name_substring;
  int port = 0;
  std::string host = "0.0.0.0";
  std::string cors_origin = "*";
};

ReportFormat report_format(const Options& o) {
  return o.format == "machine" ? ReportFormat::Machine : ReportFormat::Table;
}

// Writes to --out when given, otherwise to standard output.
void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot write '" + o.out_path + "'", {o.out_path});
  file << text;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? sep : "") + items[i];
  return s;
}

MethodConstruction load_construction(const Options& o, const Repository& repo) {
  const auto name = std::filesystem::path(o.selection).stem().string();
  auto m = parse_selection(read_document(o.selection), name);
  if (o.closure) m.selection = required_closure(repo, m.selection);
  return m;
}

std::string render_report_table(const MethodConstruction& m, const AssemblyReport& report) {
  std::string s = "Method: " + m.name + " (" + std::to_string(m.selection.size()) + " fragments)\n";
  s += std::string("Result: ") + (report.ok ? "OK" : "INVALID") + "\n";
  s += "Deontic findings: " + std::to_string(report.deontic.size()) + "\n";
  for (const auto& f : report.deontic) {
    s += "  " + std::string(to_string(f.severity)) + "  " + std::string(to_string(f.code)) + "  " + f.cell.row +
         " -> " + f.cell.col + " (" + std::string(to_string(f.cell.value)) + ")\n";
  }
  s += "Structural issues: " + std::to_string(report.structural.size()) + "\n";
  for (const auto& i : report.structural) s += "  " + i.code + (i.subjects.empty() ? "" : "  " + join(i.subjects, ", ")) + "\n";
  s += "Precedence violations: " + std::to_string(report.precedence.size()) + "\n";
  for (const auto& e : report.precedence) s += "  " + e.before + " must precede " + e.after + "\n";
  return s;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const auto repo = load_repository_file(o.repo);
  std::size_t tasks = 0;
  for (const auto& [_, f] : repo.fragments()) tasks += f.kind == FragmentKind::Task;
  out << "OK " << repo.meta().name << " " << repo.meta().version << ": " << repo.fragments().size() << " fragments ("
      << tasks << " tasks), " << repo.cells().size() << " deontic cells, " << repo.precedence().size()
      << " precedence edges\n";
  return kOk;
}

int cmd_list(const Options& o, std::ostream& out) {
  const auto repo = load_repository_file(o.repo);
  FragmentFilter filter;
  if (!o.kind.empty()) {
    filter.kind = parse_kind(o.kind);
    if (!filter.kind) throw Error(ErrorCode::SchemaError, "unknown kind '" + o.kind + "'");
  }
  if (!o.origin.empty()) {
    filter.origin = parse_origin(o.origin);
    if (!filter.origin) throw Error(ErrorCode::SchemaError, "unknown origin '" + o.origin + "'");
  }
  if (!o.owner_process.empty()) filter.owner_process = o.owner_process;
  if (!o.name_substring.empty()) filter.name_substring = o.name_substring;
  const auto items = query(repo, filter);
  if (report_format(o) == ReportFormat::Machine) {
    auto arr = json_io::Json::array();
    for (const auto& f : items) arr.push_back(json_io::to_json(f));
    emit(o, out, arr.dump(2) + "\n");
    return kOk;
  }
  std::string s;
  for (const auto& f : items) {
    s += f.id + "  [" + std::string(to_string(f.kind)) + ", " + std::string(to_string(f.origin)) + "]  " + f.name;
    if (f.owner_process) s += "  (process: " + *f.owner_process + ")";
    s += "\n";
  }
  s += std::to_string(items.size()) + " fragment(s)\n";
  emit(o, out, s);
  return kOk;
}

int cmd_show(const Options& o, std::ostream& out) {
  const auto repo = load_repository_file(o.repo);
  const auto& f = repo.at(o.fragment_id);
  const auto rel = relations_of(repo, o.fragment_id);
  if (report_format(o) == ReportFormat::Machine) {
    json_io::Json doc;
    doc["fragment"] = json_io::to_json(f);
    doc["relations"] = json_io::to_json(rel);
    emit(o, out, doc.dump(2) + "\n");
    return kOk;
  }
  std::string s = f.name + " [" + f.id + "]\n";
  s += "  kind:   " + std::string(display_name(f.kind)) + "\n";
  s += "  origin: " + std::string(to_string(f.origin)) + "\n";
  if (f.owner_process) s += "  process: " + *f.owner_process + "\n";
  if (!f.aliases.empty()) s += "  aliases: " + join(f.aliases, "; ") + "\n";
  s += "  " + f.description + "\n";
  s += "Relations:\n";
  for (const auto& c : rel.cells) {
    const std::string& other = c.row == f.id ? c.col : c.row;
    s += "  " + std::string(to_string(c.value)) + "  " + std::string(display_name(repo.kind_of(other))) + "  " +
         repo.at(other).name + " [" + other + "]\n";
  }
  s += "Predecessors: " + (rel.predecessors.empty() ? std::string("-") : join(rel.predecessors, ", ")) + "\n";
  s += "Successors: " + (rel.successors.empty() ? std::string("-") : join(rel.successors, ", ")) + "\n";
  emit(o, out, s);
  return kOk;
}

int cmd_assemble(const Options& o, std::ostream& out) {
  const auto repo = load_repository_file(o.repo);
  const auto m = load_construction(o, repo);
  const auto report = validate_method(m, repo);
  std::vector<std::string> order;
  if (report.ok) order = order_tasks(m, repo);
  if (report_format(o) == ReportFormat::Machine) {
    json_io::Json doc;
    doc["name"] = m.name;
    doc["chosen"] = m.selection;
    doc["report"] = json_io::to_json(report);
    doc["task_order"] = order;
    emit(o, out, doc.dump(2) + "\n");
  } else {
    std::string s = render_report_table(m, report);
    if (report.ok) {
      s += "Task order:\n";
      for (std::size_t i = 0; i < order.size(); ++i) s += "  " + std::to_string(i + 1) + ". " + order[i] + "\n";
    }
    emit(o, out, s);
  }
  return report.ok ? kOk : kValidationFailure;
}

int cmd_export(const Options& o, std::ostream& out, std::ostream& err) {
  const auto repo = load_repository_file(o.repo);
  const auto m = load_construction(o, repo);
  const auto report = validate_method(m, repo);
  if (!report.ok) {
    err << "PRECONDITION: method '" << m.name << "' does not validate\n" << render_report_table(m, report);
    return kValidationFailure;
  }
  emit(o, out, render_export(export_method(m, repo)));
  return kOk;
}

int cmd_coverage(const Options& o, std::ostream& out) {
  const auto repo = load_repository_file(o.repo);
  const auto corpus = load_corpus(read_document(o.corpus));
  emit(o, out, corpus_report(corpus, FragmentSet::task_fragments(repo), report_format(o)));
  return kOk;
}

int cmd_usability(const Options& o, std::ostream& out) {
  const auto repo = load_repository_file(o.repo);
  const auto project = load_project(read_document(o.project));
  emit(o, out, project_report(project, repo, report_format(o)));
  return kOk;
}

int cmd_serve(const Options& o, std::ostream& out, std::ostream& err) {
  int port = o.port;
  if (port == 0) {
    port = 8080;
    if (const char* env = std::getenv("SMEFORGE_PORT")) {
      try {
        port = std::stoi(env);
      } catch (const std::exception&) {
        err << "usage: SMEFORGE_PORT must be a port number\n";
        return kUsage;
      }
    }
  }
  const std::string repo_path = o.repo.empty() ? std::string(SMEFORGE_SEED_DIR) + "/so-fragments.json" : o.repo;
  auto repo = load_repository_file(repo_path);
  out << "serving " << repo_path << " on http://" << o.host << ":" << port << "\n" << std::flush;
  if (!serve(std::move(repo), o.host, port, ServiceOptions{o.cors_origin})) {
    err << "IO_ERROR: cannot bind " << o.host << ":" << port << "\n";
    return kUsage;
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"smeforge: method fragment repository, assembly and metrics toolkit", "smeforge"};
  app.require_subcommand(1, 1);
  Options o;

  auto format_opt = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "machine"}));
  };
  auto repo_opt = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("--repo", o.repo, "Repository file");
    if (required) opt->required();
  };

  auto* validate = app.add_subcommand("validate", "Load and integrity-check a repository");
  repo_opt(validate);

  auto* list = app.add_subcommand("list", "Query fragments");
  repo_opt(list);
  list->add_option("--kind", o.kind, "Fragment kind");
  list->add_option("--origin", o.origin, "so-extension | opf-baseline");
  list->add_option("--owner-process", o.owner_process, "Owning process id");
  list->add_option("--q", o.name_substring, "Name or alias substring");
  format_opt(list);
  list->add_option("--out", o.out_path, "Write output to file");

  auto* show = app.add_subcommand("show", "Show a fragment and its relations");
  repo_opt(show);
  show->add_option("id", o.fragment_id, "Fragment id")->required();
  format_opt(show);

  auto* assemble = app.add_subcommand("assemble", "Validate a fragment selection as a method");
  repo_opt(assemble);
  assemble->add_option("--selection", o.selection, "Selection file")->required();
  assemble->add_flag("--closure", o.closure, "Apply mandatory closure first");
  format_opt(assemble);
  assemble->add_option("--out", o.out_path, "Write output to file");

  auto* exp = app.add_subcommand("export", "Export a valid method");
  repo_opt(exp);
  exp->add_option("--selection", o.selection, "Selection file")->required();
  exp->add_flag("--closure", o.closure, "Apply mandatory closure first");
  exp->add_option("--out", o.out_path, "Write output to file");

  auto* coverage = app.add_subcommand("coverage", "Method and domain coverage over an SDM corpus");
  repo_opt(coverage);
  coverage->add_option("--corpus", o.corpus, "Corpus file")->required();
  format_opt(coverage);
  coverage->add_option("--out", o.out_path, "Write output to file");

  auto* usab = app.add_subcommand("usability", "Usability of fragments for a project's requirements");
  repo_opt(usab);
  usab->add_option("--project", o.project, "Project file")->required();
  format_opt(usab);
  usab->add_option("--out", o.out_path, "Write output to file");

  auto* srv = app.add_subcommand("serve", "Start the HTTP API");
  repo_opt(srv, false);
  srv->add_option("--port", o.port, "Port (default 8080 or $SMEFORGE_PORT)")->check(CLI::Range(1, 65535));
  srv->add_option("--host", o.host, "Bind address");
  srv->add_option("--cors-origin", o.cors_origin, "Allowed CORS origin");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (list->parsed()) return cmd_list(o, out);
    if (show->parsed()) return cmd_show(o, out);
    if (assemble->parsed()) return cmd_assemble(o, out);
    if (exp->parsed()) return cmd_export(o, out, err);
    if (coverage->parsed()) return cmd_coverage(o, out);
    if (usab->parsed()) return cmd_usability(o, out);
    if (srv->parsed()) return cmd_serve(o, out, err);
  } catch (const Error& e) {
    err << error_code_name(e.code()) << ": " << e.what();
    if (!e.subjects().empty()) err << " [" << join(e.subjects(), ", ") << "]";
    err << "\n";
    return e.code() == ErrorCode::IoError ? kUsage : kValidationFailure;
  }
  err << "usage error: no command\n" << app.help();
  return kUsage;
}

}  // namespace smeforge::cli
