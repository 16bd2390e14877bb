#include "smeforge/service.hpp"

#include "httplib.h"
#include "smeforge/error.hpp"
#include "smeforge/json_io.hpp"
#include "smeforge/metrics.hpp"
#include "smeforge/project.hpp"

namespace smeforge {

// --- SessionStore ------------------------------------------------------------

std::string SessionStore::create(MethodConstruction initial) {
  const std::string id = "m" + std::to_string(next_id_.fetch_add(1));
  auto s = std::make_shared<Slot>();
  s->value = std::move(initial);
  std::unique_lock lock(index_mutex_);
  slots_.emplace(id, std::move(s));
  return id;
}

std::shared_ptr<SessionStore::Slot> SessionStore::slot(const std::string& id) const {
  std::shared_lock lock(index_mutex_);
  auto it = slots_.find(id);
  return it == slots_.end() ? nullptr : it->second;
}

std::optional<MethodConstruction> SessionStore::snapshot(const std::string& id) const {
  auto s = slot(id);
  if (!s) return std::nullopt;
  std::lock_guard lock(s->mutex);
  return s->value;
}

std::optional<MethodConstruction> SessionStore::update(
    const std::string& id, const std::function<MethodConstruction(const MethodConstruction&)>& edit) {
  auto s = slot(id);
  if (!s) return std::nullopt;
  std::lock_guard lock(s->mutex);
  s->value = edit(s->value);
  return s->value;
}

// --- HTTP --------------------------------------------------------------------

namespace {

using json_io::Json;

constexpr const char* kJson = "application/json; charset=utf-8";

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::SchemaError: return 400;
    case ErrorCode::UnknownId:
    case ErrorCode::UnknownFragment: return 404;
    default: return 409;
  }
}

void send(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", kJson);
}

void send_error(httplib::Response& res, const Error& e) { send(res, status_for(e.code()), json_io::to_json(e)); }

void send_not_found(httplib::Response& res, const std::string& what) {
  send_error(res, Error(ErrorCode::UnknownId, "unknown " + what, {what}));
}

nlohmann::json parse_body(const httplib::Request& req) {
  try {
    return nlohmann::json::parse(req.body);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed request body: ") + e.what());
  }
}

// Wraps a handler so engine errors become JSON error responses.
template <class F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send_error(res, e);
    } catch (const nlohmann::json::exception& e) {
      send_error(res, Error(ErrorCode::SchemaError, e.what()));
    }
  };
}

MethodConstruction apply_selection(const Repository& repo, const MethodConstruction& current,
                                   const nlohmann::json& body) {
  if (!body.is_object() || !body.contains("chosen") || !body.at("chosen").is_array())
    throw Error(ErrorCode::SchemaError, "body must be {\"chosen\": [ids]}");
  MethodConstruction next = current;
  next.selection.clear();
  for (const auto& id : body.at("chosen")) next.selection.insert(id.get<std::string>());
  require_known(repo, next.selection);

  std::map<std::string, std::string> stages;
  if (body.contains("stage_of"))
    stages = body.at("stage_of").get<std::map<std::string, std::string>>();
  else
    stages = current.stage_of;
  next.stage_of.clear();
  for (const auto& [task, stage] : stages) {
    if (!body.contains("stage_of") && !next.selection.count(task)) continue;  // dropped with its task
    next = assign_stage(next, repo, task, stage);
  }
  return next;
}

}  // namespace

Service::Service(Repository repository, ServiceOptions options)
    : repository_(std::move(repository)), options_(std::move(options)) {}

void Service::mount(httplib::Server& server) {
  const auto cors = options_.cors_origin;
  server.set_post_routing_handler([cors](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", cors);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  const Repository& repo = repository_;
  SessionStore& store = store_;

  server.Get("/fragments", guarded([&repo](const httplib::Request& req, httplib::Response& res) {
               FragmentFilter filter;
               if (req.has_param("kind")) {
                 const auto text = req.get_param_value("kind");
                 filter.kind = parse_kind(text);
                 if (!filter.kind) throw Error(ErrorCode::SchemaError, "unknown kind '" + text + "'");
               }
               if (req.has_param("origin")) {
                 const auto text = req.get_param_value("origin");
                 filter.origin = parse_origin(text);
                 if (!filter.origin) throw Error(ErrorCode::SchemaError, "unknown origin '" + text + "'");
               }
               if (req.has_param("owner_process")) filter.owner_process = req.get_param_value("owner_process");
               if (req.has_param("q")) filter.name_substring = req.get_param_value("q");
               Json items = Json::array();
               for (const auto& f : query(repo, filter)) items.push_back(json_io::to_json(f));
               send(res, 200, items);
             }));

  server.Get(R"(/fragments/([^/]+))", guarded([&repo](const httplib::Request& req, httplib::Response& res) {
               const std::string id = req.matches[1];
               Json body;
               body["fragment"] = json_io::to_json(repo.at(id));
               body["relations"] = json_io::to_json(relations_of(repo, id));
               send(res, 200, body);
             }));

  server.Post("/methods", guarded([&store](const httplib::Request& req, httplib::Response& res) {
                MethodConstruction m;
                if (!req.body.empty()) {
                  const auto body = parse_body(req);
                  if (body.contains("name")) m.name = body.at("name").get<std::string>();
                  if (body.contains("notes")) m.notes = body.at("notes").get<std::string>();
                }
                const auto id = store.create(std::move(m));
                send(res, 201, Json{{"id", id}});
              }));

  server.Get(R"(/methods/([^/]+))", guarded([&store](const httplib::Request& req, httplib::Response& res) {
               const std::string id = req.matches[1];
               auto m = store.snapshot(id);
               if (!m) return send_not_found(res, id);
               send(res, 200, json_io::construction_to_json(id, *m));
             }));

  server.Put(R"(/methods/([^/]+)/selection)",
             guarded([&repo, &store](const httplib::Request& req, httplib::Response& res) {
               const std::string id = req.matches[1];
               const auto body = parse_body(req);
               const bool validating = req.has_param("validate") && req.get_param_value("validate") != "false";
               std::optional<AssemblyReport> rejected;
               auto m = store.update(id, [&](const MethodConstruction& current) {
                 auto next = apply_selection(repo, current, body);
                 if (validating) {
                   auto report = validate_method(next, repo);
                   if (!report.ok) {
                     rejected = std::move(report);
                     return current;
                   }
                 }
                 return next;
               });
               if (!m) return send_not_found(res, id);
               if (rejected) return send(res, 422, json_io::to_json(*rejected));
               send(res, 200, json_io::construction_to_json(id, *m));
             }));

  server.Post(R"(/methods/([^/]+)/closure)",
              guarded([&repo, &store](const httplib::Request& req, httplib::Response& res) {
                const std::string id = req.matches[1];
                auto m = store.update(id, [&](const MethodConstruction& current) {
                  auto next = current;
                  next.selection = required_closure(repo, current.selection);
                  return next;
                });
                if (!m) return send_not_found(res, id);
                send(res, 200, json_io::construction_to_json(id, *m));
              }));

  server.Get(R"(/methods/([^/]+)/report)", guarded([&repo, &store](const httplib::Request& req, httplib::Response& res) {
               const std::string id = req.matches[1];
               auto m = store.snapshot(id);
               if (!m) return send_not_found(res, id);
               send(res, 200, json_io::to_json(validate_method(*m, repo)));
             }));

  server.Get(R"(/methods/([^/]+)/order)", guarded([&repo, &store](const httplib::Request& req, httplib::Response& res) {
               const std::string id = req.matches[1];
               auto m = store.snapshot(id);
               if (!m) return send_not_found(res, id);
               send(res, 200, Json{{"task_order", order_tasks(*m, repo)}});
             }));

  server.Get(R"(/methods/([^/]+)/export)", guarded([&repo, &store](const httplib::Request& req, httplib::Response& res) {
               const std::string id = req.matches[1];
               auto m = store.snapshot(id);
               if (!m) return send_not_found(res, id);
               const auto report = validate_method(*m, repo);
               if (!report.ok) {
                 Json body = json_io::to_json(Error(ErrorCode::Precondition, "method does not validate"));
                 body["report"] = json_io::to_json(report);
                 return send(res, 409, body);
               }
               res.status = 200;
               res.set_content(render_export(export_method(*m, repo)), kJson);
             }));

  server.Post("/metrics/coverage", guarded([&repo](const httplib::Request& req, httplib::Response& res) {
                const auto corpus = load_corpus(req.body);
                const auto report = domain_coverage(corpus, FragmentSet::task_fragments(repo));
                res.status = 200;
                res.set_content(render_coverage(report, ReportFormat::Machine), kJson);
              }));

  server.Post("/metrics/usability", guarded([&repo](const httplib::Request& req, httplib::Response& res) {
                const auto project = load_project(req.body);
                res.status = 200;
                res.set_content(project_report(project, repo, ReportFormat::Machine), kJson);
              }));
}

bool serve(Repository repository, const std::string& host, int port, ServiceOptions options) {
  httplib::Server server;
  Service service(std::move(repository), std::move(options));
  service.mount(server);
  return server.listen(host, port);
}

}  // namespace smeforge
