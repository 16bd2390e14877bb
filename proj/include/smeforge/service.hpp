#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "smeforge/assembly.hpp"
#include "smeforge/repository.hpp"

namespace httplib {
class Server;
}

namespace smeforge {

// In-memory store of method constructions. Lookups take a shared lock on the
// index; each construction has its own mutex, so writers to the same
// construction serialize and each observes its predecessor's result.
class SessionStore {
public:
  std::string create(MethodConstruction initial);
  std::optional<MethodConstruction> snapshot(const std::string& id) const;

  /// Applies `edit` under the construction's lock. Returns nullopt for an
  /// unknown id. Exceptions from `edit` leave the construction unchanged.
  std::optional<MethodConstruction> update(const std::string& id,
                                           const std::function<MethodConstruction(const MethodConstruction&)>& edit);

private:
  struct Slot {
    mutable std::mutex mutex;
    MethodConstruction value;
  };

  std::shared_ptr<Slot> slot(const std::string& id) const;

  mutable std::shared_mutex index_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> slots_;
  std::atomic<unsigned long> next_id_{1};
};

struct ServiceOptions {
  std::string cors_origin = "*";
};

// HTTP API over a read-only repository. Routes are installed onto a
// caller-owned httplib::Server.
class Service {
public:
  explicit Service(Repository repository, ServiceOptions options = {});

  void mount(httplib::Server& server);

  const Repository& repository() const noexcept { return repository_; }
  SessionStore& store() noexcept { return store_; }

private:
  Repository repository_;
  ServiceOptions options_;
  SessionStore store_;
};

/// Blocks serving on host:port until the process is stopped. Returns
/// false if the socket cannot be bound.
bool serve(Repository repository, const std::string& host, int port, ServiceOptions options = {});

}  // namespace smeforge
