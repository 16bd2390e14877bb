#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smeforge/metamodel.hpp"

namespace smeforge {

struct DeonticCell {
  std::string row;
  std::string col;
  DeonticValue value = DeonticValue::O;

  bool operator==(const DeonticCell&) const = default;
};

struct PrecedenceConstraint {
  std::string before;
  std::string after;
  std::string source;

  bool operator==(const PrecedenceConstraint&) const = default;
};

struct RepositoryMeta {
  std::string name;
  std::string version;
  // Lifecycle order of Stage fragments. Written to meta.stage_order; when a
  // document omits it, Stage declaration order is used instead.
  std::vector<std::string> stage_order;

  bool operator==(const RepositoryMeta&) const = default;
};

struct FragmentFilter {
  std::optional<FragmentKind> kind;
  std::optional<Origin> origin;
  std::optional<std::string> owner_process;
  std::optional<std::string> name_substring;  // case-insensitive; also matches aliases
};

struct Relations {
  std::vector<DeonticCell> cells;
  std::vector<std::string> predecessors;
  std::vector<std::string> successors;

  bool operator==(const Relations&) const = default;
};

// Immutable, invariant-checked fragment repository. The only way to obtain
// one is Repository::build (or load_repository, which calls it), so every
// instance satisfies the integrity rules: unique slug ids, legal cell kinds,
// unique (row, col), Task-only acyclic precedence, no dangling references,
// no alias collisions.
class Repository {
public:
  using FragmentMap = std::map<std::string, MethodFragment, std::less<>>;

  Repository() = default;

  static Repository build(RepositoryMeta meta, std::vector<MethodFragment> fragments,
                          std::vector<DeonticCell> cells, std::vector<PrecedenceConstraint> precedence);

  const RepositoryMeta& meta() const noexcept { return meta_; }
  const FragmentMap& fragments() const noexcept { return fragments_; }
  // Sorted by (row, col).
  const std::vector<DeonticCell>& cells() const noexcept { return cells_; }
  // Sorted by (before, after).
  const std::vector<PrecedenceConstraint>& precedence() const noexcept { return precedence_; }

  bool contains(std::string_view id) const;
  const MethodFragment* find(std::string_view id) const;
  /// Throws Error{UnknownId}.
  const MethodFragment& at(std::string_view id) const;
  FragmentKind kind_of(std::string_view id) const { return at(id).kind; }

  /// Position of a Stage in meta().stage_order, or nullopt.
  std::optional<std::size_t> stage_rank(std::string_view stage_id) const;

  /// Cells whose row or column is `id`, in (row, col) order.
  std::vector<DeonticCell> cells_of(std::string_view id) const;

  bool operator==(const Repository& other) const {
    return meta_ == other.meta_ && fragments_ == other.fragments_ && cells_ == other.cells_ &&
           precedence_ == other.precedence_;
  }

private:
  RepositoryMeta meta_;
  FragmentMap fragments_;
  std::vector<DeonticCell> cells_;
  std::vector<PrecedenceConstraint> precedence_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> cells_by_fragment_;
};

/// Parses a repository document. Throws Error{ParseError | SchemaError |
/// IntegrityError}; integrity errors carry the offending ids.
Repository load_repository(std::string_view document);

/// Canonical JSON rendering (fragments by id, cells by (row, col), edges by
/// (before, after)); byte-identical for equal repositories.
std::string save_repository(const Repository& repository);

/// Reads a file; `path` may omit a trailing ".json". Throws Error{IoError}.
std::string read_document(const std::string& path);

Repository load_repository_file(const std::string& path);

std::vector<MethodFragment> query(const Repository& repository, const FragmentFilter& filter);

/// Throws Error{UnknownId}.
Relations relations_of(const Repository& repository, std::string_view id);

}  // namespace smeforge
