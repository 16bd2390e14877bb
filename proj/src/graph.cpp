#include "smeforge/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "smeforge/error.hpp"

namespace smeforge {

namespace {

using Adjacency = std::map<std::string, std::vector<std::string>>;

Adjacency induced(const std::vector<std::string>& nodes, const std::vector<Edge>& edges) {
  const std::set<std::string> members(nodes.begin(), nodes.end());
  Adjacency adj;
  for (const auto& n : members) adj[n];
  for (const auto& [before, after] : edges)
    if (members.count(before) && members.count(after)) adj[before].push_back(after);
  for (auto& [_, out] : adj) std::sort(out.begin(), out.end());
  return adj;
}

}  // namespace

std::vector<std::string> find_cycle(const std::vector<std::string>& nodes, const std::vector<Edge>& edges) {
  const Adjacency adj = induced(nodes, edges);
  enum class Mark { White, Grey, Black };
  std::map<std::string, Mark> mark;
  for (const auto& [n, _] : adj) mark[n] = Mark::White;

  std::vector<std::string> path;
  std::vector<std::string> cycle;

  // Iterative DFS; the grey path is kept explicitly so a back edge can be
  // unwound into the cycle it closes.
  for (const auto& [root, _] : adj) {
    if (mark[root] != Mark::White) continue;
    std::vector<std::pair<std::string, std::size_t>> stack{{root, 0}};
    mark[root] = Mark::Grey;
    path.push_back(root);
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      const auto& out = adj.at(node);
      if (next == out.size()) {
        mark[node] = Mark::Black;
        path.pop_back();
        stack.pop_back();
        continue;
      }
      const std::string succ = out[next++];
      if (mark[succ] == Mark::Grey) {
        auto it = std::find(path.begin(), path.end(), succ);
        cycle.assign(it, path.end());
        return cycle;
      }
      if (mark[succ] == Mark::White) {
        mark[succ] = Mark::Grey;
        path.push_back(succ);
        stack.emplace_back(succ, 0);
      }
    }
  }
  return cycle;
}

std::vector<std::string> precedence_order(const std::vector<std::string>& nodes, const std::vector<Edge>& edges,
                                          const std::function<bool(const std::string&, const std::string&)>& less) {
  const Adjacency adj = induced(nodes, edges);
  std::map<std::string, int> indegree;
  for (const auto& [n, _] : adj) indegree[n];
  for (const auto& [_, out] : adj)
    for (const auto& succ : out) ++indegree[succ];

  // Fall back to id order so equal-ranked nodes never collapse in the set.
  auto cmp = [&](const std::string& a, const std::string& b) {
    if (less(a, b)) return true;
    if (less(b, a)) return false;
    return a < b;
  };
  std::set<std::string, decltype(cmp)> ready(cmp);
  for (const auto& [n, d] : indegree)
    if (d == 0) ready.insert(n);

  std::vector<std::string> order;
  order.reserve(adj.size());
  while (!ready.empty()) {
    std::string n = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(n);
    for (const auto& succ : adj.at(n))
      if (--indegree[succ] == 0) ready.insert(succ);
  }

  if (order.size() != adj.size()) {
    auto cycle = find_cycle(nodes, edges);
    std::string msg = "precedence cycle:";
    for (const auto& id : cycle) msg += " " + id;
    throw Error(ErrorCode::Cycle, msg, std::move(cycle));
  }
  return order;
}

}  // namespace smeforge
