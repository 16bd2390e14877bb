#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace smeforge {

using Edge = std::pair<std::string, std::string>;  // before -> after

/// Returns the ids of one directed cycle among `edges`, in traversal order,
/// or an empty vector when the graph is acyclic.
std::vector<std::string> find_cycle(const std::vector<std::string>& nodes, const std::vector<Edge>& edges);

/// Kahn ordering of `nodes` restricted to edges whose endpoints are both in
/// `nodes`. Among ready nodes the smallest `less` wins, so the output is
/// deterministic. Throws Error{Cycle} naming the cycle's ids.
std::vector<std::string> precedence_order(const std::vector<std::string>& nodes, const std::vector<Edge>& edges,
                                          const std::function<bool(const std::string&, const std::string&)>& less);

}  // namespace smeforge
