// This file is part of causaloop.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include <causaloop/error.hpp>

namespace causaloop {

using vertex_id = std::uint32_t;

struct vertex_edge {
  vertex_id src;
  vertex_id dst;
  auto operator<=>(const vertex_edge&) const = default;
};

/*! \brief Finite directed graph over explicitly declared vertex ids.

  Cycles and self-loops are permitted. Edges whose endpoints were never
  declared as vertices are stored as given (validation reports them); the
  traversal algorithms below ignore such edges.

  Immutable after construction.
*/
class graph {
public:
  graph() = default;

  graph(std::vector<vertex_id> vertices, std::vector<vertex_edge> edges)
      : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  }

  const std::vector<vertex_id>& vertices() const { return vertices_; }
  const std::vector<vertex_edge>& edges() const { return edges_; }

  bool has_vertex(vertex_id v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
  }

  bool has_edge(vertex_id src, vertex_id dst) const {
    return std::binary_search(edges_.begin(), edges_.end(), vertex_edge{src, dst});
  }

  /*! Parents of v (sources of edges into v), ascending by id. */
  std::vector<vertex_id> parents(vertex_id v) const {
    std::vector<vertex_id> result;
    for (const auto& e : edges_)
      if (e.dst == v && has_vertex(e.src)) result.push_back(e.src);
    std::sort(result.begin(), result.end());
    return result;
  }

  /*! Children of v (destinations of edges out of v), ascending by id. */
  std::vector<vertex_id> children(vertex_id v) const {
    std::vector<vertex_id> result;
    for (const auto& e : edges_)
      if (e.src == v && has_vertex(e.dst)) result.push_back(e.dst);
    std::sort(result.begin(), result.end());
    return result;
  }

  bool operator==(const graph&) const = default;

private:
  std::vector<vertex_id> vertices_; // sorted, unique
  std::vector<vertex_edge> edges_;  // sorted, unique
};

/*! Raised by topological_order on a cyclic graph; carries a witness cycle
    as a vertex sequence that starts and ends at the same vertex. */
class cycle_error : public error {
public:
  explicit cycle_error(std::vector<vertex_id> cycle)
      : error(errc::cyclic, format_cycle(cycle)), cycle_(std::move(cycle)) {}

  const std::vector<vertex_id>& cycle() const { return cycle_; }

  static std::string format_cycle(const std::vector<vertex_id>& cycle) {
    std::string text = "cycle [";
    for (std::size_t pos = 0; pos < cycle.size(); ++pos) {
      if (pos) text += ", ";
      text += std::to_string(cycle[pos]);
    }
    return text + "]";
  }

private:
  std::vector<vertex_id> cycle_;
};

namespace detail {

/*! Adjacency restricted to declared vertices, children ascending. */
inline std::map<vertex_id, std::vector<vertex_id>> adjacency(const graph& g) {
  std::map<vertex_id, std::vector<vertex_id>> adj;
  for (vertex_id v : g.vertices()) adj[v];
  for (const auto& e : g.edges())
    if (g.has_vertex(e.src) && g.has_vertex(e.dst)) adj[e.src].push_back(e.dst);
  for (auto& [v, children] : adj) std::sort(children.begin(), children.end());
  return adj;
}

/*! Deterministic cycle extraction: DFS from the smallest vertex, children in
    ascending order; the first back edge closes the witness. Assumes a cycle
    exists among the given vertices. */
inline std::vector<vertex_id> find_cycle(const graph& g) {
  auto adj = adjacency(g);
  std::map<vertex_id, int> state; // 0 unseen, 1 on stack, 2 done
  std::vector<vertex_id> stack;

  // Iterative DFS; frame = (vertex, next child position).
  for (vertex_id root : g.vertices()) {
    if (state[root] != 0) continue;
    std::vector<std::pair<vertex_id, std::size_t>> frames{{root, 0}};
    state[root] = 1;
    stack.push_back(root);
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto& children = adj[v];
      if (pos < children.size()) {
        vertex_id child = children[pos++];
        if (state[child] == 1) {
          auto start = std::find(stack.begin(), stack.end(), child);
          std::vector<vertex_id> cycle(start, stack.end());
          cycle.push_back(child);
          return cycle;
        }
        if (state[child] == 0) {
          state[child] = 1;
          stack.push_back(child);
          frames.emplace_back(child, 0);
        }
      } else {
        state[v] = 2;
        stack.pop_back();
        frames.pop_back();
      }
    }
  }
  return {};
}

} // namespace detail

/*! \brief Topological order of an acyclic graph, ties broken by ascending id.

  Kahn's algorithm with a min-heap, so the result is deterministic: among all
  vertices whose parents are already placed, the smallest id goes next.

  Throws cycle_error with a witness cycle if the graph is cyclic.
*/
inline std::vector<vertex_id> topological_order(const graph& g) {
  auto adj = detail::adjacency(g);
  std::map<vertex_id, std::size_t> indegree;
  for (vertex_id v : g.vertices()) indegree[v] = 0;
  for (const auto& [v, children] : adj)
    for (vertex_id child : children) ++indegree[child];

  std::priority_queue<vertex_id, std::vector<vertex_id>, std::greater<>> ready;
  for (const auto& [v, deg] : indegree)
    if (deg == 0) ready.push(v);

  std::vector<vertex_id> order;
  order.reserve(g.vertices().size());
  while (!ready.empty()) {
    vertex_id v = ready.top();
    ready.pop();
    order.push_back(v);
    for (vertex_id child : adj[v])
      if (--indegree[child] == 0) ready.push(child);
  }
  if (order.size() != g.vertices().size()) throw cycle_error(detail::find_cycle(g));
  return order;
}

/*! Ancestors of v: every vertex with a directed path to v. Sorted ascending.
    v itself is included only if it lies on a cycle through itself. */
inline std::vector<vertex_id> ancestors(const graph& g, vertex_id v) {
  std::map<vertex_id, std::vector<vertex_id>> rev;
  for (const auto& e : g.edges())
    if (g.has_vertex(e.src) && g.has_vertex(e.dst)) rev[e.dst].push_back(e.src);

  std::set<vertex_id> seen;
  std::vector<vertex_id> frontier{v};
  while (!frontier.empty()) {
    vertex_id current = frontier.back();
    frontier.pop_back();
    for (vertex_id parent : rev[current])
      if (seen.insert(parent).second) frontier.push_back(parent);
  }
  return {seen.begin(), seen.end()};
}

} // namespace causaloop
