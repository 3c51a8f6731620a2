// This file is part of causaloop.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include <causaloop/induced.hpp>
#include <causaloop/structure.hpp>

namespace causaloop {

/*! Seeded generator with a draw rule fixed by this library, so sampled
    suites reproduce across standard-library implementations (the standard
    leaves distribution classes unspecified). */
class sampler {
public:
  explicit sampler(std::uint64_t seed) : engine_(seed) {}

  /*! Uniform-enough integer in [lo, hi], both ends included. */
  std::uint64_t draw(std::uint64_t lo, std::uint64_t hi) {
    return lo + engine_() % (hi - lo + 1);
  }

  value_t draw_value(value_t lo, value_t hi) {
    return static_cast<value_t>(draw(lo, hi));
  }

private:
  std::mt19937_64 engine_;
};

/*! A random function table with 1 to 3 parties, output sizes 2 to 3, input
    sizes 1 to 3, entries uniform over each input space. */
inline induced_function random_omega(sampler& s) {
  std::size_t n = static_cast<std::size_t>(s.draw(1, 3));
  std::vector<value_t> out_sizes(n), in_sizes(n);
  for (std::size_t k = 0; k < n; ++k) {
    out_sizes[k] = s.draw_value(2, 3);
    in_sizes[k] = s.draw_value(1, 3);
  }
  index_t out_count = tuple_count(out_sizes);
  std::vector<std::vector<value_t>> components(n);
  for (std::size_t k = 0; k < n; ++k) {
    components[k].resize(static_cast<std::size_t>(out_count));
    for (auto& entry : components[k]) entry = s.draw_value(0, in_sizes[k] - 1);
  }
  return induced_function(std::move(out_sizes), std::move(in_sizes), std::move(components));
}

/*! \brief A random causal structure that passes validation by construction.

  Vertices (2 to 7, ids with gaps), alphabet sizes 2 to 3, 1 to 3 parties.
  Every vertex gets a random rank; edges into non-parties only go forward in
  rank, which keeps the cut graph acyclic, while edges into parties connect
  arbitrary pairs, self-loops included. Each non-party vertex gets a uniform
  random mechanism table over its parents.
*/
inline causal_structure random_structure(sampler& s) {
  std::size_t count = static_cast<std::size_t>(s.draw(2, 7));
  std::vector<vertex_id> vertices;
  vertex_id next = static_cast<vertex_id>(s.draw(0, 2));
  for (std::size_t i = 0; i < count; ++i) {
    vertices.push_back(next);
    next += static_cast<vertex_id>(s.draw(1, 3));
  }

  std::map<vertex_id, value_t> alphabets;
  for (vertex_id v : vertices) alphabets[v] = s.draw_value(2, 3);

  std::vector<vertex_id> pool = vertices;
  for (std::size_t i = pool.size(); i > 1; --i)
    std::swap(pool[i - 1], pool[static_cast<std::size_t>(s.draw(0, i - 1))]);
  std::size_t party_count = static_cast<std::size_t>(s.draw(1, std::min<std::size_t>(3, count)));
  std::vector<vertex_id> parties(pool.begin(),
                                 pool.begin() + static_cast<std::ptrdiff_t>(party_count));
  auto is_party = [&](vertex_id v) {
    return std::find(parties.begin(), parties.end(), v) != parties.end();
  };

  std::vector<vertex_id> rank = vertices;
  for (std::size_t i = rank.size(); i > 1; --i)
    std::swap(rank[i - 1], rank[static_cast<std::size_t>(s.draw(0, i - 1))]);

  std::vector<vertex_edge> edges;
  for (std::size_t i = 0; i < rank.size(); ++i)
    for (std::size_t j = i + 1; j < rank.size(); ++j)
      if (!is_party(rank[j]) && s.draw(0, 2) == 0) edges.push_back({rank[i], rank[j]});
  for (vertex_id p : parties)
    for (vertex_id u : vertices)
      if (s.draw(0, 2) == 0) edges.push_back({u, p});

  graph g(vertices, edges);
  std::map<vertex_id, mechanism_table> mechanisms;
  for (vertex_id v : vertices) {
    if (is_party(v)) continue;
    std::vector<value_t> parent_sizes;
    for (vertex_id parent : g.parents(v)) parent_sizes.push_back(alphabets[parent]);
    index_t entries = tuple_count(parent_sizes);
    mechanism_table table;
    table.entries.resize(static_cast<std::size_t>(entries));
    for (auto& entry : table.entries) entry = s.draw_value(0, alphabets[v] - 1);
    mechanisms[v] = std::move(table);
  }

  return causal_structure(std::move(g), std::move(alphabets), std::move(mechanisms),
                          std::move(parties));
}

} // namespace causaloop
