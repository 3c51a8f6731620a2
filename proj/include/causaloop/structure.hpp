// This file is part of causaloop.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <causaloop/codec.hpp>
#include <causaloop/graph.hpp>

namespace causaloop {

/*! \brief Output table of one vertex mechanism.

  Entry order is the mixed-radix encoding of the parent value tuple, parents
  ascending by vertex id, leftmost most significant. A vertex with no parents
  has a single entry (its constant value).
*/
struct mechanism_table {
  std::vector<value_t> entries;

  bool operator==(const mechanism_table&) const = default;
};

/*! \brief A finite causal structure with interventions.

  A directed graph (cycles allowed), a finite alphabet per vertex, a mechanism
  per non-party vertex, and a nonempty set of party vertices whose mechanisms
  are left free. Party order is ascending vertex id; party k of n is the k-th
  smallest id.

  Construction normalizes the party list (sorted, unique) but performs no
  semantic checks; validate() reports every invariant violation as data.
  Immutable after construction.
*/
class causal_structure {
public:
  causal_structure() = default;

  causal_structure(class graph g, std::map<vertex_id, value_t> alphabets,
                   std::map<vertex_id, mechanism_table> mechanisms,
                   std::vector<vertex_id> parties)
      : graph_(std::move(g)),
        alphabets_(std::move(alphabets)),
        mechanisms_(std::move(mechanisms)),
        parties_(std::move(parties)) {
    std::sort(parties_.begin(), parties_.end());
    parties_.erase(std::unique(parties_.begin(), parties_.end()), parties_.end());
  }

  const class graph& graph() const { return graph_; }
  const std::map<vertex_id, value_t>& alphabets() const { return alphabets_; }
  const std::map<vertex_id, mechanism_table>& mechanisms() const { return mechanisms_; }

  /*! Parties ascending by vertex id; position in this list is the party index. */
  const std::vector<vertex_id>& parties() const { return parties_; }

  bool is_party(vertex_id v) const {
    return std::binary_search(parties_.begin(), parties_.end(), v);
  }

  /*! 0-based party index of vertex v; requires is_party(v). */
  std::size_t party_index(vertex_id v) const {
    return static_cast<std::size_t>(
        std::lower_bound(parties_.begin(), parties_.end(), v) - parties_.begin());
  }

  value_t alphabet_size(vertex_id v) const { return alphabets_.at(v); }

  bool operator==(const causal_structure&) const = default;

private:
  class graph graph_;
  std::map<vertex_id, value_t> alphabets_;
  std::map<vertex_id, mechanism_table> mechanisms_;
  std::vector<vertex_id> parties_; // sorted, unique
};

enum class violation_code {
  nonempty_parties,
  party_not_a_vertex,
  party_has_mech,
  missing_mech,
  mech_for_undeclared_vertex,
  mech_length_mismatch,
  mech_entry_out_of_range,
  missing_alphabet,
  alphabet_too_small,
  alphabet_for_undeclared_vertex,
  edge_endpoint_undeclared,
  cut_graph_cyclic,
  irrelevant_vertex, // warning, never blocks
};

inline const char* violation_code_name(violation_code code) noexcept {
  switch (code) {
    case violation_code::nonempty_parties: return "NONEMPTY_PARTIES";
    case violation_code::party_not_a_vertex: return "PARTY_NOT_A_VERTEX";
    case violation_code::party_has_mech: return "PARTY_HAS_MECH";
    case violation_code::missing_mech: return "MISSING_MECH";
    case violation_code::mech_for_undeclared_vertex: return "MECH_FOR_UNDECLARED_VERTEX";
    case violation_code::mech_length_mismatch: return "MECH_LENGTH_MISMATCH";
    case violation_code::mech_entry_out_of_range: return "MECH_ENTRY_OUT_OF_RANGE";
    case violation_code::missing_alphabet: return "MISSING_ALPHABET";
    case violation_code::alphabet_too_small: return "ALPHABET_TOO_SMALL";
    case violation_code::alphabet_for_undeclared_vertex: return "ALPHABET_FOR_UNDECLARED_VERTEX";
    case violation_code::edge_endpoint_undeclared: return "EDGE_ENDPOINT_UNDECLARED";
    case violation_code::cut_graph_cyclic: return "CUT_GRAPH_CYCLIC";
    case violation_code::irrelevant_vertex: return "IRRELEVANT_VERTEX";
  }
  return "UNKNOWN";
}

struct violation {
  violation_code code;
  std::string message;
  std::optional<vertex_id> vertex;
  std::optional<vertex_edge> edge;
};

struct validation_report {
  bool ok = true;
  std::vector<violation> violations;
  std::vector<violation> warnings; // IRRELEVANT_VERTEX only
  std::optional<std::vector<vertex_id>> cut_cycle_witness;
};

/*! The graph with every edge into a party removed; vertex set unchanged. */
inline graph cut_graph(const causal_structure& s) {
  std::vector<vertex_edge> kept;
  for (const auto& e : s.graph().edges())
    if (!s.is_party(e.dst)) kept.push_back(e);
  return graph(s.graph().vertices(), std::move(kept));
}

namespace detail {

inline void add_violation(validation_report& report, violation_code code, std::string message,
                          std::optional<vertex_id> vertex = std::nullopt,
                          std::optional<vertex_edge> edge = std::nullopt) {
  report.violations.push_back({code, std::move(message), vertex, edge});
}

} // namespace detail

/*! \brief Check every structural invariant; violations are data, not failures.

  Checks, in a fixed order: nonempty parties, edge endpoints declared,
  alphabets present and of size >= 2, parties are mechanism-free declared
  vertices, every non-party vertex carries exactly one mechanism of the right
  length and range, and acyclicity of the cut graph (witness recorded on
  failure). Vertices that cannot influence any party input are flagged with
  the warning IRRELEVANT_VERTEX; warnings never affect ok.
*/
inline validation_report validate(const causal_structure& s) {
  validation_report report;
  const auto& g = s.graph();

  if (s.parties().empty())
    detail::add_violation(report, violation_code::nonempty_parties, "party set is empty");

  for (const auto& e : g.edges()) {
    if (!g.has_vertex(e.src))
      detail::add_violation(report, violation_code::edge_endpoint_undeclared,
                            "edge source " + std::to_string(e.src) + " is not a declared vertex",
                            e.src, e);
    if (!g.has_vertex(e.dst))
      detail::add_violation(report, violation_code::edge_endpoint_undeclared,
                            "edge destination " + std::to_string(e.dst) +
                                " is not a declared vertex",
                            e.dst, e);
  }

  for (vertex_id v : g.vertices()) {
    auto it = s.alphabets().find(v);
    if (it == s.alphabets().end())
      detail::add_violation(report, violation_code::missing_alphabet,
                            "vertex " + std::to_string(v) + " has no alphabet", v);
    else if (it->second < 2)
      detail::add_violation(report, violation_code::alphabet_too_small,
                            "vertex " + std::to_string(v) + " has alphabet size " +
                                std::to_string(it->second) + " (minimum 2)",
                            v);
  }
  for (const auto& [v, size] : s.alphabets())
    if (!g.has_vertex(v))
      detail::add_violation(report, violation_code::alphabet_for_undeclared_vertex,
                            "alphabet declared for undeclared vertex " + std::to_string(v), v);

  for (vertex_id p : s.parties()) {
    if (!g.has_vertex(p))
      detail::add_violation(report, violation_code::party_not_a_vertex,
                            "party " + std::to_string(p) + " is not a declared vertex", p);
    if (s.mechanisms().count(p))
      detail::add_violation(report, violation_code::party_has_mech,
                            "party " + std::to_string(p) + " has a mechanism table", p);
  }

  for (vertex_id v : g.vertices()) {
    if (s.is_party(v)) continue;
    auto it = s.mechanisms().find(v);
    if (it == s.mechanisms().end()) {
      detail::add_violation(report, violation_code::missing_mech,
                            "non-party vertex " + std::to_string(v) + " has no mechanism", v);
      continue;
    }
    // Length and range checks need the relevant alphabets; skip quietly when
    // those are already reported missing.
    bool parent_sizes_known = true;
    std::vector<value_t> parent_sizes;
    for (vertex_id parent : g.parents(v)) {
      auto alpha = s.alphabets().find(parent);
      if (alpha == s.alphabets().end()) {
        parent_sizes_known = false;
        break;
      }
      parent_sizes.push_back(alpha->second);
    }
    if (parent_sizes_known) {
      auto expected = checked_product(parent_sizes);
      if (expected && it->second.entries.size() != *expected)
        detail::add_violation(report, violation_code::mech_length_mismatch,
                              "mechanism of vertex " + std::to_string(v) + " has " +
                                  std::to_string(it->second.entries.size()) +
                                  " entries, expected " + std::to_string(*expected),
                              v);
    }
    auto own = s.alphabets().find(v);
    if (own != s.alphabets().end()) {
      for (value_t entry : it->second.entries) {
        if (entry >= own->second) {
          detail::add_violation(report, violation_code::mech_entry_out_of_range,
                                "mechanism of vertex " + std::to_string(v) + " contains entry " +
                                    std::to_string(entry) + " outside alphabet of size " +
                                    std::to_string(own->second),
                                v);
          break;
        }
      }
    }
  }
  for (const auto& [v, mech] : s.mechanisms())
    if (!g.has_vertex(v))
      detail::add_violation(report, violation_code::mech_for_undeclared_vertex,
                            "mechanism declared for undeclared vertex " + std::to_string(v), v);

  graph cut = cut_graph(s);
  try {
    topological_order(cut);
  } catch (const cycle_error& e) {
    report.cut_cycle_witness = e.cycle();
    detail::add_violation(report, violation_code::cut_graph_cyclic,
                          "cut graph contains " + cycle_error::format_cycle(e.cycle()));
  }

  // Relevance warning: a non-party vertex can influence some party input only
  // if it is a parent of a party or an ancestor (in the cut graph) of one.
  if (!s.parties().empty()) {
    std::set<vertex_id> relevant;
    for (vertex_id p : s.parties()) {
      for (vertex_id parent : g.parents(p)) {
        relevant.insert(parent);
        for (vertex_id a : ancestors(cut, parent)) relevant.insert(a);
      }
    }
    for (vertex_id v : g.vertices()) {
      if (s.is_party(v) || relevant.count(v)) continue;
      report.warnings.push_back({violation_code::irrelevant_vertex,
                                 "vertex " + std::to_string(v) +
                                     " cannot influence any party input",
                                 v, std::nullopt});
    }
  }

  report.ok = report.violations.empty();
  return report;
}

} // namespace causaloop
