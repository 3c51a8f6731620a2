// This file is part of causaloop.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <causaloop/induced.hpp>
#include <causaloop/structure.hpp>

namespace causaloop {

/*! Raw text split into 1-based numbered lines. */
struct source_document {
  std::string text;
  struct line_record {
    std::size_t number;
    std::string text;
  };
  std::vector<line_record> lines;

  static source_document from_string(std::string raw) {
    source_document doc;
    doc.text = std::move(raw);
    std::size_t begin = 0, number = 1;
    while (begin <= doc.text.size()) {
      std::size_t end = doc.text.find('\n', begin);
      if (end == std::string::npos) {
        if (begin < doc.text.size())
          doc.lines.push_back({number, doc.text.substr(begin)});
        break;
      }
      std::string line = doc.text.substr(begin, end - begin);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      doc.lines.push_back({number, std::move(line)});
      begin = end + 1;
      ++number;
    }
    return doc;
  }

  static source_document from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw error(errc::parse, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_string(buffer.str());
  }
};

/*! Syntax failure at a specific token. code is a stable UPPER_SNAKE tag
    (EXPECTED_INTEGER, LENGTH_MISMATCH, DUPLICATE_VERTEX, ...). */
class parse_error : public error {
public:
  parse_error(std::size_t line, std::size_t column, std::string code,
              const std::string& message, std::string excerpt)
      : error(errc::parse, "line " + std::to_string(line) + ", column " +
                               std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        code_(std::move(code)),
        excerpt_(std::move(excerpt)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& tag() const { return code_; }
  const std::string& excerpt() const { return excerpt_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string code_;
  std::string excerpt_;
};

/*! A validation violation tied back to the source line it came from, when
    one line is responsible. */
struct anchored_violation {
  violation v;
  std::optional<std::size_t> line;
};

/*! Parsed successfully but the described structure is invalid. */
class validation_error : public error {
public:
  explicit validation_error(std::vector<anchored_violation> violations)
      : error(errc::validation, summarize(violations)), violations_(std::move(violations)) {}

  const std::vector<anchored_violation>& violations() const { return violations_; }

private:
  static std::string summarize(const std::vector<anchored_violation>& violations) {
    std::string s = std::to_string(violations.size()) + " violation" +
                    (violations.size() == 1 ? "" : "s") + ":";
    for (const auto& av : violations) {
      s += std::string(" [") + violation_code_name(av.v.code);
      if (av.line) s += " line " + std::to_string(*av.line);
      s += "] " + av.v.message + ";";
    }
    s.pop_back();
    return s;
  }

  std::vector<anchored_violation> violations_;
};

namespace detail {

struct token {
  std::string text;
  std::size_t column; // 1-based
};

inline std::vector<token> tokenize_line(const std::string& raw) {
  std::vector<token> tokens;
  std::size_t pos = 0;
  std::size_t cut = raw.find('#');
  std::size_t end = cut == std::string::npos ? raw.size() : cut;
  while (pos < end) {
    while (pos < end && (raw[pos] == ' ' || raw[pos] == '\t')) ++pos;
    if (pos >= end) break;
    std::size_t start = pos;
    while (pos < end && raw[pos] != ' ' && raw[pos] != '\t') ++pos;
    tokens.push_back({raw.substr(start, pos - start), start + 1});
  }
  return tokens;
}

inline std::uint64_t parse_uint(const source_document::line_record& line, const token& tok,
                                std::uint64_t max, const std::string& what) {
  std::uint64_t value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range)
    throw parse_error(line.number, tok.column, "VALUE_OUT_OF_RANGE",
                      what + " '" + tok.text + "' is too large", line.text);
  if (ec != std::errc() || ptr != last)
    throw parse_error(line.number, tok.column, "EXPECTED_INTEGER",
                      "expected " + what + ", got '" + tok.text + "'", line.text);
  if (value > max)
    throw parse_error(line.number, tok.column, "VALUE_OUT_OF_RANGE",
                      what + " " + tok.text + " exceeds " + std::to_string(max), line.text);
  return value;
}

inline void expect_token_count(const source_document::line_record& line,
                               const std::vector<token>& tokens, std::size_t count) {
  if (tokens.size() < count) {
    const token& last = tokens.back();
    throw parse_error(line.number, last.column + last.text.size(), "MISSING_TOKEN",
                      "'" + tokens[0].text + "' line needs " + std::to_string(count - 1) +
                          " argument" + (count == 2 ? "" : "s"),
                      line.text);
  }
  if (tokens.size() > count)
    throw parse_error(line.number, tokens[count].column, "TRAILING_TOKENS",
                      "unexpected '" + tokens[count].text + "' after complete '" +
                          tokens[0].text + "' line",
                      line.text);
}

} // namespace detail

/*! \brief Parse the line-oriented causal-structure format.

  Directives, one per line, '#' starting a comment:
    vertex <id> <alphabet-size>   (size at least 2)
    edge <src> <dst>
    party <id>
    mech <id> : <v0> ... <v_{m-1}>
  Mechanism entries are listed in encoded parent-tuple order (parents
  ascending by id, leftmost most significant) and m must equal the product of
  the parent alphabet sizes. Redeclaring a vertex, edge, party, or mechanism
  is a parse_error. After parsing, the structure is validated; violations are
  thrown as a validation_error whose entries carry the responsible line where
  one is attributable (a cyclic cut graph points at the smallest-numbered
  edge line on the cycle).
*/
inline causal_structure parse_structure(const source_document& doc) {
  std::vector<vertex_id> vertices;
  std::vector<vertex_edge> edges;
  std::vector<vertex_id> parties;
  std::map<vertex_id, value_t> alphabets;
  std::map<vertex_id, mechanism_table> mechanisms;
  std::map<vertex_id, std::size_t> vertex_line, party_line, mech_line;
  std::map<vertex_edge, std::size_t> edge_line;

  constexpr std::uint64_t id_max = std::numeric_limits<vertex_id>::max();
  constexpr std::uint64_t value_max = std::numeric_limits<value_t>::max();

  for (const auto& line : doc.lines) {
    auto tokens = detail::tokenize_line(line.text);
    if (tokens.empty()) continue;
    const std::string& directive = tokens[0].text;
    if (directive == "vertex") {
      detail::expect_token_count(line, tokens, 3);
      auto id = static_cast<vertex_id>(detail::parse_uint(line, tokens[1], id_max, "vertex id"));
      auto size =
          static_cast<value_t>(detail::parse_uint(line, tokens[2], value_max, "alphabet size"));
      if (size < 2)
        throw parse_error(line.number, tokens[2].column, "VALUE_OUT_OF_RANGE",
                          "alphabet size must be at least 2", line.text);
      if (vertex_line.count(id))
        throw parse_error(line.number, tokens[1].column, "DUPLICATE_VERTEX",
                          "vertex " + std::to_string(id) + " already declared on line " +
                              std::to_string(vertex_line[id]),
                          line.text);
      vertex_line[id] = line.number;
      vertices.push_back(id);
      alphabets[id] = size;
    } else if (directive == "edge") {
      detail::expect_token_count(line, tokens, 3);
      auto src = static_cast<vertex_id>(detail::parse_uint(line, tokens[1], id_max, "vertex id"));
      auto dst = static_cast<vertex_id>(detail::parse_uint(line, tokens[2], id_max, "vertex id"));
      vertex_edge e{src, dst};
      if (edge_line.count(e))
        throw parse_error(line.number, tokens[1].column, "DUPLICATE_EDGE",
                          "edge " + std::to_string(src) + " -> " + std::to_string(dst) +
                              " already declared on line " + std::to_string(edge_line[e]),
                          line.text);
      edge_line[e] = line.number;
      edges.push_back(e);
    } else if (directive == "party") {
      detail::expect_token_count(line, tokens, 2);
      auto id = static_cast<vertex_id>(detail::parse_uint(line, tokens[1], id_max, "vertex id"));
      if (party_line.count(id))
        throw parse_error(line.number, tokens[1].column, "DUPLICATE_PARTY",
                          "party " + std::to_string(id) + " already declared on line " +
                              std::to_string(party_line[id]),
                          line.text);
      party_line[id] = line.number;
      parties.push_back(id);
    } else if (directive == "mech") {
      if (tokens.size() < 2)
        throw parse_error(line.number, tokens[0].column + tokens[0].text.size(),
                          "MISSING_TOKEN", "'mech' line needs a vertex id", line.text);
      auto id = static_cast<vertex_id>(detail::parse_uint(line, tokens[1], id_max, "vertex id"));
      if (tokens.size() < 3 || tokens[2].text != ":")
        throw parse_error(line.number,
                          tokens.size() < 3 ? tokens[1].column + tokens[1].text.size()
                                            : tokens[2].column,
                          "EXPECTED_COLON", "expected ':' after the vertex id", line.text);
      if (mech_line.count(id))
        throw parse_error(line.number, tokens[1].column, "DUPLICATE_MECH",
                          "mechanism for vertex " + std::to_string(id) +
                              " already declared on line " + std::to_string(mech_line[id]),
                          line.text);
      mechanism_table table;
      for (std::size_t t = 3; t < tokens.size(); ++t)
        table.entries.push_back(
            static_cast<value_t>(detail::parse_uint(line, tokens[t], value_max, "mechanism entry")));
      if (table.entries.empty())
        throw parse_error(line.number, tokens[2].column + 1, "MISSING_TOKEN",
                          "'mech' line needs at least one entry", line.text);
      mech_line[id] = line.number;
      mechanisms[id] = std::move(table);
    } else {
      throw parse_error(line.number, tokens[0].column, "UNKNOWN_DIRECTIVE",
                        "unknown directive '" + directive + "'", line.text);
    }
  }

  causal_structure s(graph(vertices, edges), std::move(alphabets), std::move(mechanisms),
                     std::move(parties));
  validation_report report = validate(s);
  if (!report.ok) {
    std::vector<anchored_violation> anchored;
    anchored.reserve(report.violations.size());
    for (const auto& v : report.violations) {
      std::optional<std::size_t> line;
      switch (v.code) {
        case violation_code::party_not_a_vertex:
          if (v.vertex && party_line.count(*v.vertex)) line = party_line[*v.vertex];
          break;
        case violation_code::party_has_mech:
          if (v.vertex && mech_line.count(*v.vertex)) line = mech_line[*v.vertex];
          break;
        case violation_code::missing_mech:
        case violation_code::missing_alphabet:
        case violation_code::alphabet_too_small:
          if (v.vertex && vertex_line.count(*v.vertex)) line = vertex_line[*v.vertex];
          break;
        case violation_code::mech_for_undeclared_vertex:
        case violation_code::mech_length_mismatch:
        case violation_code::mech_entry_out_of_range:
          if (v.vertex && mech_line.count(*v.vertex)) line = mech_line[*v.vertex];
          break;
        case violation_code::edge_endpoint_undeclared:
          if (v.edge && edge_line.count(*v.edge)) line = edge_line[*v.edge];
          break;
        case violation_code::cut_graph_cyclic:
          if (report.cut_cycle_witness) {
            const auto& cycle = *report.cut_cycle_witness;
            for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
              auto it = edge_line.find(vertex_edge{cycle[i], cycle[i + 1]});
              if (it != edge_line.end() && (!line || it->second < *line)) line = it->second;
            }
          }
          break;
        default:
          break;
      }
      anchored.push_back({v, line});
    }
    throw validation_error(std::move(anchored));
  }
  return s;
}

/*! \brief Parse the raw function-table format.

  Fixed section order, '#' starting a comment:
    omega <n>
    out <s1> ... <sn>       (each at least 2)
    in <t1> ... <tn>        (each at least 1)
    component <k> : <e0> ... <e_{M-1}>
  with one component line per party (any order, 1-based k), M the product of
  the out sizes, entries in encoded joint-output order and below the party's
  in size. A component line of the wrong length is a parse_error tagged
  LENGTH_MISMATCH at that line.
*/
inline induced_function parse_omega(const source_document& doc) {
  constexpr std::uint64_t value_max = std::numeric_limits<value_t>::max();
  std::optional<std::size_t> n;
  std::vector<value_t> out_sizes, in_sizes;
  std::vector<std::optional<std::vector<value_t>>> components;
  std::vector<std::size_t> component_line;
  std::size_t last_line = doc.lines.empty() ? 1 : doc.lines.back().number;
  std::optional<index_t> out_count;

  for (const auto& line : doc.lines) {
    auto tokens = detail::tokenize_line(line.text);
    if (tokens.empty()) continue;
    const std::string& directive = tokens[0].text;
    if (directive == "omega") {
      if (n)
        throw parse_error(line.number, tokens[0].column, "DUPLICATE_SECTION",
                          "'omega' already given", line.text);
      detail::expect_token_count(line, tokens, 2);
      auto parties = detail::parse_uint(line, tokens[1], 1u << 16, "party count");
      if (parties == 0)
        throw parse_error(line.number, tokens[1].column, "VALUE_OUT_OF_RANGE",
                          "party count must be at least 1", line.text);
      n = static_cast<std::size_t>(parties);
      components.assign(*n, std::nullopt);
      component_line.assign(*n, 0);
    } else if (directive == "out" || directive == "in") {
      bool is_out = directive == "out";
      if (!n)
        throw parse_error(line.number, tokens[0].column, "DIRECTIVE_ORDER",
                          "'" + directive + "' before 'omega'", line.text);
      auto& sizes = is_out ? out_sizes : in_sizes;
      if (!sizes.empty())
        throw parse_error(line.number, tokens[0].column, "DUPLICATE_SECTION",
                          "'" + directive + "' already given", line.text);
      detail::expect_token_count(line, tokens, 1 + *n);
      for (std::size_t t = 1; t < tokens.size(); ++t) {
        auto size = static_cast<value_t>(
            detail::parse_uint(line, tokens[t], value_max, directive + " size"));
        if (size < (is_out ? 2u : 1u))
          throw parse_error(line.number, tokens[t].column, "VALUE_OUT_OF_RANGE",
                            directive + std::string(" size must be at least ") +
                                (is_out ? "2" : "1"),
                            line.text);
        sizes.push_back(size);
      }
      if (is_out) {
        auto count = checked_product(out_sizes);
        if (!count)
          throw parse_error(line.number, tokens[0].column, "VALUE_OUT_OF_RANGE",
                            "joint output space does not fit in 64 bits", line.text);
        out_count = *count;
      }
    } else if (directive == "component") {
      if (!n || out_sizes.empty() || in_sizes.empty())
        throw parse_error(line.number, tokens[0].column, "DIRECTIVE_ORDER",
                          "'component' before 'omega', 'out', and 'in'", line.text);
      if (tokens.size() < 2)
        throw parse_error(line.number, tokens[0].column + tokens[0].text.size(),
                          "MISSING_TOKEN", "'component' line needs a party index", line.text);
      auto k = detail::parse_uint(line, tokens[1], *n, "party index");
      if (k == 0)
        throw parse_error(line.number, tokens[1].column, "VALUE_OUT_OF_RANGE",
                          "party index is 1-based", line.text);
      std::size_t party = static_cast<std::size_t>(k) - 1;
      if (tokens.size() < 3 || tokens[2].text != ":")
        throw parse_error(line.number,
                          tokens.size() < 3 ? tokens[1].column + tokens[1].text.size()
                                            : tokens[2].column,
                          "EXPECTED_COLON", "expected ':' after the party index", line.text);
      if (components[party])
        throw parse_error(line.number, tokens[1].column, "DUPLICATE_COMPONENT",
                          "component " + tokens[1].text + " already declared on line " +
                              std::to_string(component_line[party]),
                          line.text);
      std::vector<value_t> table;
      for (std::size_t t = 3; t < tokens.size(); ++t) {
        auto entry = static_cast<value_t>(
            detail::parse_uint(line, tokens[t], value_max, "component entry"));
        if (entry >= in_sizes[party])
          throw parse_error(line.number, tokens[t].column, "VALUE_OUT_OF_RANGE",
                            "entry " + tokens[t].text + " outside input space of size " +
                                std::to_string(in_sizes[party]),
                            line.text);
        table.push_back(entry);
      }
      if (table.size() != *out_count)
        throw parse_error(line.number, tokens[0].column, "LENGTH_MISMATCH",
                          "component " + tokens[1].text + " has " +
                              std::to_string(table.size()) + " entries, expected " +
                              std::to_string(*out_count),
                          line.text);
      components[party] = std::move(table);
      component_line[party] = line.number;
    } else {
      throw parse_error(line.number, tokens[0].column, "UNKNOWN_DIRECTIVE",
                        "unknown directive '" + directive + "'", line.text);
    }
  }

  if (!n)
    throw parse_error(last_line, 1, "MISSING_SECTION", "no 'omega' line", "");
  if (out_sizes.empty())
    throw parse_error(last_line, 1, "MISSING_SECTION", "no 'out' line", "");
  if (in_sizes.empty())
    throw parse_error(last_line, 1, "MISSING_SECTION", "no 'in' line", "");
  std::vector<std::vector<value_t>> tables;
  tables.reserve(*n);
  for (std::size_t k = 0; k < *n; ++k) {
    if (!components[k])
      throw parse_error(last_line, 1, "MISSING_SECTION",
                        "no 'component " + std::to_string(k + 1) + "' line", "");
    tables.push_back(std::move(*components[k]));
  }
  return induced_function(std::move(out_sizes), std::move(in_sizes), std::move(tables));
}

/*! Canonical text: vertices ascending, edges lexicographic, parties
    ascending, mechanisms ascending by vertex, entries in encoded order.
    Parsing the result reproduces the structure exactly. */
inline std::string serialize(const causal_structure& s) {
  std::string out;
  for (vertex_id v : s.graph().vertices())
    out += "vertex " + std::to_string(v) + " " + std::to_string(s.alphabet_size(v)) + "\n";
  for (const vertex_edge& e : s.graph().edges())
    out += "edge " + std::to_string(e.src) + " " + std::to_string(e.dst) + "\n";
  for (vertex_id p : s.parties()) out += "party " + std::to_string(p) + "\n";
  for (const auto& [v, table] : s.mechanisms()) {
    out += "mech " + std::to_string(v) + " :";
    for (value_t entry : table.entries) out += " " + std::to_string(entry);
    out += "\n";
  }
  return out;
}

/*! Canonical text in fixed section order; parsing the result reproduces the
    tables exactly. */
inline std::string serialize(const induced_function& omega) {
  std::string out = "omega " + std::to_string(omega.party_count()) + "\n";
  out += "out";
  for (value_t size : omega.out_sizes()) out += " " + std::to_string(size);
  out += "\nin";
  for (value_t size : omega.in_sizes()) out += " " + std::to_string(size);
  out += "\n";
  for (std::size_t k = 0; k < omega.party_count(); ++k) {
    out += "component " + std::to_string(k + 1) + " :";
    for (value_t entry : omega.components()[k]) out += " " + std::to_string(entry);
    out += "\n";
  }
  return out;
}

} // namespace causaloop
