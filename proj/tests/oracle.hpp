// This file is part of causaloop.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

// Naive reference implementations the tests check the library against. Joint
// spaces are enumerated recursively as explicit tuples, lookups scan the
// enumeration for a matching tuple instead of computing a mixed-radix index,
// and induced functions are obtained by sweeping mechanisms to quiescence
// rather than by topological evaluation. Nothing here calls into the
// library's codec, classification, or census code.

#include <causaloop/induced.hpp>
#include <causaloop/structure.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace oracle {

using causaloop::value_t;

using tuple = std::vector<value_t>;
using tuple_list = std::vector<tuple>;

inline void collect_tuples(const std::vector<value_t>& sizes, std::size_t pos, tuple& prefix,
                           tuple_list& out) {
  if (pos == sizes.size()) {
    out.push_back(prefix);
    return;
  }
  for (value_t v = 0; v < sizes[pos]; ++v) {
    prefix.push_back(v);
    collect_tuples(sizes, pos + 1, prefix, out);
    prefix.pop_back();
  }
}

/*! Every tuple over the given sizes, leftmost position varying slowest. */
inline tuple_list all_tuples(const std::vector<value_t>& sizes) {
  tuple_list out;
  tuple prefix;
  collect_tuples(sizes, 0, prefix, out);
  return out;
}

/*! Position of a tuple in its enumeration, by linear scan. */
inline std::size_t position_of(const tuple_list& tuples, const tuple& t) {
  for (std::size_t i = 0; i < tuples.size(); ++i)
    if (tuples[i] == t) return i;
  throw std::logic_error("tuple missing from enumeration");
}

/*! A multiparty function as plain tables: components[k][p] is the value of
    component k at the p-th joint output tuple. */
struct table_function {
  std::vector<value_t> out_sizes;
  std::vector<value_t> in_sizes;
  std::vector<std::vector<value_t>> components;
};

inline table_function from_library(const causaloop::induced_function& omega) {
  return {omega.out_sizes(), omega.in_sizes(), omega.components()};
}

/*! An intervention profile as plain tables: profile[k][i] is party k's output
    on input value i. */
using profile = std::vector<std::vector<value_t>>;

/*! All fixed inputs i = omega(f(i)) of omega under the profile, as tuples in
    enumeration order. */
inline tuple_list fixed_points(const table_function& omega, const profile& f) {
  tuple_list inputs = all_tuples(omega.in_sizes);
  tuple_list outputs = all_tuples(omega.out_sizes);
  tuple_list fixed;
  for (const tuple& i : inputs) {
    tuple o(i.size());
    for (std::size_t k = 0; k < i.size(); ++k) o[k] = f[k][i[k]];
    std::size_t pos = position_of(outputs, o);
    tuple j(i.size());
    for (std::size_t k = 0; k < i.size(); ++k) j[k] = omega.components[k][pos];
    if (j == i) fixed.push_back(i);
  }
  return fixed;
}

inline void collect_profiles(const table_function& omega, std::size_t k, profile& prefix,
                             std::vector<profile>& out) {
  if (k == omega.out_sizes.size()) {
    out.push_back(prefix);
    return;
  }
  std::vector<value_t> table_sizes(omega.in_sizes[k], omega.out_sizes[k]);
  for (const tuple& table : all_tuples(table_sizes)) {
    prefix.push_back(table);
    collect_profiles(omega, k + 1, prefix, out);
    prefix.pop_back();
  }
}

/*! Every intervention profile, ordered lexicographically by the concatenation
    of the party tables (party 1 first). */
inline std::vector<profile> all_profiles(const table_function& omega) {
  std::vector<profile> out;
  profile prefix;
  collect_profiles(omega, 0, prefix, out);
  return out;
}

struct verdict {
  bool process = true;
  std::optional<std::size_t> first_zero;
  std::optional<std::size_t> first_multi;
  tuple point_a;
  tuple point_b;
};

/*! Scan every profile in order, recording the first with no fixed point and
    the first with at least two (plus its first two points). */
inline verdict classify(const table_function& omega) {
  verdict v;
  std::vector<profile> profiles = all_profiles(omega);
  for (std::size_t p = 0; p < profiles.size(); ++p) {
    tuple_list fixed = fixed_points(omega, profiles[p]);
    if (fixed.empty() && !v.first_zero) v.first_zero = p;
    if (fixed.size() >= 2 && !v.first_multi) {
      v.first_multi = p;
      v.point_a = fixed[0];
      v.point_b = fixed[1];
    }
    if (v.first_zero && v.first_multi) break;
  }
  v.process = !v.first_zero && !v.first_multi;
  return v;
}

/*! Induced function computed by clamping each joint party output and sweeping
    every non-party mechanism until values stop changing. */
inline table_function induce(const causaloop::causal_structure& s) {
  const auto& g = s.graph();
  const std::vector<causaloop::vertex_id>& parties = s.parties();

  std::vector<std::vector<causaloop::vertex_id>> parent_sets(g.vertices().size());
  auto slot = [&](causaloop::vertex_id v) {
    for (std::size_t i = 0; i < g.vertices().size(); ++i)
      if (g.vertices()[i] == v) return i;
    throw std::logic_error("vertex missing from graph");
  };
  for (const causaloop::vertex_edge& e : g.edges()) parent_sets[slot(e.dst)].push_back(e.src);
  for (auto& parents : parent_sets) std::sort(parents.begin(), parents.end());

  table_function result;
  std::vector<value_t> party_sizes;
  std::vector<tuple_list> parent_spaces;
  for (causaloop::vertex_id p : parties) {
    party_sizes.push_back(s.alphabet_size(p));
    std::vector<value_t> parent_sizes;
    for (causaloop::vertex_id u : parent_sets[slot(p)]) parent_sizes.push_back(s.alphabet_size(u));
    parent_spaces.push_back(all_tuples(parent_sizes));
  }
  result.out_sizes = party_sizes;
  for (const tuple_list& space : parent_spaces)
    result.in_sizes.push_back(static_cast<value_t>(space.size()));
  result.components.resize(parties.size());

  for (const tuple& o : all_tuples(party_sizes)) {
    std::vector<value_t> values(g.vertices().size(), 0);
    for (std::size_t k = 0; k < parties.size(); ++k) values[slot(parties[k])] = o[k];
    for (std::size_t sweep = 0; sweep < g.vertices().size(); ++sweep) {
      for (std::size_t i = 0; i < g.vertices().size(); ++i) {
        causaloop::vertex_id v = g.vertices()[i];
        if (s.is_party(v)) continue;
        const std::vector<value_t>& entries = s.mechanisms().at(v).entries;
        std::size_t index = 0;
        for (causaloop::vertex_id u : parent_sets[i])
          index = index * s.alphabet_size(u) + values[slot(u)];
        values[i] = entries.at(index);
      }
    }
    for (std::size_t k = 0; k < parties.size(); ++k) {
      tuple parent_values;
      for (causaloop::vertex_id u : parent_sets[slot(parties[k])])
        parent_values.push_back(values[slot(u)]);
      result.components[k].push_back(
          static_cast<value_t>(position_of(parent_spaces[k], parent_values)));
    }
  }
  return result;
}

inline void collect_component_tables(const std::vector<value_t>& out_sizes, value_t in_size,
                                     bool constant_components, std::size_t k,
                                     std::vector<std::vector<value_t>>& out) {
  tuple_list domain;
  if (constant_components) {
    std::vector<value_t> context_sizes;
    for (std::size_t j = 0; j < out_sizes.size(); ++j)
      if (j != k) context_sizes.push_back(out_sizes[j]);
    domain = all_tuples(context_sizes);
  } else {
    domain = all_tuples(out_sizes);
  }
  std::vector<value_t> entry_sizes(domain.size(), in_size);
  for (const tuple& entries : all_tuples(entry_sizes)) {
    if (constant_components) {
      std::vector<value_t> full;
      for (const tuple& o : all_tuples(out_sizes)) {
        tuple context;
        for (std::size_t j = 0; j < o.size(); ++j)
          if (j != k) context.push_back(o[j]);
        full.push_back(entries[position_of(domain, context)]);
      }
      out.push_back(full);
    } else {
      out.push_back(entries);
    }
  }
}

struct census_result {
  std::size_t total = 0;
  std::size_t process = 0;
  std::size_t antinomic = 0;
  std::size_t one_sided = 0;
  std::vector<bool> process_flags; // by table position in enumeration order
};

/*! Classify every table in the space by brute force. Table positions follow
    the party-major enumeration of component tables. */
inline census_result census(const std::vector<value_t>& out_sizes,
                            const std::vector<value_t>& in_sizes, bool constant_components) {
  std::vector<std::vector<std::vector<value_t>>> per_party(out_sizes.size());
  for (std::size_t k = 0; k < out_sizes.size(); ++k)
    collect_component_tables(out_sizes, in_sizes[k], constant_components, k, per_party[k]);

  table_function omega;
  omega.out_sizes = out_sizes;
  omega.in_sizes = in_sizes;
  omega.components.resize(out_sizes.size());

  std::vector<profile> profiles;
  {
    profile prefix;
    collect_profiles(omega, 0, prefix, profiles);
  }
  tuple_list inputs = all_tuples(in_sizes);
  tuple_list outputs = all_tuples(out_sizes);
  std::vector<std::vector<std::size_t>> output_position(profiles.size());
  for (std::size_t p = 0; p < profiles.size(); ++p) {
    for (const tuple& i : inputs) {
      tuple o(i.size());
      for (std::size_t k = 0; k < i.size(); ++k) o[k] = profiles[p][k][i[k]];
      output_position[p].push_back(position_of(outputs, o));
    }
  }

  census_result result;
  std::vector<std::size_t> pick(out_sizes.size(), 0);
  for (;;) {
    for (std::size_t k = 0; k < out_sizes.size(); ++k)
      omega.components[k] = per_party[k][pick[k]];
    bool zero = false, multi = false;
    for (std::size_t p = 0; p < profiles.size(); ++p) {
      std::size_t hits = 0;
      for (std::size_t t = 0; t < inputs.size(); ++t) {
        std::size_t pos = output_position[p][t];
        bool fixed = true;
        for (std::size_t k = 0; k < inputs[t].size() && fixed; ++k)
          fixed = omega.components[k][pos] == inputs[t][k];
        if (fixed) ++hits;
      }
      if (hits == 0) zero = true;
      if (hits >= 2) multi = true;
      if (zero && multi) break;
    }
    ++result.total;
    if (!zero && !multi) ++result.process;
    else ++result.antinomic;
    if (zero != multi) ++result.one_sided;
    result.process_flags.push_back(!zero && !multi);

    std::size_t k = out_sizes.size();
    while (k-- > 0) {
      if (++pick[k] < per_party[k].size()) break;
      pick[k] = 0;
      if (k == 0) return result;
    }
  }
}

} // namespace oracle
