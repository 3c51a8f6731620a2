// This file is part of causaloop.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <causaloop/codec.hpp>
#include <causaloop/structure.hpp>

namespace causaloop {

namespace detail {

inline std::vector<value_t> erase_at(std::span<const value_t> tuple, std::size_t k) {
  std::vector<value_t> result;
  result.reserve(tuple.size() - 1);
  for (std::size_t pos = 0; pos < tuple.size(); ++pos)
    if (pos != k) result.push_back(tuple[pos]);
  return result;
}

inline std::vector<value_t> insert_at(std::span<const value_t> tuple, std::size_t k, value_t v) {
  std::vector<value_t> result;
  result.reserve(tuple.size() + 1);
  for (std::size_t pos = 0; pos < tuple.size(); ++pos) {
    if (pos == k) result.push_back(v);
    result.push_back(tuple[pos]);
  }
  if (k == tuple.size()) result.push_back(v);
  return result;
}

} // namespace detail

/*! \brief The n-party function induced by a causal structure.

  Maps joint party outputs o = (o_1,...,o_n) to joint party inputs. Component
  k is a lookup table over the full joint output domain (all components live
  on the same domain); its entries are encoded parent-value tuples in
  0..in_size(k)-1.

  Party indices are 0-based throughout the library; file formats and the CLI
  surface them 1-based.

  Immutable after construction; the constructor enforces all shape and range
  invariants.
*/
class induced_function {
public:
  induced_function(std::vector<value_t> out_sizes, std::vector<value_t> in_sizes,
                   std::vector<std::vector<value_t>> components,
                   std::shared_ptr<const causal_structure> origin = nullptr)
      : out_sizes_(std::move(out_sizes)),
        in_sizes_(std::move(in_sizes)),
        components_(std::move(components)),
        origin_(std::move(origin)) {
    const std::size_t n = out_sizes_.size();
    if (n == 0)
      throw error(errc::shape_mismatch, "induced function needs at least one party");
    if (in_sizes_.size() != n || components_.size() != n)
      throw error(errc::shape_mismatch,
                  "party count disagrees between out sizes, in sizes, and components");
    for (std::size_t k = 0; k < n; ++k) {
      if (out_sizes_[k] < 2)
        throw error(errc::out_of_range,
                    "output size of party " + std::to_string(k + 1) + " must be at least 2");
      if (in_sizes_[k] < 1)
        throw error(errc::out_of_range,
                    "input size of party " + std::to_string(k + 1) + " must be at least 1");
    }
    out_count_ = tuple_count(out_sizes_);
    in_count_ = tuple_count(in_sizes_);
    for (std::size_t k = 0; k < n; ++k) {
      if (components_[k].size() != out_count_)
        throw error(errc::length_mismatch,
                    "component " + std::to_string(k + 1) + " has " +
                        std::to_string(components_[k].size()) + " entries, expected " +
                        std::to_string(out_count_));
      for (value_t entry : components_[k])
        if (entry >= in_sizes_[k])
          throw error(errc::out_of_range, "component " + std::to_string(k + 1) +
                                              " contains entry " + std::to_string(entry) +
                                              " outside input space of size " +
                                              std::to_string(in_sizes_[k]));
    }
  }

  std::size_t party_count() const { return out_sizes_.size(); }
  const std::vector<value_t>& out_sizes() const { return out_sizes_; }
  const std::vector<value_t>& in_sizes() const { return in_sizes_; }
  index_t out_count() const { return out_count_; }
  index_t in_count() const { return in_count_; }
  const std::vector<std::vector<value_t>>& components() const { return components_; }

  value_t component_at(std::size_t k, index_t out_index) const {
    return components_[k][out_index];
  }

  /*! omega applied to a joint output tuple. */
  std::vector<value_t> apply(std::span<const value_t> out_values) const {
    index_t oidx = encode_tuple(out_values, out_sizes_);
    std::vector<value_t> result(party_count());
    for (std::size_t k = 0; k < party_count(); ++k) result[k] = components_[k][oidx];
    return result;
  }

  std::shared_ptr<const causal_structure> origin() const { return origin_; }

  /*! Table equality; the origin back-reference does not participate. */
  bool operator==(const induced_function& other) const {
    return out_sizes_ == other.out_sizes_ && in_sizes_ == other.in_sizes_ &&
           components_ == other.components_;
  }

private:
  std::vector<value_t> out_sizes_;
  std::vector<value_t> in_sizes_;
  std::vector<std::vector<value_t>> components_;
  std::shared_ptr<const causal_structure> origin_;
  index_t out_count_ = 0;
  index_t in_count_ = 0;
};

/*! One party's intervention: a lookup table from its input space to its
    output space. Position in an intervention_profile names the party. */
struct intervention {
  std::vector<value_t> table;

  bool operator==(const intervention&) const = default;
};

/*! One intervention per party, in party order. */
using intervention_profile = std::vector<intervention>;

/*! Throws SHAPE_MISMATCH unless the profile has one table per party, each of
    length in_size(k) with entries below out_size(k). */
inline void check_profile_shape(const induced_function& omega, const intervention_profile& f) {
  if (f.size() != omega.party_count())
    throw error(errc::shape_mismatch, "profile has " + std::to_string(f.size()) +
                                          " interventions for " +
                                          std::to_string(omega.party_count()) + " parties");
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k].table.size() != omega.in_sizes()[k])
      throw error(errc::shape_mismatch,
                  "intervention of party " + std::to_string(k + 1) + " has table length " +
                      std::to_string(f[k].table.size()) + ", expected " +
                      std::to_string(omega.in_sizes()[k]));
    for (value_t entry : f[k].table)
      if (entry >= omega.out_sizes()[k])
        throw error(errc::shape_mismatch, "intervention of party " + std::to_string(k + 1) +
                                              " maps to " + std::to_string(entry) +
                                              " outside output space of size " +
                                              std::to_string(omega.out_sizes()[k]));
  }
}

/*! \brief Compute the induced function of a validated causal structure.

  For every joint party output, parties are clamped to their output values
  and every non-party vertex is evaluated once along a topological order of
  the cut graph; component k then reads off the encoded tuple of values at
  party k's parents. Components are stored over the full joint output domain.

  Throws INVALID_STRUCTURE if validate(s) reports violations.
*/
inline induced_function induce(const causal_structure& s) {
  validation_report report = validate(s);
  if (!report.ok) {
    std::string detail = "structure fails validation:";
    for (const auto& v : report.violations)
      detail += std::string(" [") + violation_code_name(v.code) + "]";
    throw error(errc::invalid_structure, detail);
  }

  const auto& g = s.graph();
  const auto& parties = s.parties();
  const std::size_t n = parties.size();

  std::map<vertex_id, std::size_t> slot;
  for (vertex_id v : g.vertices()) slot.emplace(v, slot.size());

  std::map<vertex_id, std::vector<vertex_id>> parent_list;
  for (vertex_id v : g.vertices()) parent_list[v] = g.parents(v);

  std::vector<value_t> out_sizes(n), in_sizes(n);
  std::vector<std::vector<value_t>> party_parent_sizes(n);
  for (std::size_t k = 0; k < n; ++k) {
    out_sizes[k] = s.alphabet_size(parties[k]);
    for (vertex_id parent : parent_list[parties[k]])
      party_parent_sizes[k].push_back(s.alphabet_size(parent));
    in_sizes[k] = static_cast<value_t>(tuple_count(party_parent_sizes[k]));
  }

  std::vector<vertex_id> order = topological_order(cut_graph(s));
  index_t out_count = tuple_count(out_sizes);

  std::vector<std::vector<value_t>> components(n);
  for (auto& table : components) table.resize(out_count);

  std::vector<value_t> values(slot.size());
  std::vector<value_t> out_tuple(n, 0);
  index_t oidx = 0;
  do {
    for (std::size_t k = 0; k < n; ++k) values[slot.at(parties[k])] = out_tuple[k];
    for (vertex_id v : order) {
      if (s.is_party(v)) continue;
      const auto& parents = parent_list[v];
      index_t entry = 0;
      for (vertex_id parent : parents)
        entry = entry * s.alphabet_size(parent) + values[slot.at(parent)];
      values[slot.at(v)] = s.mechanisms().at(v).entries[entry];
    }
    for (std::size_t k = 0; k < n; ++k) {
      index_t encoded = 0;
      const auto& parents = parent_list[parties[k]];
      for (std::size_t pos = 0; pos < parents.size(); ++pos)
        encoded = encoded * party_parent_sizes[k][pos] + values[slot.at(parents[pos])];
      components[k][oidx] = static_cast<value_t>(encoded);
    }
    ++oidx;
  } while (next_tuple(out_tuple, out_sizes));

  return induced_function(std::move(out_sizes), std::move(in_sizes), std::move(components),
                          std::make_shared<const causal_structure>(s));
}

struct dependence_set {
  std::size_t party;                   // component index, 0-based
  std::vector<std::size_t> depends_on; // party indices whose output can change the component
};

/*! Parties j such that component k is sensitive to o_j, by exhaustive table scan. */
inline dependence_set compute_dependence(const induced_function& omega, std::size_t k) {
  const auto& sizes = omega.out_sizes();
  const std::size_t n = omega.party_count();
  dependence_set result{k, {}};
  for (std::size_t j = 0; j < n; ++j) {
    auto context_sizes = detail::erase_at(sizes, j);
    std::vector<value_t> context(context_sizes.size(), 0);
    bool sensitive = false;
    do {
      auto base = detail::insert_at(context, j, 0);
      value_t reference = omega.component_at(k, encode_tuple(base, sizes));
      for (value_t v = 1; v < sizes[j] && !sensitive; ++v) {
        auto probe = detail::insert_at(context, j, v);
        if (omega.component_at(k, encode_tuple(probe, sizes)) != reference) sensitive = true;
      }
    } while (!sensitive && next_tuple(context, context_sizes));
    if (sensitive) result.depends_on.push_back(j);
  }
  return result;
}

/*! Result of the constancy check for one component. When the component is not
    constant over its party's own output, (x, y, context) is a witness:
    omega_k(x, context) != omega_k(y, context). */
struct constancy_result {
  bool constant = true;
  value_t x = 0;
  value_t y = 0;
  std::vector<value_t> context; // values for the other parties, in party order
};

/*! \brief Is component k constant over party k's own output?

  Scans contexts in encoded order; the witness, when one exists, is the first
  (context, y) with omega_k(0, context) != omega_k(y, context) and x fixed to
  the smallest output value of the first differing pair.
*/
inline constancy_result is_constant_component(const induced_function& omega, std::size_t k) {
  const auto& sizes = omega.out_sizes();
  auto context_sizes = detail::erase_at(sizes, k);
  std::vector<value_t> context(context_sizes.size(), 0);
  do {
    auto base = detail::insert_at(context, k, 0);
    value_t reference = omega.component_at(k, encode_tuple(base, sizes));
    for (value_t v = 1; v < sizes[k]; ++v) {
      auto probe = detail::insert_at(context, k, v);
      if (omega.component_at(k, encode_tuple(probe, sizes)) != reference)
        return {false, 0, v, context};
    }
  } while (next_tuple(context, context_sizes));
  return {};
}

/*! \brief Swallow party k under a fixed intervention f_k.

  Builds the (n-1)-party function with components
  l != k: o_{\k} -> omega_l(o_{\k}, f_k(omega_k(o_{\k}))), party order
  preserved with k removed. Requires component k constant over party k's own
  output (NOT_CONSTANT_OVER_OWN_OUTPUT otherwise) and n >= 2 (ARITY).
  The result carries no origin structure.
*/
inline induced_function reduce(const induced_function& omega, std::size_t k,
                               const intervention& f_k) {
  const std::size_t n = omega.party_count();
  if (n < 2)
    throw error(errc::arity, "reduction needs at least 2 parties");
  if (k >= n)
    throw error(errc::shape_mismatch, "party index " + std::to_string(k + 1) + " out of range");
  if (f_k.table.size() != omega.in_sizes()[k])
    throw error(errc::shape_mismatch, "intervention table length " +
                                          std::to_string(f_k.table.size()) + ", expected " +
                                          std::to_string(omega.in_sizes()[k]));
  for (value_t entry : f_k.table)
    if (entry >= omega.out_sizes()[k])
      throw error(errc::shape_mismatch, "intervention entry " + std::to_string(entry) +
                                            " outside output space of party " +
                                            std::to_string(k + 1));
  constancy_result constancy = is_constant_component(omega, k);
  if (!constancy.constant)
    throw error(errc::not_constant_over_own_output,
                "component " + std::to_string(k + 1) + " reads its own party's output");

  const auto& sizes = omega.out_sizes();
  auto reduced_out = detail::erase_at(sizes, k);
  auto reduced_in = detail::erase_at(omega.in_sizes(), k);
  index_t reduced_count = tuple_count(reduced_out);

  std::vector<std::vector<value_t>> reduced_components(n - 1);
  for (auto& table : reduced_components) table.resize(reduced_count);

  std::vector<value_t> context(reduced_out.size(), 0);
  index_t ridx = 0;
  do {
    auto base = detail::insert_at(context, k, 0);
    value_t i_k = omega.component_at(k, encode_tuple(base, sizes));
    value_t o_k = f_k.table[i_k];
    auto full = detail::insert_at(context, k, o_k);
    index_t full_idx = encode_tuple(full, sizes);
    std::size_t out_pos = 0;
    for (std::size_t l = 0; l < n; ++l) {
      if (l == k) continue;
      reduced_components[out_pos++][ridx] = omega.component_at(l, full_idx);
    }
    ++ridx;
  } while (next_tuple(context, reduced_out));

  return induced_function(std::move(reduced_out), std::move(reduced_in),
                          std::move(reduced_components));
}

} // namespace causaloop
