// This file is part of causaloop.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <optional>
#include <stdexcept>
#include <thread>
#include <variant>
#include <vector>

#include <causaloop/fixed_point.hpp>

namespace causaloop {

/*! Default bound on exhaustive enumeration sizes. */
inline constexpr index_t default_cap = index_t{1} << 24;

/*! Fixed-point tables above this profile count are not materialized. */
inline constexpr index_t fixed_point_index_limit = index_t{1} << 16;

/*! Every intervention profile admits exactly one fixed point. When the
    profile space is at most fixed_point_index_limit, fixed_point_index lists
    the encoded fixed point of every profile in canonical profile order;
    otherwise it is left empty. */
struct process_verdict {
  std::vector<index_t> fixed_point_index;

  bool operator==(const process_verdict&) const = default;
};

/*! Witnesses for both antinomies: a profile with no fixed point and a
    profile with the two distinct fixed points point_a and point_b (encoded
    joint inputs). Indices locate the profiles in canonical order and are
    absent when that order is not representable in 64 bits. */
struct antinomic_verdict {
  std::optional<index_t> grandfather_index;
  intervention_profile grandfather;
  std::optional<index_t> information_index;
  intervention_profile information;
  index_t point_a = 0;
  index_t point_b = 0;

  bool operator==(const antinomic_verdict&) const = default;
};

using classification = std::variant<process_verdict, antinomic_verdict>;

inline bool is_process(const classification& c) {
  return std::holds_alternative<process_verdict>(c);
}

namespace detail {

/*! Split [0, count) into at most workers contiguous ranges, empty ones
    dropped, longer ranges first. */
inline std::vector<std::pair<index_t, index_t>> partition_ranges(index_t count,
                                                                 unsigned workers) {
  if (workers == 0) workers = 1;
  std::vector<std::pair<index_t, index_t>> ranges;
  index_t chunk = count / workers;
  index_t rest = count % workers;
  index_t begin = 0;
  for (unsigned w = 0; w < workers && begin < count; ++w) {
    index_t len = chunk + (w < rest ? 1 : 0);
    if (len == 0) break;
    ranges.emplace_back(begin, begin + len);
    begin += len;
  }
  return ranges;
}

struct sweep_result {
  std::optional<index_t> first_zero;
  std::optional<index_t> first_multi;
  index_t multi_a = 0;
  index_t multi_b = 0;
  bool complete = true;

  void merge(const sweep_result& other) {
    if (other.first_zero && (!first_zero || *other.first_zero < *first_zero))
      first_zero = other.first_zero;
    if (other.first_multi && (!first_multi || *other.first_multi < *first_multi)) {
      first_multi = other.first_multi;
      multi_a = other.multi_a;
      multi_b = other.multi_b;
    }
    complete = complete && other.complete;
  }
};

/*! Scan profiles [begin, end) in canonical order for the first with zero
    fixed points and the first with at least two, stopping early once both
    are in hand. When fp_index is non-null its slice [begin, end) receives
    each profile's unique fixed point, valid only if neither witness was
    found. */
inline sweep_result sweep_profiles(const induced_function& omega, const profile_space& space,
                                   index_t begin, index_t end,
                                   std::vector<index_t>* fp_index) {
  sweep_result result;
  std::vector<value_t> digits = space.digits_at(begin);
  std::span<const std::size_t> offsets = space.offsets();
  for (index_t p = begin; p < end; ++p) {
    index_t first = 0, second = 0;
    std::size_t found =
        count_fixed_points_flat(omega, digits, offsets, 2, &first, &second);
    if (found == 0 && !result.first_zero) result.first_zero = p;
    if (found >= 2 && !result.first_multi) {
      result.first_multi = p;
      result.multi_a = first;
      result.multi_b = second;
    }
    if (found == 1 && fp_index) (*fp_index)[p] = first;
    if (result.first_zero && result.first_multi) {
      result.complete = p + 1 == end;
      return result;
    }
    next_tuple(digits, space.radices());
  }
  return result;
}

/*! Run sweep_profiles over the whole space, split across workers. The merge
    is by smallest profile index, so the outcome does not depend on the
    worker count. */
inline sweep_result sweep_all(const induced_function& omega, const profile_space& space,
                              unsigned workers, std::vector<index_t>* fp_index) {
  index_t count = space.count();
  auto ranges = partition_ranges(count, workers);
  if (ranges.size() <= 1) {
    return sweep_profiles(omega, space, 0, count, fp_index);
  }
  std::vector<sweep_result> partial(ranges.size());
  std::vector<std::thread> pool;
  pool.reserve(ranges.size());
  for (std::size_t w = 0; w < ranges.size(); ++w)
    pool.emplace_back([&, w] {
      partial[w] =
          sweep_profiles(omega, space, ranges[w].first, ranges[w].second, fp_index);
    });
  for (auto& t : pool) t.join();
  sweep_result result;
  for (const auto& r : partial) result.merge(r);
  return result;
}

} // namespace detail

/*! \brief The proof constructions attached to a non-constancy witness.

  Given omega_k(x, context) != omega_k(y, context), every other party is held
  at its context value and party k plays back either the opposite of what it
  heard (no fixed point remains) or an echo of it (both omega(x, context) and
  omega(y, context) become fixed points).
*/
struct lemma1_witness {
  intervention_profile grandfather;
  intervention_profile information;
  std::optional<index_t> grandfather_index;
  std::optional<index_t> information_index;
  index_t point_a = 0; // omega(x, context), encoded
  index_t point_b = 0; // omega(y, context), encoded
};

/*! Build both witness profiles from a non-constancy witness for component k.
    context holds the other parties' outputs in party order. Throws
    NOT_A_NONCONSTANCY_WITNESS when omega_k(x, context) == omega_k(y, context)
    and SHAPE_MISMATCH / OUT_OF_RANGE on malformed arguments. The constructed
    profiles are re-checked against their defining property; a failure there
    is a logic_error. */
inline lemma1_witness witness_lemma1(const induced_function& omega, std::size_t k, value_t x,
                                     value_t y, std::span<const value_t> context) {
  const std::size_t n = omega.party_count();
  if (k >= n)
    throw error(errc::shape_mismatch, "party index " + std::to_string(k + 1) + " out of range");
  if (context.size() != n - 1)
    throw error(errc::shape_mismatch, "context has " + std::to_string(context.size()) +
                                          " entries, expected " + std::to_string(n - 1));
  const auto& out_sizes = omega.out_sizes();
  if (x >= out_sizes[k] || y >= out_sizes[k])
    throw error(errc::out_of_range, "witness outputs exceed the party's output space");
  {
    std::size_t pos = 0;
    for (std::size_t l = 0; l < n; ++l) {
      if (l == k) continue;
      if (context[pos] >= out_sizes[l])
        throw error(errc::out_of_range,
                    "context entry for party " + std::to_string(l + 1) + " out of range");
      ++pos;
    }
  }

  auto full_x = detail::insert_at(context, k, x);
  auto full_y = detail::insert_at(context, k, y);
  index_t xidx = encode_tuple(full_x, out_sizes);
  index_t yidx = encode_tuple(full_y, out_sizes);
  value_t a = omega.component_at(k, xidx);
  value_t b = omega.component_at(k, yidx);
  if (a == b)
    throw error(errc::not_a_nonconstancy_witness,
                "component " + std::to_string(k + 1) + " agrees on both outputs");

  lemma1_witness w;
  w.grandfather.resize(n);
  w.information.resize(n);
  std::size_t pos = 0;
  for (std::size_t l = 0; l < n; ++l) {
    if (l == k) {
      w.grandfather[l].table.resize(omega.in_sizes()[k]);
      w.information[l].table.resize(omega.in_sizes()[k]);
      for (value_t z = 0; z < omega.in_sizes()[k]; ++z) {
        w.grandfather[l].table[z] = (z == a) ? y : x;
        w.information[l].table[z] = (z == a) ? x : y;
      }
    } else {
      w.grandfather[l].table.assign(omega.in_sizes()[l], context[pos]);
      w.information[l].table = w.grandfather[l].table;
      ++pos;
    }
  }

  std::vector<value_t> point_a(n), point_b(n);
  for (std::size_t l = 0; l < n; ++l) {
    point_a[l] = omega.component_at(l, xidx);
    point_b[l] = omega.component_at(l, yidx);
  }
  w.point_a = encode_tuple(point_a, omega.in_sizes());
  w.point_b = encode_tuple(point_b, omega.in_sizes());

  if (!fixed_points(omega, w.grandfather).empty())
    throw std::logic_error("grandfather construction left a fixed point");
  fixed_point_set info = fixed_points(omega, w.information);
  if (!info.contains(w.point_a) || !info.contains(w.point_b) || w.point_a == w.point_b)
    throw std::logic_error("information construction lost its fixed point pair");

  profile_space space(omega);
  try {
    std::vector<value_t> digits;
    digits.reserve(space.digit_count());
    for (const auto& part : w.grandfather)
      digits.insert(digits.end(), part.table.begin(), part.table.end());
    w.grandfather_index = space.index_of(digits);
    digits.clear();
    for (const auto& part : w.information)
      digits.insert(digits.end(), part.table.begin(), part.table.end());
    w.information_index = space.index_of(digits);
  } catch (const error& e) {
    if (e.code() != errc::cap_exceeded) throw;
  }
  return w;
}

/*! \brief Exhaustive classification of an induced function.

  Sweeps all intervention profiles in canonical order across the given number
  of workers. A function is a process function when every profile has exactly
  one fixed point; otherwise the sweep yields the smallest-index profile with
  no fixed point and the smallest-index profile with several, and both must
  exist (a one-sided outcome is a THEOREM_VIOLATION). CAP_EXCEEDED when the
  profile space is larger than cap.
*/
inline classification classify(const induced_function& omega, index_t cap = default_cap,
                               unsigned workers = 1) {
  profile_space space(omega);
  index_t count = space.count();
  if (count > cap)
    throw error(errc::cap_exceeded, "profile space has " + std::to_string(count) +
                                        " elements, cap is " + std::to_string(cap));
  std::vector<index_t> fp_index;
  std::vector<index_t>* collect = nullptr;
  if (count <= fixed_point_index_limit) {
    fp_index.resize(count);
    collect = &fp_index;
  }
  detail::sweep_result sweep = detail::sweep_all(omega, space, workers, collect);
  if (!sweep.first_zero && !sweep.first_multi)
    return process_verdict{std::move(fp_index)};
  if (sweep.first_zero && sweep.first_multi) {
    antinomic_verdict v;
    v.grandfather_index = *sweep.first_zero;
    v.grandfather = space.at(*sweep.first_zero);
    v.information_index = *sweep.first_multi;
    v.information = space.at(*sweep.first_multi);
    v.point_a = sweep.multi_a;
    v.point_b = sweep.multi_b;
    return v;
  }
  throw error(errc::theorem_violation,
              sweep.first_zero
                  ? "profile without fixed points exists but none with several"
                  : "profile with several fixed points exists but none without");
}

/*! \brief Find antinomy witnesses without a full sweep when possible.

  When some component is not constant over its own party's output, the
  witnesses come from witness_lemma1 applied to the first such component's
  first non-constancy witness; the cap is not consulted on this path. When
  every component passes the constancy check, falls back to the exhaustive
  sweep, which yields either a process verdict or the smallest-index witness
  pair.
*/
inline classification witness_search(const induced_function& omega,
                                     index_t cap = default_cap) {
  for (std::size_t k = 0; k < omega.party_count(); ++k) {
    constancy_result c = is_constant_component(omega, k);
    if (!c.constant) {
      lemma1_witness w = witness_lemma1(omega, k, c.x, c.y, c.context);
      antinomic_verdict v;
      v.grandfather_index = w.grandfather_index;
      v.grandfather = std::move(w.grandfather);
      v.information_index = w.information_index;
      v.information = std::move(w.information);
      v.point_a = w.point_a;
      v.point_b = w.point_b;
      return v;
    }
  }
  return classify(omega, cap, 1);
}

} // namespace causaloop
