// This file is part of causaloop.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <algorithm>
#include <chrono>
#include <string>
#include <vector>

#include <causaloop/classify.hpp>

namespace causaloop {

struct verification_failure {
  std::string instance; // the omega / profile / party involved, rendered inline
  std::string expected;
  std::string observed;

  bool operator==(const verification_failure&) const = default;
};

struct verification_report {
  std::string suite;
  std::size_t instances = 0;
  std::vector<verification_failure> failures;
  double elapsed_seconds = 0.0;

  bool passed() const { return failures.empty(); }
};

namespace detail {

inline std::string format_tables(const std::vector<std::vector<value_t>>& tables) {
  std::string s = "[";
  for (std::size_t t = 0; t < tables.size(); ++t) {
    if (t) s += ",";
    s += "[";
    for (std::size_t e = 0; e < tables[t].size(); ++e) {
      if (e) s += ",";
      s += std::to_string(tables[t][e]);
    }
    s += "]";
  }
  return s + "]";
}

inline std::string describe_omega(const induced_function& omega) {
  auto sizes = [](const std::vector<value_t>& v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(v[k]);
    }
    return s + ")";
  };
  return "omega out" + sizes(omega.out_sizes()) + " in" + sizes(omega.in_sizes()) +
         " components" + format_tables(omega.components());
}

inline std::string describe_profile(const intervention_profile& f) {
  std::vector<std::vector<value_t>> tables;
  tables.reserve(f.size());
  for (const auto& part : f) tables.push_back(part.table);
  return "f" + format_tables(tables);
}

inline void require_constant_components(const induced_function& omega) {
  for (std::size_t k = 0; k < omega.party_count(); ++k)
    if (!is_constant_component(omega, k).constant)
      throw error(errc::not_constant_over_own_output,
                  "component " + std::to_string(k + 1) + " reads its own party's output");
}

inline intervention_profile erase_party(const intervention_profile& f, std::size_t k) {
  intervention_profile rest;
  rest.reserve(f.size() - 1);
  for (std::size_t l = 0; l < f.size(); ++l)
    if (l != k) rest.push_back(f[l]);
  return rest;
}

/*! omega_k(f_{\k}(i_{\k})), using constancy of component k to fill the k slot
    with 0. i_rest holds the other parties' inputs in party order. */
inline value_t extend_input(const induced_function& omega, const intervention_profile& f,
                            std::size_t k, std::span<const value_t> i_rest) {
  std::vector<value_t> o_rest(i_rest.size());
  std::size_t pos = 0;
  for (std::size_t l = 0; l < omega.party_count(); ++l) {
    if (l == k) continue;
    o_rest[pos] = f[l].table[i_rest[pos]];
    ++pos;
  }
  auto o_full = insert_at(o_rest, k, 0);
  return omega.component_at(k, encode_tuple(o_full, omega.out_sizes()));
}

class stopwatch {
public:
  stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

} // namespace detail

/*! \brief Check fixed-point preservation under reduction, both directions.

  Every fixed point of omega under f must project (party k removed) to a
  fixed point of the reduced function under f without party k, and every
  reduced fixed point must extend, via i_k = omega_k(f_{\k}(i_{\k})), to a
  fixed point of omega under f. Requires every component constant over its
  own party's output (NOT_CONSTANT_OVER_OWN_OUTPUT otherwise). instances
  counts the points examined.
*/
inline verification_report verify_lemma3(const induced_function& omega,
                                         const intervention_profile& f, std::size_t k) {
  detail::stopwatch clock;
  detail::require_constant_components(omega);
  check_profile_shape(omega, f);
  if (k >= omega.party_count())
    throw error(errc::shape_mismatch, "party index " + std::to_string(k + 1) + " out of range");

  verification_report report;
  report.suite = "lemma3";
  induced_function reduced = reduce(omega, k, f[k]);
  intervention_profile f_rest = detail::erase_party(f, k);
  fixed_point_set full = fixed_points(omega, f);
  fixed_point_set red = fixed_points(reduced, f_rest);
  std::string instance = detail::describe_omega(omega) + " " + detail::describe_profile(f) +
                         " k=" + std::to_string(k + 1);

  for (index_t point : full.points) {
    ++report.instances;
    auto i_full = decode_tuple(point, omega.in_sizes());
    auto i_rest = detail::erase_at(i_full, k);
    index_t projected = encode_tuple(i_rest, reduced.in_sizes());
    if (!red.contains(projected))
      report.failures.push_back({instance,
                                 "projection of fixed point " + std::to_string(point) +
                                     " fixed under the reduced function",
                                 "projection " + std::to_string(projected) + " not fixed"});
  }
  for (index_t point : red.points) {
    ++report.instances;
    auto i_rest = decode_tuple(point, reduced.in_sizes());
    value_t i_k = detail::extend_input(omega, f, k, i_rest);
    auto i_full = detail::insert_at(i_rest, k, i_k);
    index_t extended = encode_tuple(i_full, omega.in_sizes());
    if (!full.contains(extended))
      report.failures.push_back({instance,
                                 "extension of reduced fixed point " + std::to_string(point) +
                                     " fixed under omega",
                                 "extension " + std::to_string(extended) + " not fixed"});
  }
  report.elapsed_seconds = clock.seconds();
  return report;
}

/*! \brief Check that reduction preserves the antinomy kind of one profile.

  With no fixed point under f, every single-party reduction must also have
  none. With at least two, the first two points differ at some position l
  (the smallest is taken) and every reduction by k != l must keep at least
  two. Exactly one fixed point passes vacuously. Requires constant
  components. instances counts the reductions examined.
*/
inline verification_report verify_corollary4(const induced_function& omega,
                                             const intervention_profile& f) {
  detail::stopwatch clock;
  detail::require_constant_components(omega);
  check_profile_shape(omega, f);

  verification_report report;
  report.suite = "corollary4";
  const std::size_t n = omega.party_count();
  fixed_point_set full = fixed_points(omega, f);
  std::string instance = detail::describe_omega(omega) + " " + detail::describe_profile(f);

  if (full.size() == 0) {
    for (std::size_t k = 0; k < n; ++k) {
      ++report.instances;
      induced_function reduced = reduce(omega, k, f[k]);
      fixed_point_set red = fixed_points(reduced, detail::erase_party(f, k));
      if (!red.empty())
        report.failures.push_back(
            {instance + " k=" + std::to_string(k + 1),
             "no fixed point after reducing a profile without fixed points",
             std::to_string(red.size()) + " fixed points"});
    }
  } else if (full.size() >= 2) {
    auto first = decode_tuple(full.points[0], omega.in_sizes());
    auto second = decode_tuple(full.points[1], omega.in_sizes());
    std::size_t l = 0;
    while (l < n && first[l] == second[l]) ++l;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == l) continue;
      ++report.instances;
      induced_function reduced = reduce(omega, k, f[k]);
      fixed_point_set red = fixed_points(reduced, detail::erase_party(f, k));
      if (red.size() < 2)
        report.failures.push_back(
            {instance + " k=" + std::to_string(k + 1),
             "at least two fixed points after reducing away a party the first two points "
             "agree on",
             std::to_string(red.size()) + " fixed points"});
    }
  }
  report.elapsed_seconds = clock.seconds();
  return report;
}

/*! \brief Check that reduction sends process functions to process functions.

  Classifies omega and its reduction by (k, f_k); a process verdict for omega
  together with an antinomic verdict for the reduction is a failure. The
  converse direction is not asserted. Requires constant components;
  CAP_EXCEEDED when either profile space exceeds cap.
*/
inline verification_report verify_transitivity(const induced_function& omega, std::size_t k,
                                               const intervention& f_k,
                                               index_t cap = default_cap) {
  detail::stopwatch clock;
  detail::require_constant_components(omega);

  verification_report report;
  report.suite = "transitivity";
  report.instances = 1;
  induced_function reduced = reduce(omega, k, f_k);
  classification before = classify(omega, cap);
  classification after = classify(reduced, cap);
  if (is_process(before) && !is_process(after)) {
    std::vector<std::vector<value_t>> table{f_k.table};
    report.failures.push_back({detail::describe_omega(omega) +
                                   " k=" + std::to_string(k + 1) + " f_k" +
                                   detail::format_tables(table),
                               "reduction of a process function is a process function",
                               "reduction is antinomic"});
  }
  report.elapsed_seconds = clock.seconds();
  return report;
}

/*! \brief Check the three-way equivalence behind unique fixed points.

  Over the full profile enumeration, "some fixed point for every profile",
  "at most one fixed point for every profile", and "exactly one fixed point
  for every profile" must all agree. CAP_EXCEEDED when the profile space
  exceeds cap. instances is the profile count.
*/
inline verification_report verify_theorem1(const induced_function& omega,
                                           index_t cap = default_cap) {
  detail::stopwatch clock;
  profile_space space(omega);
  index_t count = space.count();
  if (count > cap)
    throw error(errc::cap_exceeded, "profile space has " + std::to_string(count) +
                                        " elements, cap is " + std::to_string(cap));

  verification_report report;
  report.suite = "theorem1";
  report.instances = static_cast<std::size_t>(count);
  detail::sweep_result sweep = detail::sweep_profiles(omega, space, 0, count, nullptr);
  bool all_some = !sweep.first_zero;
  bool all_at_most_one = !sweep.first_multi;
  if (all_some != all_at_most_one) {
    std::string witness =
        sweep.first_zero
            ? "profile " + std::to_string(*sweep.first_zero) + " has no fixed point yet "
              "every profile has at most one"
            : "profile " + std::to_string(*sweep.first_multi) + " has several fixed points "
              "yet every profile has at least one";
    report.failures.push_back({detail::describe_omega(omega),
                               "existence, uniqueness, and exactness all equivalent", witness});
  }
  report.elapsed_seconds = clock.seconds();
  return report;
}

/*! \brief Check that the two antinomies occur together.

  A profile with no fixed point must exist exactly when a profile with at
  least two does, by exhaustive sweep. CAP_EXCEEDED when the profile space
  exceeds cap. instances is the profile count.
*/
inline verification_report verify_equivalence(const induced_function& omega,
                                              index_t cap = default_cap) {
  detail::stopwatch clock;
  profile_space space(omega);
  index_t count = space.count();
  if (count > cap)
    throw error(errc::cap_exceeded, "profile space has " + std::to_string(count) +
                                        " elements, cap is " + std::to_string(cap));

  verification_report report;
  report.suite = "equivalence";
  report.instances = static_cast<std::size_t>(count);
  detail::sweep_result sweep = detail::sweep_profiles(omega, space, 0, count, nullptr);
  bool has_zero = sweep.first_zero.has_value();
  bool has_multi = sweep.first_multi.has_value();
  if (has_zero != has_multi)
    report.failures.push_back(
        {detail::describe_omega(omega),
         "a profile with no fixed point exists exactly when one with several does",
         has_zero ? "profile " + std::to_string(*sweep.first_zero) +
                        " has no fixed point, none has several"
                  : "profile " + std::to_string(*sweep.first_multi) +
                        " has several fixed points, none has zero"});
  report.elapsed_seconds = clock.seconds();
  return report;
}

} // namespace causaloop
