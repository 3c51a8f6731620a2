// This file is part of causaloop.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <string>
#include <vector>

#include <causaloop/census.hpp>
#include <causaloop/classify.hpp>
#include <causaloop/sample.hpp>
#include <causaloop/verify.hpp>

namespace causaloop {

/*! Knobs for the named suites. out_sizes empty means one bit per party;
    in_sizes empty means the out sizes. corollary2 uses its own size list,
    lemma1's sampled half uses seed and sample_count, and the spaces of the
    others follow parties / sizes / unrestricted. */
struct suite_options {
  index_t cap = default_cap;
  std::uint64_t seed = 0;
  std::size_t sample_count = 10000;
  std::size_t parties = 2;
  std::vector<value_t> out_sizes;
  std::vector<value_t> in_sizes;
  bool unrestricted = false;
  std::vector<value_t> corollary2_sizes = {2, 3, 4};
};

namespace detail {

inline space_spec suite_space(const suite_options& options) {
  space_spec spec;
  spec.out_sizes = options.out_sizes.empty() ? std::vector<value_t>(options.parties, 2)
                                             : options.out_sizes;
  spec.in_sizes = options.in_sizes.empty() ? spec.out_sizes : options.in_sizes;
  spec.restrict_constant_components = !options.unrestricted;
  return spec;
}

inline void merge_failures(verification_report& into, const verification_report& from) {
  into.failures.insert(into.failures.end(), from.failures.begin(), from.failures.end());
}

/*! All tables I_k -> O_k for one party, in canonical (mixed-radix) order. */
inline std::vector<intervention> all_interventions(value_t out_size, value_t in_size) {
  std::vector<intervention> tables;
  std::vector<value_t> digits(in_size, 0);
  std::vector<value_t> radices(in_size, out_size);
  do {
    tables.push_back(intervention{digits});
  } while (next_tuple(digits, radices));
  return tables;
}

} // namespace detail

/*! \brief Run one named verification suite and aggregate its failures.

  Names and what they check:
    lemma1       process tables have constant components (exhaustive over
                 2-party-bit tables), and the two proof constructions verify
                 on every non-constancy witness in a seeded random sample.
    corollary2   single-party tables are process functions exactly when
                 constant, for |O| = |I| in corollary2_sizes.
    lemma3       fixed-point preservation under reduction, both directions,
                 over the suite space, every profile, every party.
    corollary4   reduction preserves zero and several fixed points per
                 profile, over the suite space and every profile.
    transitivity reductions of process tables stay process, over the suite
                 space, every party, every intervention of that party.
    theorem1     existence, uniqueness, exactness of fixed points agree per
                 table, over the suite space.
    equivalence  zero-fixed-point and several-fixed-point profiles occur
                 together per table, over the suite space.
  instances counts tables for lemma1/corollary2/theorem1/equivalence and
  (table, profile[, party]) combinations for the reduction suites.
*/
inline verification_report run_suite(const std::string& name,
                                     const suite_options& options = {}) {
  detail::stopwatch clock;
  verification_report report;
  report.suite = name;

  if (name == "lemma1") {
    function_space fs(space_spec{{2, 2}, {2, 2}, false});
    for (index_t idx = 0; idx < fs.count(); ++idx) {
      ++report.instances;
      induced_function omega = fs.at(idx);
      classification c = classify(omega, options.cap);
      if (!is_process(c)) continue;
      for (std::size_t k = 0; k < omega.party_count(); ++k)
        if (!is_constant_component(omega, k).constant)
          report.failures.push_back({detail::describe_omega(omega),
                                     "process table has only constant components",
                                     "component " + std::to_string(k + 1) +
                                         " reads its own party's output"});
    }
    sampler s(options.seed);
    for (std::size_t trial = 0; trial < options.sample_count; ++trial) {
      ++report.instances;
      induced_function omega = random_omega(s);
      for (std::size_t k = 0; k < omega.party_count(); ++k) {
        constancy_result c = is_constant_component(omega, k);
        if (c.constant) continue;
        try {
          witness_lemma1(omega, k, c.x, c.y, c.context);
        } catch (const std::exception& e) {
          report.failures.push_back({detail::describe_omega(omega) +
                                         " k=" + std::to_string(k + 1),
                                     "constructed witness profiles verify", e.what()});
        }
      }
    }
  } else if (name == "corollary2") {
    for (value_t size : options.corollary2_sizes) {
      function_space fs(space_spec{{size}, {size}, false});
      for (index_t idx = 0; idx < fs.count(); ++idx) {
        ++report.instances;
        induced_function omega = fs.at(idx);
        const auto& table = omega.components()[0];
        bool constant = std::all_of(table.begin(), table.end(),
                                    [&](value_t e) { return e == table[0]; });
        try {
          bool process = is_process(classify(omega, options.cap));
          if (process != constant)
            report.failures.push_back({detail::describe_omega(omega),
                                       constant ? "constant table classifies process"
                                                : "non-constant table classifies antinomic",
                                       process ? "process" : "antinomic"});
        } catch (const error& e) {
          if (e.code() != errc::theorem_violation) throw;
          report.failures.push_back({detail::describe_omega(omega),
                                     "classification reaches a verdict", e.what()});
        }
      }
    }
  } else if (name == "lemma3" || name == "corollary4") {
    function_space fs(detail::suite_space(options));
    for (index_t idx = 0; idx < fs.count(); ++idx) {
      induced_function omega = fs.at(idx);
      profile_space ps(omega);
      for (index_t p = 0; p < ps.count(); ++p) {
        intervention_profile f = ps.at(p);
        if (name == "lemma3") {
          for (std::size_t k = 0; k < omega.party_count(); ++k) {
            ++report.instances;
            detail::merge_failures(report, verify_lemma3(omega, f, k));
          }
        } else {
          ++report.instances;
          detail::merge_failures(report, verify_corollary4(omega, f));
        }
      }
    }
  } else if (name == "transitivity") {
    function_space fs(detail::suite_space(options));
    for (index_t idx = 0; idx < fs.count(); ++idx) {
      induced_function omega = fs.at(idx);
      if (!is_process(classify(omega, options.cap))) continue;
      for (std::size_t k = 0; k < omega.party_count(); ++k) {
        auto tables = detail::all_interventions(omega.out_sizes()[k], omega.in_sizes()[k]);
        for (const intervention& f_k : tables) {
          ++report.instances;
          detail::merge_failures(report, verify_transitivity(omega, k, f_k, options.cap));
        }
      }
    }
  } else if (name == "theorem1" || name == "equivalence") {
    function_space fs(detail::suite_space(options));
    for (index_t idx = 0; idx < fs.count(); ++idx) {
      ++report.instances;
      induced_function omega = fs.at(idx);
      detail::merge_failures(report, name == "theorem1"
                                         ? verify_theorem1(omega, options.cap)
                                         : verify_equivalence(omega, options.cap));
    }
  } else {
    throw error(errc::out_of_range, "unknown suite '" + name + "'");
  }

  report.elapsed_seconds = clock.seconds();
  return report;
}

/*! The suite names run_suite accepts, in documentation order. */
inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "lemma1", "corollary2", "lemma3", "corollary4", "transitivity", "theorem1",
      "equivalence"};
  return names;
}

} // namespace causaloop
