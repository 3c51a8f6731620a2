// This file is part of causaloop.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <optional>
#include <thread>
#include <vector>

#include <causaloop/classify.hpp>
#include <causaloop/verify.hpp>

namespace causaloop {

/*! The parameter space of a census: per-party sizes plus the choice between
    all component tables and only those constant over their own party's
    output. */
struct space_spec {
  std::vector<value_t> out_sizes;
  std::vector<value_t> in_sizes;
  bool restrict_constant_components = true;

  bool operator==(const space_spec&) const = default;
};

/*! \brief The canonical enumeration of induced-function tables.

  A table flattens to its concatenated component tables in party order,
  entries in encoded-domain order, and tables are numbered by reading that
  digit vector as a mixed-radix numeral (digit radix |I_k|, leftmost most
  significant). In restricted mode component k is indexed by the other
  parties' outputs alone and broadcast over the party's own output, which
  enumerates exactly the tables constant over it.
*/
class function_space {
public:
  explicit function_space(space_spec spec) : spec_(std::move(spec)) {
    const std::size_t n = spec_.out_sizes.size();
    if (spec_.in_sizes.size() != n || n == 0)
      throw error(errc::shape_mismatch, "space needs matching nonempty size lists");
    for (std::size_t k = 0; k < n; ++k) {
      if (spec_.out_sizes[k] < 2)
        throw error(errc::out_of_range,
                    "output size of party " + std::to_string(k + 1) + " must be at least 2");
      if (spec_.in_sizes[k] < 1)
        throw error(errc::out_of_range,
                    "input size of party " + std::to_string(k + 1) + " must be at least 1");
    }
    out_count_ = tuple_count(spec_.out_sizes);
    offsets_.resize(n);
    std::size_t offset = 0;
    for (std::size_t k = 0; k < n; ++k) {
      index_t entries = out_count_;
      if (spec_.restrict_constant_components) entries /= spec_.out_sizes[k];
      offsets_[k] = offset;
      offset += static_cast<std::size_t>(entries);
      for (index_t e = 0; e < entries; ++e) radices_.push_back(spec_.in_sizes[k]);
    }
    count_ = checked_product(radices_);
    if (spec_.restrict_constant_components) {
      context_index_.assign(n, std::vector<std::size_t>(static_cast<std::size_t>(out_count_)));
      std::vector<value_t> o_tuple(n, 0);
      index_t oidx = 0;
      do {
        for (std::size_t k = 0; k < n; ++k) {
          auto context = detail::erase_at(o_tuple, k);
          auto context_sizes = detail::erase_at(spec_.out_sizes, k);
          context_index_[k][static_cast<std::size_t>(oidx)] =
              static_cast<std::size_t>(encode_tuple(context, context_sizes));
        }
        ++oidx;
      } while (next_tuple(o_tuple, spec_.out_sizes));
    }
  }

  const space_spec& spec() const { return spec_; }
  std::size_t digit_count() const { return radices_.size(); }
  const std::vector<value_t>& radices() const { return radices_; }

  /*! Number of tables; CAP_EXCEEDED when it does not fit in 64 bits. */
  index_t count() const {
    if (!count_)
      throw error(errc::cap_exceeded, "function space size does not fit in 64 bits");
    return *count_;
  }

  std::vector<value_t> digits_at(index_t index) const {
    return decode_tuple(index, radices_);
  }

  induced_function to_function(std::span<const value_t> digits) const {
    const std::size_t n = spec_.out_sizes.size();
    std::vector<std::vector<value_t>> components(n);
    if (!spec_.restrict_constant_components) {
      for (std::size_t k = 0; k < n; ++k)
        components[k].assign(
            digits.begin() + static_cast<std::ptrdiff_t>(offsets_[k]),
            digits.begin() + static_cast<std::ptrdiff_t>(offsets_[k] + out_count_));
    } else {
      for (std::size_t k = 0; k < n; ++k) {
        components[k].resize(static_cast<std::size_t>(out_count_));
        for (std::size_t oidx = 0; oidx < out_count_; ++oidx)
          components[k][oidx] = digits[offsets_[k] + context_index_[k][oidx]];
      }
    }
    return induced_function(spec_.out_sizes, spec_.in_sizes, std::move(components));
  }

  induced_function at(index_t index) const {
    auto digits = digits_at(index);
    return to_function(digits);
  }

private:
  space_spec spec_;
  index_t out_count_ = 0;
  std::vector<value_t> radices_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<std::size_t>> context_index_;
  std::optional<index_t> count_;
};

/*! One census row: the table's enumeration index, its verdict, and for
    antinomic tables the canonical indices of the two witness profiles plus
    the information profile's first two fixed points. */
struct census_record {
  index_t index = 0;
  bool process = true;
  std::optional<index_t> grandfather_index;
  std::optional<index_t> information_index;
  index_t point_a = 0;
  index_t point_b = 0;

  bool operator==(const census_record&) const = default;
};

struct census_options {
  unsigned workers = 1;
  index_t function_cap = default_cap;
  index_t profile_cap = default_cap;
  std::size_t representatives = 0;
  bool collect_records = false;
};

struct census_report {
  space_spec spec;
  index_t total = 0;
  index_t process_count = 0;
  index_t antinomic_count = 0;
  index_t equivalence_violations = 0;
  std::vector<index_t> process_representatives;
  std::vector<index_t> antinomic_representatives;
  std::vector<census_record> records;
  double elapsed_seconds = 0.0;
  unsigned workers = 1;
};

namespace detail {

struct census_slice {
  index_t process_count = 0;
  index_t antinomic_count = 0;
  index_t equivalence_violations = 0;
  std::vector<index_t> process_representatives;
  std::vector<index_t> antinomic_representatives;
  std::vector<census_record> records;
};

inline census_slice census_range(const function_space& fs, const profile_space& ps,
                                 index_t begin, index_t end, std::size_t representatives,
                                 bool collect_records) {
  census_slice slice;
  index_t profile_count = ps.count();
  std::vector<value_t> digits = fs.digits_at(begin);
  for (index_t idx = begin; idx < end; ++idx) {
    induced_function omega = fs.to_function(digits);
    sweep_result sweep = sweep_profiles(omega, ps, 0, profile_count, nullptr);
    bool process = !sweep.first_zero && !sweep.first_multi;
    bool one_sided = sweep.first_zero.has_value() != sweep.first_multi.has_value();
    if (process) {
      ++slice.process_count;
      if (slice.process_representatives.size() < representatives)
        slice.process_representatives.push_back(idx);
    } else {
      ++slice.antinomic_count;
      if (one_sided) ++slice.equivalence_violations;
      if (slice.antinomic_representatives.size() < representatives)
        slice.antinomic_representatives.push_back(idx);
    }
    if (collect_records) {
      census_record record;
      record.index = idx;
      record.process = process;
      if (!process) {
        record.grandfather_index = sweep.first_zero;
        record.information_index = sweep.first_multi;
        record.point_a = sweep.multi_a;
        record.point_b = sweep.multi_b;
      }
      slice.records.push_back(record);
    }
    next_tuple(digits, fs.radices());
  }
  return slice;
}

} // namespace detail

/*! \brief Classify every table of a space and count the two classes.

  Tables are processed in canonical order, the index range split across
  workers in contiguous blocks; merged counts, representatives, and records
  are identical for every worker count. A table whose sweep finds one
  antinomy but not the other counts as antinomic and as an equivalence
  violation (a correct implementation reports zero of those). CAP_EXCEEDED
  when the table count exceeds function_cap or the per-table profile count
  exceeds profile_cap.
*/
inline census_report run_census(const space_spec& spec, const census_options& options = {}) {
  detail::stopwatch clock;
  function_space fs(spec);
  profile_space ps(spec.out_sizes, spec.in_sizes);
  index_t total = fs.count();
  if (total > options.function_cap)
    throw error(errc::cap_exceeded, "function space has " + std::to_string(total) +
                                        " tables, cap is " +
                                        std::to_string(options.function_cap));
  index_t profiles = ps.count();
  if (profiles > options.profile_cap)
    throw error(errc::cap_exceeded, "profile space has " + std::to_string(profiles) +
                                        " elements, cap is " +
                                        std::to_string(options.profile_cap));

  auto ranges = detail::partition_ranges(total, options.workers);
  std::vector<detail::census_slice> slices(ranges.size());
  if (ranges.size() <= 1) {
    if (!ranges.empty())
      slices[0] = detail::census_range(fs, ps, ranges[0].first, ranges[0].second,
                                       options.representatives, options.collect_records);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(ranges.size());
    for (std::size_t w = 0; w < ranges.size(); ++w)
      pool.emplace_back([&, w] {
        slices[w] = detail::census_range(fs, ps, ranges[w].first, ranges[w].second,
                                         options.representatives, options.collect_records);
      });
    for (auto& t : pool) t.join();
  }

  census_report report;
  report.spec = spec;
  report.total = total;
  report.workers = options.workers == 0 ? 1 : options.workers;
  for (const auto& slice : slices) {
    report.process_count += slice.process_count;
    report.antinomic_count += slice.antinomic_count;
    report.equivalence_violations += slice.equivalence_violations;
    for (index_t idx : slice.process_representatives)
      if (report.process_representatives.size() < options.representatives)
        report.process_representatives.push_back(idx);
    for (index_t idx : slice.antinomic_representatives)
      if (report.antinomic_representatives.size() < options.representatives)
        report.antinomic_representatives.push_back(idx);
    report.records.insert(report.records.end(), slice.records.begin(), slice.records.end());
  }
  report.elapsed_seconds = clock.seconds();
  return report;
}

} // namespace causaloop
