// This file is part of causaloop.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include <causaloop/codec.hpp>
#include <causaloop/induced.hpp>

namespace causaloop {

/*! Joint inputs i with i = omega(f(i)), encoded over the input sizes and
    listed in ascending encoded order. */
struct fixed_point_set {
  std::vector<index_t> points;

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }
  bool contains(index_t p) const {
    return std::binary_search(points.begin(), points.end(), p);
  }

  bool operator==(const fixed_point_set&) const = default;
};

namespace detail {

/*! Fixed points of a profile given as concatenated tables (party-major).
    Stops once limit points are found when limit > 0; records the first two
    points seen when first and second are non-null. */
inline std::size_t count_fixed_points_flat(const induced_function& omega,
                                           std::span<const value_t> digits,
                                           std::span<const std::size_t> offsets,
                                           std::size_t limit, index_t* first = nullptr,
                                           index_t* second = nullptr) {
  const std::size_t n = omega.party_count();
  const auto& in_sizes = omega.in_sizes();
  const auto& out_sizes = omega.out_sizes();
  std::vector<value_t> i_tuple(n, 0);
  std::size_t found = 0;
  index_t idx = 0;
  do {
    index_t oidx = 0;
    for (std::size_t k = 0; k < n; ++k)
      oidx = oidx * out_sizes[k] + digits[offsets[k] + i_tuple[k]];
    bool fixed = true;
    for (std::size_t k = 0; k < n; ++k)
      if (omega.component_at(k, oidx) != i_tuple[k]) {
        fixed = false;
        break;
      }
    if (fixed) {
      if (found == 0 && first) *first = idx;
      if (found == 1 && second) *second = idx;
      ++found;
      if (limit > 0 && found >= limit) return found;
    }
    ++idx;
  } while (next_tuple(i_tuple, in_sizes));
  return found;
}

} // namespace detail

/*! All fixed points of omega under the intervention profile f. */
inline fixed_point_set fixed_points(const induced_function& omega,
                                    const intervention_profile& f) {
  check_profile_shape(omega, f);
  const std::size_t n = omega.party_count();
  fixed_point_set result;
  std::vector<value_t> i_tuple(n, 0);
  std::vector<value_t> o_tuple(n);
  index_t idx = 0;
  do {
    for (std::size_t k = 0; k < n; ++k) o_tuple[k] = f[k].table[i_tuple[k]];
    index_t oidx = encode_tuple(o_tuple, omega.out_sizes());
    bool fixed = true;
    for (std::size_t k = 0; k < n; ++k)
      if (omega.component_at(k, oidx) != i_tuple[k]) {
        fixed = false;
        break;
      }
    if (fixed) result.points.push_back(idx);
    ++idx;
  } while (next_tuple(i_tuple, omega.in_sizes()));
  return result;
}

/*! \brief The canonical enumeration of intervention profiles.

  A profile flattens to its concatenated tables in party order (the digit
  vector); digit d of party k ranges over the party's output space. Profiles
  are numbered by reading the digit vector as a mixed-radix numeral, leftmost
  digit most significant, so index 0 maps every party constantly to output 0
  and index count()-1 maps every party constantly to its top output value.
*/
class profile_space {
public:
  profile_space(std::vector<value_t> out_sizes, std::vector<value_t> in_sizes)
      : out_sizes_(std::move(out_sizes)), in_sizes_(std::move(in_sizes)) {
    if (out_sizes_.size() != in_sizes_.size() || out_sizes_.empty())
      throw error(errc::shape_mismatch, "profile space needs matching nonempty size lists");
    offsets_.resize(out_sizes_.size());
    std::size_t offset = 0;
    for (std::size_t k = 0; k < out_sizes_.size(); ++k) {
      offsets_[k] = offset;
      offset += in_sizes_[k];
      for (value_t d = 0; d < in_sizes_[k]; ++d) radices_.push_back(out_sizes_[k]);
    }
    count_ = checked_product(radices_);
  }

  explicit profile_space(const induced_function& omega)
      : profile_space(omega.out_sizes(), omega.in_sizes()) {}

  std::size_t party_count() const { return out_sizes_.size(); }
  std::size_t digit_count() const { return radices_.size(); }
  const std::vector<value_t>& radices() const { return radices_; }
  const std::vector<std::size_t>& offsets() const { return offsets_; }

  /*! Number of profiles; CAP_EXCEEDED when it does not fit in 64 bits. */
  index_t count() const {
    if (!count_)
      throw error(errc::cap_exceeded, "profile space size does not fit in 64 bits");
    return *count_;
  }

  std::vector<value_t> digits_at(index_t index) const {
    return decode_tuple(index, radices_);
  }

  intervention_profile to_profile(std::span<const value_t> digits) const {
    intervention_profile f(party_count());
    for (std::size_t k = 0; k < party_count(); ++k)
      f[k].table.assign(digits.begin() + static_cast<std::ptrdiff_t>(offsets_[k]),
                        digits.begin() + static_cast<std::ptrdiff_t>(offsets_[k] + in_sizes_[k]));
    return f;
  }

  intervention_profile at(index_t index) const {
    auto digits = digits_at(index);
    return to_profile(digits);
  }

  index_t index_of(std::span<const value_t> digits) const {
    return encode_tuple(digits, radices_);
  }

private:
  std::vector<value_t> out_sizes_;
  std::vector<value_t> in_sizes_;
  std::vector<value_t> radices_;
  std::vector<std::size_t> offsets_;
  std::optional<index_t> count_;
};

} // namespace causaloop
