// This file is part of causaloop.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <causaloop/error.hpp>

namespace causaloop {

/*! A single vertex/party value. Values of a slot with size s range over 0..s-1. */
using value_t = std::uint32_t;

/*! Encoded index of a value tuple, table entry count, or enumeration position. */
using index_t = std::uint64_t;

inline std::optional<index_t> checked_mul(index_t a, index_t b) {
  if (a != 0 && b > UINT64_MAX / a) return std::nullopt;
  return a * b;
}

inline std::optional<index_t> checked_pow(index_t base, index_t exp) {
  index_t result = 1;
  for (index_t e = 0; e < exp; ++e) {
    auto next = checked_mul(result, base);
    if (!next) return std::nullopt;
    result = *next;
  }
  return result;
}

/*! Product of a size profile, or nullopt on 64-bit overflow. Empty profile gives 1. */
inline std::optional<index_t> checked_product(std::span<const value_t> sizes) {
  index_t product = 1;
  for (value_t s : sizes) {
    auto next = checked_mul(product, s);
    if (!next) return std::nullopt;
    product = *next;
  }
  return product;
}

/*! Product of a size profile. Throws CAP_EXCEEDED if it does not fit in 64 bits. */
inline index_t tuple_count(std::span<const value_t> sizes) {
  auto product = checked_product(sizes);
  if (!product)
    throw error(errc::cap_exceeded, "size product exceeds 64-bit range");
  return *product;
}

/*! \brief Mixed-radix encoding of a value tuple.

  The leftmost position is most significant, so tuples enumerate in
  lexicographic order as the index counts up. The empty tuple encodes to 0.

  Throws OUT_OF_RANGE if the tuple length does not match the size profile
  or any value is out of range.
*/
inline index_t encode_tuple(std::span<const value_t> values, std::span<const value_t> sizes) {
  if (values.size() != sizes.size())
    throw error(errc::out_of_range, "tuple length " + std::to_string(values.size()) +
                                        " does not match size profile length " +
                                        std::to_string(sizes.size()));
  index_t index = 0;
  for (std::size_t pos = 0; pos < values.size(); ++pos) {
    if (values[pos] >= sizes[pos])
      throw error(errc::out_of_range, "value " + std::to_string(values[pos]) + " at position " +
                                          std::to_string(pos) + " exceeds size " +
                                          std::to_string(sizes[pos]));
    index = index * sizes[pos] + values[pos];
  }
  return index;
}

/*! Decode into a caller-provided buffer of length sizes.size(). */
inline void decode_tuple_into(index_t index, std::span<const value_t> sizes,
                              std::span<value_t> out) {
  if (out.size() != sizes.size())
    throw error(errc::out_of_range, "output buffer length does not match size profile");
  for (std::size_t pos = sizes.size(); pos-- > 0;) {
    out[pos] = static_cast<value_t>(index % sizes[pos]);
    index /= sizes[pos];
  }
  if (index != 0)
    throw error(errc::out_of_range, "index exceeds size product");
}

/*! Inverse of encode_tuple. Throws OUT_OF_RANGE if index >= product of sizes. */
inline std::vector<value_t> decode_tuple(index_t index, std::span<const value_t> sizes) {
  std::vector<value_t> values(sizes.size());
  decode_tuple_into(index, sizes, values);
  return values;
}

/*! \brief Advance a value tuple to its lexicographic successor in place.

  Returns false (and resets to all zeros) when the tuple wraps past the last
  combination. Starting from all zeros and calling until false visits every
  tuple exactly once in encoded order.
*/
inline bool next_tuple(std::span<value_t> values, std::span<const value_t> sizes) {
  for (std::size_t pos = values.size(); pos-- > 0;) {
    if (++values[pos] < sizes[pos]) return true;
    values[pos] = 0;
  }
  return false;
}

} // namespace causaloop
