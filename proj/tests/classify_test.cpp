// This file is part of causaloop.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "oracle.hpp"
#include "test_util.hpp"

#include <causaloop/classify.hpp>
#include <causaloop/fixed_point.hpp>
#include <causaloop/sample.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <vector>

using namespace causaloop;
using test_util::make_omega;
using test_util::make_profile;

namespace {

index_t encode_point(const oracle::tuple& point, const std::vector<value_t>& in_sizes) {
  return oracle::position_of(oracle::all_tuples(in_sizes), point);
}

} // namespace

TEST_CASE("swap classifies antinomic with the frozen witnesses") {
  auto swap = test_util::load_omega("swap.omega");
  auto verdict = classify(swap);
  REQUIRE(!is_process(verdict));
  const auto& a = std::get<antinomic_verdict>(verdict);
  CHECK(a.grandfather_index == 6);
  CHECK(a.grandfather == make_profile({{0, 1}, {1, 0}}));
  CHECK(a.information_index == 5);
  CHECK(a.information == make_profile({{0, 1}, {0, 1}}));
  CHECK(a.point_a == 0);
  CHECK(a.point_b == 3);
}

TEST_CASE("the identity loop classifies antinomic with the frozen witnesses") {
  auto identity = test_util::load_omega("identity.omega");
  auto verdict = classify(identity);
  REQUIRE(!is_process(verdict));
  const auto& a = std::get<antinomic_verdict>(verdict);
  CHECK(a.grandfather_index == 2);
  CHECK(a.grandfather == make_profile({{1, 0}}));
  CHECK(a.information_index == 1);
  CHECK(a.information == make_profile({{0, 1}}));
  CHECK(a.point_a == 0);
  CHECK(a.point_b == 1);
}

TEST_CASE("constant and one-way tables classify process with one fixed point each") {
  auto constant = test_util::load_omega("constant0.omega");
  auto verdict = classify(constant);
  REQUIRE(is_process(verdict));
  CHECK(std::get<process_verdict>(verdict).fixed_point_index ==
        std::vector<index_t>{0, 0, 0, 0});

  auto one_way = test_util::load_omega("one_way.omega");
  auto one_way_verdict = classify(one_way);
  REQUIRE(is_process(one_way_verdict));
  std::vector<index_t> expected(16, 0);
  for (std::size_t p = 8; p < 16; ++p) expected[p] = 1;
  CHECK(std::get<process_verdict>(one_way_verdict).fixed_point_index == expected);
}

TEST_CASE("classify agrees with the naive oracle over all two-party bit tables") {
  function_space tables({{2, 2}, {2, 2}, false});
  for (index_t t = 0; t < tables.count(); ++t) {
    auto omega = tables.to_function(tables.digits_at(t));
    auto naive = oracle::classify(oracle::from_library(omega));
    auto verdict = classify(omega);
    REQUIRE(is_process(verdict) == naive.process);
    if (!naive.process) {
      const auto& a = std::get<antinomic_verdict>(verdict);
      REQUIRE(a.grandfather_index.has_value() == naive.first_zero.has_value());
      REQUIRE(a.information_index.has_value() == naive.first_multi.has_value());
      REQUIRE(*a.grandfather_index == *naive.first_zero);
      REQUIRE(*a.information_index == *naive.first_multi);
      REQUIRE(a.point_a == encode_point(naive.point_a, omega.in_sizes()));
      REQUIRE(a.point_b == encode_point(naive.point_b, omega.in_sizes()));
    }
  }
}

TEST_CASE("classify agrees with the naive oracle on random tables") {
  sampler s(77);
  int checked = 0;
  while (checked < 60) {
    auto omega = random_omega(s);
    if (profile_space(omega).count() > 2048) continue;
    ++checked;
    auto naive = oracle::classify(oracle::from_library(omega));
    auto verdict = classify(omega);
    REQUIRE(is_process(verdict) == naive.process);
    if (!naive.process) {
      const auto& a = std::get<antinomic_verdict>(verdict);
      REQUIRE(a.grandfather_index == naive.first_zero);
      REQUIRE(a.information_index == naive.first_multi);
    }
  }
}

TEST_CASE("classify verdicts are invariant under the worker count") {
  sampler s(9001);
  for (int trial = 0; trial < 40; ++trial) {
    auto omega = random_omega(s);
    auto reference = classify(omega, default_cap, 1);
    CHECK(classify(omega, default_cap, 2) == reference);
    CHECK(classify(omega, default_cap, 4) == reference);
  }
}

TEST_CASE("classify enforces the profile cap") {
  auto swap = test_util::load_omega("swap.omega");
  try {
    classify(swap, 8);
    FAIL("cap ignored");
  } catch (const error& e) {
    CHECK(e.code() == errc::cap_exceeded);
  }
  CHECK_NOTHROW(classify(swap, 16));
}

TEST_CASE("fixed point indices are elided above the collection limit") {
  auto omega = make_omega({2, 2}, {9, 9}, {{0, 0, 0, 0}, {0, 0, 0, 0}});
  profile_space space(omega);
  REQUIRE(space.count() > fixed_point_index_limit);
  auto verdict = classify(omega);
  REQUIRE(is_process(verdict));
  CHECK(std::get<process_verdict>(verdict).fixed_point_index.empty());
}

TEST_CASE("partition_ranges tiles the index space") {
  for (index_t count : {0ULL, 1ULL, 7ULL, 16ULL, 1000ULL}) {
    for (unsigned workers : {0u, 1u, 3u, 4u, 32u}) {
      auto ranges = detail::partition_ranges(count, workers);
      index_t expected_begin = 0;
      for (const auto& [begin, end] : ranges) {
        REQUIRE(begin == expected_begin);
        REQUIRE(end > begin);
        expected_begin = end;
      }
      REQUIRE(expected_begin == count);
      if (workers > 0) REQUIRE(ranges.size() <= workers);
    }
  }
}

TEST_CASE("witness_lemma1 builds the two proof profiles for the identity loop") {
  auto identity = test_util::load_omega("identity.omega");
  auto witness = witness_lemma1(identity, 0, 0, 1, {});
  CHECK(witness.grandfather == make_profile({{1, 0}}));
  CHECK(witness.information == make_profile({{0, 1}}));
  CHECK(witness.grandfather_index == 2);
  CHECK(witness.information_index == 1);
  CHECK(witness.point_a == 0);
  CHECK(witness.point_b == 1);
}

TEST_CASE("witness_lemma1 rejects unusable arguments") {
  auto identity = test_util::load_omega("identity.omega");
  auto constant = test_util::load_omega("constant0.omega");
  auto code_of = [](auto&& build) {
    try {
      build();
    } catch (const error& e) {
      return e.code();
    }
    return errc::parse;
  };
  std::vector<value_t> stray{0};
  CHECK(code_of([&] { witness_lemma1(identity, 1, 0, 1, {}); }) == errc::shape_mismatch);
  CHECK(code_of([&] { witness_lemma1(identity, 0, 0, 2, {}); }) == errc::out_of_range);
  CHECK(code_of([&] { witness_lemma1(identity, 0, 0, 1, stray); }) == errc::shape_mismatch);
  CHECK(code_of([&] { witness_lemma1(constant, 0, 0, 1, {}); }) ==
        errc::not_a_nonconstancy_witness);
}

TEST_CASE("witness_lemma1 profiles verify on every sampled non-constant component") {
  sampler s(424242);
  for (int trial = 0; trial < 400; ++trial) {
    auto omega = random_omega(s);
    for (std::size_t k = 0; k < omega.party_count(); ++k) {
      auto constancy = is_constant_component(omega, k);
      if (constancy.constant) continue;
      auto witness = witness_lemma1(omega, k, constancy.x, constancy.y, constancy.context);
      auto starved = fixed_points(omega, witness.grandfather);
      REQUIRE(starved.points.empty());
      auto echoed = fixed_points(omega, witness.information);
      REQUIRE(echoed.size() >= 2);
      REQUIRE(echoed.contains(witness.point_a));
      REQUIRE(echoed.contains(witness.point_b));
      REQUIRE(witness.point_a != witness.point_b);
    }
  }
}

TEST_CASE("witness_search matches classify when no component reads its own party") {
  auto swap = test_util::load_omega("swap.omega");
  auto searched = witness_search(swap);
  auto classified = classify(swap);
  REQUIRE(!is_process(searched));
  CHECK(std::get<antinomic_verdict>(searched) == std::get<antinomic_verdict>(classified));

  auto constant = test_util::load_omega("constant0.omega");
  CHECK(is_process(witness_search(constant)));
}

TEST_CASE("witness_search takes the construction shortcut on the ring") {
  auto ring = induce(test_util::load_structure("two_party_ring.cstruct"));
  auto verdict = witness_search(ring);
  REQUIRE(!is_process(verdict));
  const auto& a = std::get<antinomic_verdict>(verdict);
  CHECK(a.grandfather == make_profile({{0, 0}, {1, 0, 0, 0}}));
  CHECK(a.grandfather_index == 8);
  CHECK(a.information == make_profile({{0, 0}, {0, 1, 1, 1}}));
  CHECK(a.information_index == 7);
  CHECK(a.point_a == 0);
  CHECK(a.point_b == 6);

  auto naive = oracle::classify(oracle::from_library(ring));
  REQUIRE(!naive.process);
  const auto& first = std::get<antinomic_verdict>(classify(ring));
  CHECK(first.grandfather_index == naive.first_zero);
  CHECK(first.information_index == naive.first_multi);
}

TEST_CASE("witness_search verdicts agree with classify on random tables") {
  sampler s(5150);
  for (int trial = 0; trial < 200; ++trial) {
    auto omega = random_omega(s);
    CHECK(is_process(witness_search(omega)) == is_process(classify(omega)));
  }
}
