// This file is part of causaloop.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "oracle.hpp"
#include "test_util.hpp"

#include <causaloop/induced.hpp>
#include <causaloop/sample.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <vector>

using namespace causaloop;
using test_util::make_omega;

TEST_CASE("a negating loop hands the party its flipped output") {
  auto omega = induce(test_util::load_structure("not_loop.cstruct"));
  CHECK(omega.out_sizes() == std::vector<value_t>{2});
  CHECK(omega.in_sizes() == std::vector<value_t>{2});
  CHECK(omega.components() == std::vector<std::vector<value_t>>{{1, 0}});
  REQUIRE(omega.origin() != nullptr);
}

TEST_CASE("an identity loop hands the party its own output") {
  auto omega = induce(test_util::load_structure("identity_loop.cstruct"));
  CHECK(omega.components() == std::vector<std::vector<value_t>>{{0, 1}});
}

TEST_CASE("the seven-vertex ring induces the frozen two-party tables") {
  auto omega = induce(test_util::load_structure("two_party_ring.cstruct"));
  CHECK(omega.out_sizes() == std::vector<value_t>{2, 2});
  CHECK(omega.in_sizes() == std::vector<value_t>{2, 4});
  CHECK(omega.components() ==
        std::vector<std::vector<value_t>>{{0, 1, 0, 1}, {0, 2, 1, 3}});
}

TEST_CASE("induce agrees with the sweep oracle on random structures") {
  sampler s(816);
  for (int trial = 0; trial < 200; ++trial) {
    auto structure = random_structure(s);
    auto omega = induce(structure);
    auto naive = oracle::induce(structure);
    REQUIRE(omega.out_sizes() == naive.out_sizes);
    REQUIRE(omega.in_sizes() == naive.in_sizes);
    REQUIRE(omega.components() == naive.components);
  }
}

TEST_CASE("induce refuses an invalid structure and names its violations") {
  graph g({1, 2}, {{1, 2}, {2, 1}});
  causal_structure s(std::move(g), {{1, 2}, {2, 2}}, {}, {1});
  try {
    induce(s);
    FAIL("invalid structure accepted");
  } catch (const error& e) {
    CHECK(e.code() == errc::invalid_structure);
    CHECK(std::string(e.what()).find("MISSING_MECH") != std::string::npos);
  }
}

TEST_CASE("apply evaluates all components at one output tuple") {
  auto omega = test_util::load_omega("swap.omega");
  CHECK(omega.apply(std::vector<value_t>{1, 0}) == std::vector<value_t>{0, 1});
  CHECK(omega.apply(std::vector<value_t>{0, 1}) == std::vector<value_t>{1, 0});
}

TEST_CASE("constructor rejects inconsistent tables") {
  auto code_of = [](auto&& build) {
    try {
      build();
    } catch (const error& e) {
      return e.code();
    }
    return errc::parse;
  };
  CHECK(code_of([] { make_omega({}, {}, {}); }) == errc::shape_mismatch);
  CHECK(code_of([] { make_omega({2}, {2, 2}, {{0, 0}}); }) == errc::shape_mismatch);
  CHECK(code_of([] { make_omega({1}, {2}, {{0}}); }) == errc::out_of_range);
  CHECK(code_of([] { make_omega({2}, {0}, {{0, 0}}); }) == errc::out_of_range);
  CHECK(code_of([] { make_omega({2}, {2}, {{0, 0, 0}}); }) == errc::length_mismatch);
  CHECK(code_of([] { make_omega({2}, {2}, {{0, 2}}); }) == errc::out_of_range);
}

TEST_CASE("equality ignores the origin back-reference") {
  auto from_structure = induce(test_util::load_structure("identity_loop.cstruct"));
  auto from_tables = make_omega({2}, {2}, {{0, 1}});
  CHECK(from_structure == from_tables);
  CHECK(from_tables.origin() == nullptr);
}

TEST_CASE("compute_dependence lists the parties a component reads") {
  auto swap = test_util::load_omega("swap.omega");
  CHECK(compute_dependence(swap, 0).depends_on == std::vector<std::size_t>{1});
  CHECK(compute_dependence(swap, 1).depends_on == std::vector<std::size_t>{0});

  auto one_way = test_util::load_omega("one_way.omega");
  CHECK(compute_dependence(one_way, 0).depends_on.empty());
  CHECK(compute_dependence(one_way, 1).depends_on == std::vector<std::size_t>{0});

  auto ring = induce(test_util::load_structure("two_party_ring.cstruct"));
  CHECK(compute_dependence(ring, 0).depends_on == std::vector<std::size_t>{1});
  CHECK(compute_dependence(ring, 1).depends_on == std::vector<std::size_t>{0, 1});
}

TEST_CASE("is_constant_component witnesses self-reading components") {
  auto swap = test_util::load_omega("swap.omega");
  CHECK(is_constant_component(swap, 0).constant);
  CHECK(is_constant_component(swap, 1).constant);

  auto identity = test_util::load_omega("identity.omega");
  auto witness = is_constant_component(identity, 0);
  REQUIRE(!witness.constant);
  CHECK(witness.x == 0);
  CHECK(witness.y == 1);
  CHECK(witness.context.empty());

  auto ring = induce(test_util::load_structure("two_party_ring.cstruct"));
  CHECK(is_constant_component(ring, 0).constant);
  auto ring_witness = is_constant_component(ring, 1);
  REQUIRE(!ring_witness.constant);
  CHECK(ring_witness.x == 0);
  CHECK(ring_witness.y == 1);
  CHECK(ring_witness.context == std::vector<value_t>{0});
}

TEST_CASE("reduce swallows one party under a fixed intervention") {
  auto one_way = test_util::load_omega("one_way.omega");
  auto reduced = reduce(one_way, 0, {{0, 1}});
  CHECK(reduced == make_omega({2}, {2}, {{0, 0}}));

  auto swap = test_util::load_omega("swap.omega");
  CHECK(reduce(swap, 0, {{0, 1}}) == make_omega({2}, {2}, {{0, 1}}));
  CHECK(reduce(swap, 1, {{1, 0}}) == make_omega({2}, {2}, {{1, 0}}));
}

TEST_CASE("reduce rejects bad arguments with specific codes") {
  auto code_of = [](auto&& build) {
    try {
      build();
    } catch (const error& e) {
      return e.code();
    }
    return errc::parse;
  };
  auto identity = test_util::load_omega("identity.omega");
  auto swap = test_util::load_omega("swap.omega");
  auto ring = induce(test_util::load_structure("two_party_ring.cstruct"));
  CHECK(code_of([&] { reduce(identity, 0, {{0, 1}}); }) == errc::arity);
  CHECK(code_of([&] { reduce(swap, 2, {{0, 1}}); }) == errc::shape_mismatch);
  CHECK(code_of([&] { reduce(swap, 0, {{0}}); }) == errc::shape_mismatch);
  CHECK(code_of([&] { reduce(swap, 0, {{0, 2}}); }) == errc::shape_mismatch);
  CHECK(code_of([&] { reduce(ring, 1, {{0, 0, 0, 0}}); }) ==
        errc::not_constant_over_own_output);
}
