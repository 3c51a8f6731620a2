// This file is part of causaloop.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <causaloop/suites.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <string>

using namespace causaloop;

TEST_CASE("every named suite passes at its default desk scale") {
  suite_options options;
  options.sample_count = 500;

  auto lemma1 = run_suite("lemma1", options);
  CHECK(lemma1.passed());
  CHECK(lemma1.instances == 756);

  auto corollary2 = run_suite("corollary2", options);
  CHECK(corollary2.passed());
  CHECK(corollary2.instances == 287);

  auto lemma3 = run_suite("lemma3", options);
  CHECK(lemma3.passed());
  CHECK(lemma3.instances == 512);

  auto corollary4 = run_suite("corollary4", options);
  CHECK(corollary4.passed());
  CHECK(corollary4.instances == 256);

  auto transitivity = run_suite("transitivity", options);
  CHECK(transitivity.passed());
  CHECK(transitivity.instances == 96);

  auto theorem1 = run_suite("theorem1", options);
  CHECK(theorem1.passed());
  CHECK(theorem1.instances == 16);

  auto equivalence = run_suite("equivalence", options);
  CHECK(equivalence.passed());
  CHECK(equivalence.instances == 16);
}

TEST_CASE("the unrestricted two-party spaces have 256 tables") {
  suite_options options;
  options.unrestricted = true;
  CHECK(run_suite("theorem1", options).instances == 256);
  CHECK(run_suite("equivalence", options).instances == 256);
}

TEST_CASE("three-party transitivity covers every reduction of every process table") {
  suite_options options;
  options.parties = 3;
  auto report = run_suite("transitivity", options);
  CHECK(report.passed());
  CHECK(report.instances == 8928);
}

TEST_CASE("suite names are fixed and unknown names are rejected") {
  CHECK(suite_names() == std::vector<std::string>{"lemma1", "corollary2", "lemma3", "corollary4",
                                                  "transitivity", "theorem1", "equivalence"});
  CHECK_THROWS_AS(run_suite("does_not_exist", {}), error);
}

TEST_CASE("suite runs are reproducible for a fixed seed") {
  suite_options options;
  options.sample_count = 200;
  options.seed = 99;
  auto first = run_suite("lemma1", options);
  auto second = run_suite("lemma1", options);
  CHECK(first.instances == second.instances);
  CHECK(first.passed() == second.passed());
}
