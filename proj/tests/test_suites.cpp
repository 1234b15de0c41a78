#include <doctest.h>

#include <algorithm>
#include <vector>

#include "charges/suites.hpp"

using namespace charges;

TEST_CASE("sign constancy suite finds no violations") {
  SuiteConfig config{300, 7, 1};
  SuiteReport report = run_suite("thm44", config);
  CHECK(report.suite == "thm44");
  CHECK(report.trials == 300);
  CHECK(report.seed == 7);
  CHECK(report.draws >= report.trials);
  CHECK(report.violations.empty());
  CHECK(report.elapsed_ms >= 0);
}

TEST_CASE("support bounds suite finds no violations") {
  SuiteConfig config{150, 11, 1};
  SuiteReport report = run_suite("lemmas", config);
  CHECK(report.suite == "lemmas");
  CHECK(report.trials == 150);
  CHECK(report.draws >= report.trials);
  CHECK(report.violations.empty());
}

TEST_CASE("suite reports do not depend on the thread count") {
  SuiteReport base = run_suite("thm44", SuiteConfig{120, 99, 1});
  SuiteReport again = run_suite("thm44", SuiteConfig{120, 99, 1});
  CHECK(base.draws == again.draws);
  CHECK(base.violations.size() == again.violations.size());

  SuiteReport threaded = run_suite("thm44", SuiteConfig{120, 99, 4});
  CHECK(threaded.draws == base.draws);
  CHECK(threaded.violations.size() == base.violations.size());

  CHECK(run_suite("lemmas", SuiteConfig{80, 5, 1}).draws ==
        run_suite("lemmas", SuiteConfig{80, 5, 3}).draws);
}

TEST_CASE("distinct seeds explore distinct draw sequences") {
  std::vector<std::uint64_t> draws;
  for (std::uint64_t seed = 1; seed <= 4; ++seed)
    draws.push_back(run_suite("thm44", SuiteConfig{200, seed, 1}).draws);
  CHECK(*std::min_element(draws.begin(), draws.end()) !=
        *std::max_element(draws.begin(), draws.end()));
}

TEST_CASE("unknown suite names are rejected") {
  CHECK_THROWS_WITH_AS(run_suite("nope", SuiteConfig{10, 1, 1}),
                       doctest::Contains("unknown suite"), DomainError);
}
