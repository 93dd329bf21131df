#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "relia/profile.hpp"
#include "relia/rng.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("metric matches reference values", "[profile]") {
  CHECK_THAT(relia::metric(0.5, 1.0), WithinAbs(0.6931471805599453, 1e-12));
  CHECK_THAT(relia::metric(0.3, 0.1), WithinAbs(3.5667494393873245, 1e-12));
}

TEST_CASE("metric rejects out-of-domain inputs", "[profile]") {
  CHECK_THROWS_AS(relia::metric(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(relia::metric(1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(relia::metric(-0.1, 1.0), std::domain_error);
  CHECK_THROWS_AS(relia::metric(1.1, 1.0), std::domain_error);
  CHECK_THROWS_AS(relia::metric(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(relia::metric(0.5, -1.0), std::domain_error);
}

TEST_CASE("metric is homogeneous of degree -1 in cost", "[profile]") {
  auto rng = relia::SplitMix64(7);
  for (int i = 0; i < 500; ++i) {
    const double p = 0.001 + 0.998 * rng.next_double();
    const double c = 0.01 + 10.0 * rng.next_double();
    const double lambda = 0.1 + 5.0 * rng.next_double();
    CHECK_THAT(relia::metric(p, lambda * c),
               WithinRel(relia::metric(p, c) / lambda, 1e-12));
  }
  CHECK_THAT(relia::metric(0.3, 0.2), WithinRel(relia::metric(0.3, 0.1) / 2.0, 1e-12));
}

TEST_CASE("solver profiles validate their invariants", "[profile]") {
  CHECK_THROWS_AS(relia::SolverProfile("x", 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(relia::SolverProfile("x", 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(relia::SolverProfile("x", 0.5, 0.0), std::domain_error);

  const relia::SolverProfile s("a", 0.3, 0.1);
  CHECK_THAT(s.success_prob(), WithinAbs(0.3, 1e-15));
  CHECK(s.attempt_cost() == 0.1);
  CHECK_THAT(s.metric(), WithinAbs(3.5667494393873245, 1e-12));
}

TEST_CASE("kshot_profile bundles k attempts", "[profile]") {
  const relia::SolverProfile s("a", 0.3, 0.1);

  const auto ten = relia::kshot_profile(s, 10);
  CHECK_THAT(ten.success_prob(), WithinAbs(0.9717524751, 1e-9));
  CHECK_THAT(ten.attempt_cost(), WithinAbs(1.0, 1e-15));

  const auto one = relia::kshot_profile(s, 1);
  CHECK(one.success_prob() == s.success_prob());
  CHECK(one.attempt_cost() == s.attempt_cost());
  CHECK(one.log_failure() == s.log_failure());

  CHECK_THROWS_AS(relia::kshot_profile(s, 0), std::domain_error);
}

TEST_CASE("kshot metric does not depend on k", "[profile]") {
  auto rng = relia::SplitMix64(11);
  for (int i = 0; i < 1000; ++i) {
    const double p = 0.001 + 0.998 * rng.next_double();
    const double c = 0.01 + 10.0 * rng.next_double();
    const auto k = static_cast<std::int64_t>(1 + rng.next() % 100);
    const relia::SolverProfile s("s", p, c);
    CHECK_THAT(relia::kshot_profile(s, k).metric(), WithinRel(s.metric(), 1e-12));
  }
}

TEST_CASE("budgets carry their regime", "[profile]") {
  const auto money = relia::Budget::dollars(2.0);
  CHECK(money.kind() == relia::Budget::Kind::monetary);
  CHECK(money.amount() == 2.0);
  CHECK_THROWS_AS(money.count(), std::logic_error);

  const auto calls = relia::Budget::queries(50);
  CHECK(calls.kind() == relia::Budget::Kind::query_count);
  CHECK(calls.count() == 50);
  CHECK_THROWS_AS(calls.amount(), std::logic_error);

  CHECK_THROWS_AS(relia::Budget::dollars(-0.01), std::domain_error);
  CHECK_THROWS_AS(relia::Budget::queries(-1), std::domain_error);

  CHECK(relia::kDefaultMonetaryCap == 2.0);
  CHECK(relia::kDefaultQueryCap == 50);
}
