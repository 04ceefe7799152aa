#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "tinopt/tincheck.hpp"

using namespace tinopt;
using tinopt::testing::q;

namespace {

NetworkSpec two_user(std::vector<const char*> alpha) {
  std::vector<Rational> values;
  for (auto* a : alpha) values.push_back(q(a));
  return NetworkSpec(2, 1, std::move(values), {1, 1});
}

}  // namespace

TEST_SUITE("tincheck") {
  TEST_CASE("worked example satisfies the condition in every mixed state") {
    const NetworkSpec spec = example_network();
    CHECK(check_tin_optimality(spec).holds);
    const TinVerdict brute = check_tin_optimality_bruteforce(spec);
    CHECK(brute.holds);
    CHECK_FALSE(brute.witness.has_value());
  }

  TEST_CASE("single user is vacuously TIN-optimal") {
    const NetworkSpec spec(1, 2, {q("0"), q("3")}, {1, 2});
    CHECK(check_tin_optimality(spec).holds);
    CHECK(check_tin_optimality_bruteforce(spec).holds);
  }

  TEST_CASE("equal-strength two-user channel fails with a witness") {
    const NetworkSpec spec = two_user({"1", "1", "1", "1"});
    const TinVerdict fast = check_tin_optimality(spec);
    REQUIRE_FALSE(fast.holds);
    REQUIRE(fast.witness.has_value());
    CHECK(fast.witness->key() == std::tuple(0, 1, 1, 0, 0));
    CHECK(fast.witness->direct < fast.witness->caused + fast.witness->received);
    CHECK(check_tin_optimality_bruteforce(spec) == fast);
  }

  TEST_CASE("equality counts as satisfied") {
    CHECK(check_tin_optimality(two_user({"2", "1", "1", "2"})).holds);
    CHECK_FALSE(check_tin_optimality(two_user({"2", "1", "1.1", "2"})).holds);
  }

  TEST_CASE("violation visible only in a mixed state") {
    // Each original state is fine, but receiver 2's state-1 interference plus
    // receiver 1 in state 2 is not.
    const NetworkSpec spec(2, 2,
                           {q("1.8"), q("0.5"), q("1"), q("1.8"),    // state 1
                            q("1.8"), q("1"), q("0.5"), q("1.8")},   // state 2
                           {1, 1, 1, 1});
    for (int m = 0; m < 2; ++m) {
      NetworkSpec single(2, 1, {spec.alpha(0, 0, m), spec.alpha(0, 1, m), spec.alpha(1, 0, m), spec.alpha(1, 1, m)},
                         {1, 1});
      CHECK(check_tin_optimality(single).holds);
    }
    const TinVerdict fast = check_tin_optimality(spec);
    CHECK_FALSE(fast.holds);
    CHECK(check_tin_optimality_bruteforce(spec) == fast);
  }

  TEST_CASE("fast check equals mixed-state enumeration on random networks") {
    std::mt19937_64 rng(2024);
    int failing = 0;
    for (int trial = 0; trial < 400; ++trial) {
      const int users = 1 + trial % 4, states = 1 + (trial / 4) % 3;
      const NetworkSpec spec = trial % 3 == 0 ? tinopt::testing::random_tin_optimal_spec(rng, users, states)
                                              : tinopt::testing::random_spec(rng, users, states);
      const TinVerdict fast = check_tin_optimality(spec);
      const TinVerdict brute = check_tin_optimality_bruteforce(spec);
      CHECK(fast == brute);
      if (trial % 3 == 0) CHECK(fast.holds);
      if (!fast.holds) ++failing;
    }
    CHECK(failing > 50);  // both outcomes exercised
  }

  TEST_CASE("raising a cross link never repairs a failing network") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
      const int users = 2 + trial % 3, states = 1 + trial % 2;
      const NetworkSpec spec = tinopt::testing::random_spec(rng, users, states);
      const bool before = check_tin_optimality(spec).holds;
      std::vector<Rational> alpha = spec.alpha_data();
      std::uniform_int_distribution<std::size_t> pick(0, alpha.size() - 1);
      std::size_t n = pick(rng);
      const std::size_t per_state = static_cast<std::size_t>(users) * users;
      while ((n % per_state) / users == (n % per_state) % users) n = pick(rng);  // cross links only
      alpha[n] += tinopt::testing::random_tenths(rng, 10);
      const NetworkSpec raised(users, states, alpha, spec.pi_data());
      if (!before) CHECK_FALSE(check_tin_optimality(raised).holds);
    }
  }

  TEST_CASE("brute force refuses oversized instances") {
    std::mt19937_64 rng(1);
    const NetworkSpec spec = tinopt::testing::random_spec(rng, 7, 8);  // 8^7 > 10^6
    CHECK_THROWS_AS(check_tin_optimality_bruteforce(spec), InstanceTooLarge);
    CHECK_NOTHROW(check_tin_optimality(spec));
  }
}
