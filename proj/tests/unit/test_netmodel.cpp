#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "tinopt/io.hpp"
#include "tinopt/netmodel.hpp"

using namespace tinopt;
using tinopt::testing::q;

namespace {

const char* example_document = R"({
  "users": 3, "states": 2,
  "alpha": [ [ ["2", "0.2", "1"], ["0.6", "1.5", "0.6"], ["0.1", "0.5", "1.5"] ],
             [ ["2", "0.2", "1"], ["0.5", "1", "0.5"],   ["0.6", "0.3", "2"] ] ],
  "pi": [[1, 1], [2, 1], [1, 2]]
})";

RationalMatrix matrix(std::initializer_list<const char*> values) {
  const int n = values.size() == 9 ? 3 : 2;
  RationalMatrix m(n);
  int idx = 0;
  for (const char* v : values) {
    m(idx / n, idx % n) = q(v);
    ++idx;
  }
  return m;
}

std::string error_path(const char* text) {
  try {
    parse_spec(text);
  } catch (const ValidationError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST_SUITE("rational") {
  TEST_CASE("decimal strings parse exactly") {
    CHECK(parse_rational("0.3") == Rational(3, 10));
    CHECK(parse_rational("-1.25") == Rational(-5, 4));
    CHECK(parse_rational("2") == 2);
    CHECK(parse_rational("0.09") == Rational(9, 100));
    CHECK(parse_rational("1e-3") == Rational(1, 1000));
    CHECK(parse_rational("7/3") == Rational(7, 3));
    CHECK(parse_rational(".5") == Rational(1, 2));
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  }

  TEST_CASE("formatting is canonical and round-trips") {
    CHECK(format_rational(Rational(3, 10)) == "0.3");
    CHECK(format_rational(Rational(-1, 5)) == "-0.2");
    CHECK(format_rational(Rational(6, 4)) == "1.5");
    CHECK(format_rational(Rational(1, 3)) == "1/3");
    CHECK(format_rational(Rational(0)) == "0");
    CHECK(format_rational(Rational(-9, 10)) == "-0.9");

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(-100000, 100000), den(1, 5000);
    for (int n = 0; n < 500; ++n) {
      Rational r(num(rng), den(rng));
      CHECK(parse_rational(format_rational(r)) == r);
    }
  }
}

TEST_SUITE("netmodel") {
  TEST_CASE("parse_spec reads the worked example") {
    const NetworkSpec spec = parse_spec(example_document);
    CHECK(spec.users() == 3);
    CHECK(spec.states() == 2);
    CHECK(spec.alpha(1, 0, 0) == q("0.6"));  // receiver 2, transmitter 1, state 1
    CHECK(spec.alpha(2, 2, 1) == 2);
    CHECK(spec.pi(1, 0) == 2);
    CHECK(spec.pi(2, 1) == 2);
    CHECK(spec == example_network());
  }

  TEST_CASE("parse_spec accepts a single-user network") {
    const NetworkSpec spec = parse_spec(R"({"users":1,"states":1,"alpha":[[[1]]],"pi":[[1]]})");
    CHECK(spec.users() == 1);
    CHECK(spec.alpha(0, 0, 0) == 1);
  }

  TEST_CASE("validation errors name the offending field") {
    CHECK(error_path(R"({"users":1,"states":2,"alpha":[[["1"]],[["1"]]],"pi":[[1,3]]})") == "pi[0][1]");
    CHECK(error_path(R"({"users":1,"states":1,"alpha":[[["-0.1"]]],"pi":[[1]]})") == "alpha[0][0][0]");
    CHECK(error_path(R"({"users":2,"states":1,"alpha":[[["1","0"]]],"pi":[[1],[1]]})") == "alpha[0]");
    CHECK(error_path(R"({"users":2,"states":1,"alpha":[[["1","0"],["0"]]],"pi":[[1],[1]]})") == "alpha[0][1]");
    CHECK(error_path(R"({"users":1,"states":1,"alpha":[[["x"]]],"pi":[[1]]})") == "alpha[0][0][0]");
    CHECK(error_path(R"({"users":1,"states":1,"alpha":[[["1"]]]})") == "pi");
    CHECK(error_path(R"({"users":1,"states":1,"alpha":[[["1"]]],"pi":[[0]]})") == "pi[0][0]");
    CHECK(error_path("not json") == "");
  }

  TEST_CASE("JSON floats are read through their shortest decimal") {
    const NetworkSpec spec = parse_spec(R"({"users":1,"states":1,"alpha":[[[0.3]]],"pi":[[1]]})");
    CHECK(spec.alpha(0, 0, 0) == Rational(3, 10));
  }

  TEST_CASE("mixed_state_alpha takes each receiver's row from its own state") {
    const NetworkSpec spec = example_network();
    CHECK(mixed_state_alpha(spec, {0, 0, 1}) == matrix({"2", "0.2", "1", "0.6", "1.5", "0.6", "0.6", "0.3", "2"}));
    CHECK(mixed_state_alpha(spec, {1, 1, 0}) == matrix({"2", "0.2", "1", "0.5", "1", "0.5", "0.1", "0.5", "1.5"}));
    CHECK(mixed_state_alpha(spec, {0, 0, 0}) == spec.state_matrix(0));
    CHECK(mixed_state_alpha(spec, {1, 1, 1}) == spec.state_matrix(1));
  }

  TEST_CASE("mixed states: M^K of them, diagonal ones reproduce the originals") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const int users = 1 + trial % 4, states = 1 + trial % 3;
      const NetworkSpec spec = tinopt::testing::random_spec(rng, users, states);
      std::size_t count = 0, diagonal = 0;
      for_each_mixed_state(users, states, [&](const MixedState& ms) {
        ++count;
        if (std::all_of(ms.begin(), ms.end(), [&](int m) { return m == ms[0]; })) {
          ++diagonal;
          CHECK(mixed_state_alpha(spec, ms) == spec.state_matrix(ms[0]));
        }
      });
      std::size_t expected = 1;
      for (int k = 0; k < users; ++k) expected *= static_cast<std::size_t>(states);
      CHECK(count == expected);
      CHECK(mixed_state_count(spec, 1'000'000) == expected);
      CHECK(diagonal == static_cast<std::size_t>(states));
    }
  }

  TEST_CASE("parse, serialize, parse is the identity") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      const NetworkSpec spec = tinopt::testing::random_spec(rng, 1 + trial % 4, 1 + trial % 3);
      const NetworkSpec again = parse_spec(serialize_spec(spec));
      CHECK(again == spec);
      CHECK(serialize_spec(again) == serialize_spec(spec));
    }
  }

  TEST_CASE("deliverable variables skip orders no state decodes") {
    const auto vars = deliverable_variables(example_network());
    REQUIRE(vars.size() == 5);
    CHECK(vars[0] == Variable{0, 0});
    CHECK(vars[3] == Variable{1, 1});
    CHECK(vars[4] == Variable{2, 1});
  }

  TEST_CASE("tuple validation") {
    const NetworkSpec spec = example_network();
    GdofTuple t = GdofTuple::zeros(spec);
    CHECK_NOTHROW(validate_tuple(spec, t));
    t.at(0, 1) = q("0.1");  // user 1 never decodes a second message
    CHECK_THROWS_AS(validate_tuple(spec, t), ValidationError);
    t.at(0, 1) = 0;
    t.at(1, 0) = q("-0.1");
    CHECK_THROWS_AS(validate_tuple(spec, t), ValidationError);
    CHECK_THROWS_AS(validate_tuple(spec, GdofTuple(2, 2)), ValidationError);
  }

  TEST_CASE("layered allocation and its ordering invariant") {
    const NetworkSpec spec = example_network();
    const GdofTuple t = GdofTuple::from_variables(spec, {q("2"), q("0.3"), q("0.2"), q("0.4"), q("0.2")});
    const PowerAllocation alloc = PowerAllocation::layered({q("0"), q("-0.2"), q("-1")}, t);
    CHECK(alloc.at(1, 1) == q("-0.5"));
    CHECK(alloc.at(2, 1) == q("-1.2"));
    CHECK(alloc.at(0, 1) == -2);
    CHECK(alloc.at(0, 2) == -2);
    CHECK(alloc.is_ordered());
    CHECK_NOTHROW(validate_allocation(spec, alloc));

    PowerAllocation bad = alloc;
    bad.at(1, 2) = 0;
    CHECK_FALSE(bad.is_ordered());
    CHECK_THROWS_AS(validate_allocation(spec, bad), ValidationError);
  }
}
