#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "tinopt/evaluate.hpp"
#include "tinopt/potential.hpp"
#include "tinopt/tincheck.hpp"

using namespace tinopt;
using tinopt::testing::q;

namespace {

GdofTuple extreme_point(const NetworkSpec& spec) {
  return GdofTuple::from_variables(spec, {q("2"), q("0.3"), q("0.2"), q("0.4"), q("0.2")});
}

double d(const Rational& r) { return r.convert_to<double>(); }

// Straight linear-power evaluation of the same model, for moderate P only.
std::vector<double> linear_rates(const NetworkSpec& spec, const PowerAllocation& alloc, double p) {
  const int users = spec.users(), states = spec.states();
  std::vector<std::vector<double>> power(static_cast<std::size_t>(users), std::vector<double>(states, 0.0));
  for (int k = 0; k < users; ++k) {
    double total = 0;
    for (int m = 0; m < states; ++m)
      if (spec.deliverable(k, m)) total += std::pow(p, d(alloc.at(k, m)));
    const double c = std::min(1.0, 1.0 / total);
    for (int m = 0; m < states; ++m)
      if (spec.deliverable(k, m)) power[k][m] = c * std::pow(p, d(alloc.at(k, m)));
  }
  std::vector<double> rates;
  for (const auto& var : deliverable_variables(spec)) {
    const int k = var.user, m = var.order;
    double worst = std::numeric_limits<double>::infinity();
    for (int mp = 0; mp < states; ++mp) {
      if (spec.pi(k, mp) <= m) continue;
      const double gain = std::pow(p, d(spec.alpha(k, k, mp)));
      double noise = 1;
      for (int lower = m + 1; lower < states; ++lower) noise += gain * power[k][lower];
      for (int i = 0; i < users; ++i) {
        if (i == k) continue;
        double sent = 0;
        for (int o = 0; o < states; ++o) sent += power[i][o];
        noise += std::pow(p, d(spec.alpha(k, i, mp))) * sent;
      }
      worst = std::min(worst, gain * power[k][m] / noise);
    }
    rates.push_back(std::log1p(worst));
  }
  return rates;
}

}  // namespace

TEST_SUITE("evaluate") {
  TEST_CASE("achieved GDoF of the reference allocation is the extreme point") {
    const NetworkSpec spec = example_network();
    const GdofTuple t = extreme_point(spec);
    const PowerAllocation witness = PowerAllocation::layered({q("0"), q("-0.2"), q("-1")}, t);
    const GdofTuple achieved = achieved_gdof(spec, witness);
    CHECK(achieved == t);
    CHECK(achieved.at(1, 0) + achieved.at(1, 1) == q("0.7"));
    CHECK(achieved.at(2, 0) + achieved.at(2, 1) == q("0.4"));
  }

  TEST_CASE("full power everywhere on the worked example") {
    // Receiver 1 sees interference 1 from user 3: d_1 = 2 - 1.
    const NetworkSpec spec = example_network();
    PowerAllocation a(3, 2);
    const GdofTuple achieved = achieved_gdof(spec, a);
    CHECK(achieved.at(0, 0) == 0);  // r^{[1]} - r^{[2]} = 0 caps it
    PowerAllocation layered = PowerAllocation::layered({0, 0, 0}, GdofTuple::from_variables(spec, {3, 3, 3, 3, 3}));
    const GdofTuple g = achieved_gdof(spec, layered);
    CHECK(g.at(0, 0) == 1);
    CHECK(g.at(1, 0) == q("0.5"));  // min(1.5 - 0.6, 1 - 0.5)
    CHECK(g.at(0, 1) == 0);
  }

  TEST_CASE("feasible certificates deliver at least the tuple") {
    std::mt19937_64 rng(61);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
      const int users = 1 + trial % 4, states = 1 + trial % 3;
      const NetworkSpec spec = testing::random_tin_optimal_spec(rng, users, states);
      const GdofTuple t = testing::random_tuple(rng, spec, 12);
      const FeasibilityVerdict v = decide_feasibility(spec, t);
      if (!v.feasible()) continue;
      ++checked;
      const GdofTuple g = achieved_gdof(spec, v.allocation());
      for (const auto& var : deliverable_variables(spec)) CHECK(g.at(var.user, var.order) >= t.at(var.user, var.order));
    }
    CHECK(checked > 100);
  }

  TEST_CASE("finite-P rates converge on the worked example") {
    const NetworkSpec spec = example_network();
    const GdofTuple t = extreme_point(spec);
    const PowerAllocation a = decide_feasibility(spec, t).allocation();
    const std::vector<double> powers{1e4, 1e6, 1e8, 1e10};
    const auto reports = finite_p_report(spec, a, powers);
    REQUIRE(reports.size() == 4);
    const auto target = testing::flatten(spec, t);
    std::vector<double> previous(target.size(), std::numeric_limits<double>::infinity());
    for (const auto& r : reports) {
      REQUIRE(r.entries.size() == target.size());
      for (std::size_t n = 0; n < target.size(); ++n) {
        const double err = std::abs(r.entries[n].normalized - d(target[n]));
        CHECK(err <= previous[n]);
        previous[n] = err;
      }
    }
    for (std::size_t n = 0; n < target.size(); ++n) CHECK(previous[n] < 0.05);
  }

  TEST_CASE("log-domain rates match the linear-power model") {
    std::mt19937_64 rng(67);
    const std::vector<double> powers{10.0, 1e3, 1e5};
    for (int trial = 0; trial < 100; ++trial) {
      const int users = 1 + trial % 3, states = 1 + trial % 3;
      const NetworkSpec spec = testing::random_tin_optimal_spec(rng, users, states);
      const GdofTuple t = testing::random_tuple(rng, spec, 8);
      const FeasibilityVerdict v = decide_feasibility(spec, t);
      if (!v.feasible()) continue;
      const auto reports = finite_p_report(spec, v.allocation(), powers);
      for (std::size_t p = 0; p < powers.size(); ++p) {
        const auto expected = linear_rates(spec, v.allocation(), powers[p]);
        REQUIRE(reports[p].entries.size() == expected.size());
        for (std::size_t n = 0; n < expected.size(); ++n) {
          CHECK(reports[p].entries[n].rate == doctest::Approx(expected[n]).epsilon(1e-9));
          CHECK(reports[p].entries[n].normalized == doctest::Approx(expected[n] / std::log(powers[p])).epsilon(1e-9));
        }
      }
    }
  }

  TEST_CASE("P must exceed 1") {
    const NetworkSpec spec = example_network();
    const PowerAllocation a = PowerAllocation::layered({0, 0, 0}, GdofTuple::zeros(spec));
    const std::vector<double> bad{1.0};
    CHECK_THROWS_AS(finite_p_report(spec, a, bad), ValidationError);
  }

  TEST_CASE("oracle scan on the worked example") {
    const ScanResult r = oracle_membership_scan(example_network());
    CHECK(r.grid_size == 5 * 5 * 5 * 5 * 5);
    CHECK(r.scanned == r.grid_size);
    CHECK(r.disagreements.empty());
    CHECK(r.certificate_failures.empty());
    CHECK(r.members > 0);
    CHECK(r.members < r.scanned);
  }

  TEST_CASE("oracle scan on networks that are not TIN-optimal") {
    std::mt19937_64 rng(71);
    int failing = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const NetworkSpec spec = testing::random_spec(rng, 2, 1 + trial % 2);
      if (!check_tin_optimality(spec).holds) ++failing;
      const ScanResult r = oracle_membership_scan(spec, ScanOptions{Rational(1, 4), 20'000, std::nullopt});
      CHECK(r.disagreements.empty());
      CHECK(r.certificate_failures.empty());
    }
    CHECK(failing > 0);
  }

  TEST_CASE("sampled scans are reproducible") {
    const NetworkSpec spec = example_network();
    const ScanOptions options{Rational(1, 10), 2'000, 12345};
    const ScanResult a = oracle_membership_scan(spec, options), b = oracle_membership_scan(spec, options);
    CHECK(a.scanned == 2'000);
    CHECK(a.grid_size == 21ull * 21 * 21 * 21 * 21);
    CHECK(a.members == b.members);
    CHECK(a.disagreements.empty());

    const ScanResult prefix = oracle_membership_scan(spec, ScanOptions{Rational(1, 10), 2'000, std::nullopt});
    CHECK(prefix.scanned == 2'000);
    CHECK_THROWS_AS(oracle_membership_scan(spec, ScanOptions{Rational(0), 10, std::nullopt}), ValidationError);
  }
}
