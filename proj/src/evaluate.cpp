#include "tinopt/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace tinopt {

namespace {

double to_double(const Rational& r) { return r.convert_to<double>(); }

// ln(sum exp(x)) over the given exponents.
double log_sum_exp(const std::vector<double>& xs) {
  const double top = *std::max_element(xs.begin(), xs.end());
  double sum = 0;
  for (double x : xs) sum += std::exp(x - top);
  return top + std::log(sum);
}

// ln(1 + e^x) without overflow.
double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

}  // namespace

GdofTuple achieved_gdof(const NetworkSpec& spec, const PowerAllocation& alloc) {
  validate_allocation(spec, alloc);
  const int users = spec.users();
  GdofTuple out = GdofTuple::zeros(spec);
  for (int k = 0; k < users; ++k)
    for (int m = 0; m < spec.states(); ++m) {
      if (!spec.deliverable(k, m)) continue;
      Rational best = alloc.at(k, m) - alloc.at(k, m + 1);
      for (int mp = 0; mp < spec.states(); ++mp) {
        if (spec.pi(k, mp) < m + 1) continue;
        Rational interference = 0;
        for (int i = 0; i < users; ++i)
          if (i != k) interference = std::max(interference, spec.alpha(k, i, mp) + alloc.base(i));
        best = std::min(best, spec.alpha(k, k, mp) + alloc.at(k, m) - interference);
      }
      out.at(k, m) = std::max(Rational(0), best);
    }
  return out;
}

std::vector<RateReport> finite_p_report(const NetworkSpec& spec, const PowerAllocation& alloc,
                                        std::span<const double> powers) {
  validate_allocation(spec, alloc);
  const int users = spec.users();
  const int states = spec.states();

  std::vector<double> r(static_cast<std::size_t>(users) * states);
  for (int k = 0; k < users; ++k)
    for (int m = 0; m < states; ++m) r[static_cast<std::size_t>(k) * states + m] = to_double(alloc.at(k, m));
  auto level = [&](int k, int m) { return r[static_cast<std::size_t>(k) * states + m]; };

  std::vector<RateReport> reports;
  for (double power : powers) {
    if (!(power > 1)) throw ValidationError("p", "every P must exceed 1, got " + format_double(power));
    const double log_p = std::log(power);

    // ln of the received exponent of every transmitted layer of user i,
    // before the channel gain: r_i^{[m]} ln P + ln c_i.
    std::vector<std::vector<double>> tx(static_cast<std::size_t>(users));
    for (int i = 0; i < users; ++i) {
      auto& layers = tx[static_cast<std::size_t>(i)];
      for (int m = 0; m < states; ++m)
        layers.push_back(spec.deliverable(i, m) ? level(i, m) * log_p : -std::numeric_limits<double>::infinity());
      std::vector<double> live;
      for (double x : layers)
        if (std::isfinite(x)) live.push_back(x);
      const double log_scale = -std::max(0.0, log_sum_exp(live));
      for (double& x : layers) x += log_scale;
    }
    auto layer = [&](int i, int m) { return tx[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)]; };

    RateReport report{power, {}};
    for (const auto& var : deliverable_variables(spec)) {
      const int k = var.user;
      const int m = var.order;
      RateEntry entry{k, m, {}, 0, 0};
      double worst = std::numeric_limits<double>::infinity();
      for (int mp = 0; mp < states; ++mp) {
        if (spec.pi(k, mp) < m + 1) continue;
        const double direct = to_double(spec.alpha(k, k, mp)) * log_p;
        std::vector<double> noise{0.0};  // thermal noise at unit power
        for (int lower = m + 1; lower < states; ++lower)
          if (std::isfinite(layer(k, lower))) noise.push_back(direct + layer(k, lower));
        for (int i = 0; i < users; ++i) {
          if (i == k) continue;
          const double cross = to_double(spec.alpha(k, i, mp)) * log_p;
          for (int other = 0; other < states; ++other)
            if (std::isfinite(layer(i, other))) noise.push_back(cross + layer(i, other));
        }
        const double log_sinr = direct + layer(k, m) - log_sum_exp(noise);
        entry.sinr.push_back({mp, std::exp(log_sinr)});
        worst = std::min(worst, log_sinr);
      }
      entry.rate = softplus(worst);
      entry.normalized = entry.rate / log_p;
      report.entries.push_back(std::move(entry));
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

ScanResult oracle_membership_scan(const NetworkSpec& spec, const ScanOptions& options) {
  return oracle_membership_scan(spec, deduplicate(enumerate_region(spec)), options);
}

ScanResult oracle_membership_scan(const NetworkSpec& spec, const std::vector<Inequality>& region,
                                  const ScanOptions& options) {
  if (options.step <= 0) throw ValidationError("step", "grid step must be positive");
  const auto vars = deliverable_variables(spec);

  Rational alpha_max = 0;
  for (const auto& a : spec.alpha_data()) alpha_max = std::max(alpha_max, a);
  const Rational levels_exact = alpha_max / options.step;
  const auto values = static_cast<std::size_t>(numerator(levels_exact) / denominator(levels_exact)) + 1;

  ScanResult result;
  result.grid_size = 1;
  for (std::size_t n = 0; n < vars.size(); ++n) {
    if (result.grid_size > std::numeric_limits<std::size_t>::max() / values) {
      result.grid_size = std::numeric_limits<std::size_t>::max();
      break;
    }
    result.grid_size *= values;
  }
  const std::size_t total = std::min(result.grid_size, options.cap);
  const bool sampled = options.seed && result.grid_size > options.cap;

  std::mt19937_64 rng(options.seed.value_or(0));
  std::uniform_int_distribution<std::size_t> pick(0, values - 1);
  std::vector<std::size_t> index(vars.size(), 0);

  for (std::size_t point = 0; point < total; ++point) {
    if (sampled)
      for (auto& i : index) i = pick(rng);

    GdofTuple tuple = GdofTuple::zeros(spec);
    for (std::size_t n = 0; n < vars.size(); ++n)
      tuple.at(vars[n].user, vars[n].order) = options.step * static_cast<long long>(index[n]);

    const bool member = is_member(region, spec, tuple).member;
    const auto verdict = decide_feasibility(spec, tuple);
    ++result.scanned;
    if (member) ++result.members;
    if (member != verdict.feasible()) result.disagreements.push_back({tuple, member, verdict.feasible()});

    if (verdict.feasible()) {
      for (const auto& v : certificate_violations(spec, tuple, verdict.allocation()))
        result.certificate_failures.push_back("point " + std::to_string(point) + ": " + v.to_string());
    } else if (!verify_circuit(build_graph(spec, tuple), verdict.circuit())) {
      result.certificate_failures.push_back("point " + std::to_string(point) + ": invalid negative circuit");
    }

    if (!sampled)
      for (std::size_t n = vars.size(); n-- > 0;) {
        if (++index[n] < values) break;
        index[n] = 0;
      }
  }
  return result;
}

}  // namespace tinopt
