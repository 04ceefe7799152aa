#include "tinopt/netmodel.hpp"

#include <algorithm>

namespace tinopt {

namespace {

std::string idx(std::initializer_list<std::size_t> parts) {
  std::string out;
  for (auto p : parts) out += "[" + std::to_string(p) + "]";
  return out;
}

}  // namespace

NetworkSpec::NetworkSpec(int users, int states, std::vector<Rational> alpha_values, std::vector<int> pi_values)
    : users_(users), states_(states), alpha_(std::move(alpha_values)), pi_(std::move(pi_values)) {
  if (users_ < 1) throw ValidationError("users", "must be at least 1");
  if (states_ < 1) throw ValidationError("states", "must be at least 1");
  const auto k_count = static_cast<std::size_t>(users_);
  const auto m_count = static_cast<std::size_t>(states_);
  if (alpha_.size() != m_count * k_count * k_count)
    throw ValidationError("alpha", "expected " + std::to_string(m_count * k_count * k_count) + " entries");
  if (pi_.size() != k_count * m_count)
    throw ValidationError("pi", "expected " + std::to_string(k_count * m_count) + " entries");

  for (int m = 0; m < states_; ++m)
    for (int k = 0; k < users_; ++k)
      for (int i = 0; i < users_; ++i)
        if (alpha(k, i, m) < 0)
          throw ValidationError("alpha" + idx({std::size_t(m), std::size_t(k), std::size_t(i)}),
                                "channel strength exponent must be nonnegative, got " +
                                    format_rational(alpha(k, i, m)));
  for (int k = 0; k < users_; ++k)
    for (int m = 0; m < states_; ++m)
      if (pi(k, m) < 1 || pi(k, m) > states_)
        throw ValidationError("pi" + idx({std::size_t(k), std::size_t(m)}),
                              "decoding threshold " + std::to_string(pi(k, m)) + " outside [1, " +
                                  std::to_string(states_) + "]");
}

int NetworkSpec::max_pi(int k) const {
  auto first = pi_.begin() + static_cast<std::ptrdiff_t>(k) * states_;
  return *std::max_element(first, first + states_);
}

RationalMatrix NetworkSpec::state_matrix(int m) const {
  RationalMatrix out(users_);
  for (int k = 0; k < users_; ++k)
    for (int i = 0; i < users_; ++i) out(k, i) = alpha(k, i, m);
  return out;
}

NetworkSpec NetworkSpec::with_pi(std::vector<int> pi) const {
  return NetworkSpec(users_, states_, alpha_, std::move(pi));
}

std::vector<Variable> deliverable_variables(const NetworkSpec& spec) {
  std::vector<Variable> vars;
  for (int m = 0; m < spec.states(); ++m)
    for (int k = 0; k < spec.users(); ++k)
      if (spec.deliverable(k, m)) vars.push_back({k, m});
  return vars;
}

GdofTuple::GdofTuple(int users, int orders, std::vector<Rational> values)
    : users_(users), orders_(orders), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(users) * orders)
    throw ValidationError("d", "expected " + std::to_string(users) + "x" + std::to_string(orders) + " entries");
}

GdofTuple GdofTuple::from_variables(const NetworkSpec& spec, const std::vector<Rational>& values) {
  auto vars = deliverable_variables(spec);
  if (values.size() != vars.size())
    throw ValidationError("d", "expected " + std::to_string(vars.size()) + " deliverable values, got " +
                                   std::to_string(values.size()));
  GdofTuple tuple = zeros(spec);
  for (std::size_t n = 0; n < vars.size(); ++n) tuple.at(vars[n].user, vars[n].order) = values[n];
  return tuple;
}

Rational GdofTuple::prefix_sum(int k, int count) const {
  Rational sum = 0;
  for (int m = 0; m < count; ++m) sum += at(k, m);
  return sum;
}

void validate_tuple(const NetworkSpec& spec, const GdofTuple& tuple) {
  if (tuple.users() != spec.users() || tuple.orders() != spec.states())
    throw ValidationError("d", "tuple is " + std::to_string(tuple.users()) + "x" + std::to_string(tuple.orders()) +
                                   ", network needs " + std::to_string(spec.users()) + "x" +
                                   std::to_string(spec.states()));
  for (int k = 0; k < spec.users(); ++k)
    for (int m = 0; m < spec.states(); ++m) {
      const auto& v = tuple.at(k, m);
      if (v < 0)
        throw ValidationError("d" + idx({std::size_t(k), std::size_t(m)}), "GDoF must be nonnegative");
      if (v != 0 && !spec.deliverable(k, m))
        throw ValidationError("d" + idx({std::size_t(k), std::size_t(m)}),
                              "message order is never decoded (undeliverable) and must be 0");
    }
}

PowerAllocation PowerAllocation::layered(const std::vector<Rational>& base, const GdofTuple& tuple) {
  PowerAllocation alloc(tuple.users(), tuple.orders());
  for (int k = 0; k < tuple.users(); ++k) {
    alloc.at(k, 0) = base[static_cast<std::size_t>(k)];
    for (int m = 0; m < tuple.orders(); ++m) alloc.at(k, m + 1) = alloc.at(k, m) - tuple.at(k, m);
  }
  return alloc;
}

bool PowerAllocation::is_ordered() const {
  for (int k = 0; k < users_; ++k) {
    if (at(k, 0) > 0) return false;
    for (int m = 0; m < orders_; ++m)
      if (at(k, m + 1) > at(k, m)) return false;
  }
  return true;
}

void validate_allocation(const NetworkSpec& spec, const PowerAllocation& alloc) {
  if (alloc.users() != spec.users() || alloc.orders() != spec.states())
    throw ValidationError("r", "allocation needs " + std::to_string(spec.users()) + " rows of " +
                                   std::to_string(spec.states() + 1) + " levels");
  for (int k = 0; k < alloc.users(); ++k) {
    if (alloc.at(k, 0) > 0) throw ValidationError("r" + idx({std::size_t(k), 0}), "power exponent must be <= 0");
    for (int m = 0; m < alloc.orders(); ++m)
      if (alloc.at(k, m + 1) > alloc.at(k, m))
        throw ValidationError("r" + idx({std::size_t(k), std::size_t(m + 1)}),
                              "power exponents must be nonincreasing in message order");
  }
}

RationalMatrix mixed_state_alpha(const NetworkSpec& spec, const MixedState& ms) {
  RationalMatrix out(spec.users());
  for (int k = 0; k < spec.users(); ++k)
    for (int i = 0; i < spec.users(); ++i) out(k, i) = spec.alpha(k, i, ms[static_cast<std::size_t>(k)]);
  return out;
}

std::size_t mixed_state_count(const NetworkSpec& spec, std::size_t limit) {
  std::size_t count = 1;
  for (int k = 0; k < spec.users(); ++k) {
    count *= static_cast<std::size_t>(spec.states());
    if (count > limit) return limit + 1;
  }
  return count;
}

NetworkSpec example_network() {
  auto r = [](const char* s) { return parse_rational(s); };
  std::vector<Rational> alpha = {
      // state 1
      r("2"), r("0.2"), r("1"),
      r("0.6"), r("1.5"), r("0.6"),
      r("0.1"), r("0.5"), r("1.5"),
      // state 2
      r("2"), r("0.2"), r("1"),
      r("0.5"), r("1"), r("0.5"),
      r("0.6"), r("0.3"), r("2"),
  };
  return NetworkSpec(3, 2, std::move(alpha), {1, 1, 2, 1, 1, 2});
}

}  // namespace tinopt
