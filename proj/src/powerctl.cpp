#include "tinopt/powerctl.hpp"

namespace tinopt {

std::vector<Rational> tin_capability(const NetworkSpec& spec) {
  const int users = spec.users();
  const int states = spec.states();
  std::vector<Rational> cap(static_cast<std::size_t>(users) * states);
  for (int k = 0; k < users; ++k)
    for (int m = 0; m < states; ++m) {
      Rational strongest = 0;
      for (int j = 0; j < users; ++j)
        if (j != k) strongest = std::max(strongest, spec.alpha(k, j, m));
      cap[static_cast<std::size_t>(k) * states + m] = spec.alpha(k, k, m) - strongest;
    }
  return cap;
}

std::vector<int> natural_pi(const NetworkSpec& spec) {
  const int states = spec.states();
  const auto cap = tin_capability(spec);
  std::vector<int> pi(cap.size());
  for (int k = 0; k < spec.users(); ++k)
    for (int mp = 0; mp < states; ++mp) {
      int below = 0;
      for (int m = 0; m < states; ++m)
        if (cap[static_cast<std::size_t>(k) * states + m] < cap[static_cast<std::size_t>(k) * states + mp]) ++below;
      pi[static_cast<std::size_t>(k) * states + mp] = below + 1;
    }
  return pi;
}

std::vector<int> best_states(const NetworkSpec& spec) {
  const int states = spec.states();
  const auto cap = tin_capability(spec);
  std::vector<int> best(static_cast<std::size_t>(spec.users()), 0);
  for (int k = 0; k < spec.users(); ++k)
    for (int m = 1; m < states; ++m)
      if (cap[static_cast<std::size_t>(k) * states + m] > cap[static_cast<std::size_t>(k) * states + best[k]])
        best[static_cast<std::size_t>(k)] = m;
  return best;
}

NetworkSpec auxiliary_network(const NetworkSpec& spec) {
  const RationalMatrix a = mixed_state_alpha(spec, best_states(spec));
  const int users = spec.users();
  std::vector<Rational> alpha;
  alpha.reserve(static_cast<std::size_t>(users) * users);
  for (int k = 0; k < users; ++k)
    for (int i = 0; i < users; ++i) alpha.push_back(a(k, i));
  return NetworkSpec(users, 1, std::move(alpha), std::vector<int>(static_cast<std::size_t>(users), 1));
}

AllocationOutcome allocate(const NetworkSpec& spec, const GdofTuple& tuple) {
  validate_tuple(spec, tuple);
  const NetworkSpec aux = auxiliary_network(spec);
  GdofTuple aggregate(spec.users(), 1);
  for (int k = 0; k < spec.users(); ++k) aggregate.at(k, 0) = tuple.prefix_sum(k, spec.states());

  auto verdict = decide_feasibility(aux, aggregate);
  if (verdict.feasible()) {
    PowerAllocation alloc = PowerAllocation::layered(verdict.allocation().bases(), tuple);
    if (verify_certificate(spec, tuple, alloc)) return {std::move(alloc), AllocationMethod::auxiliary};
  }

  auto exact = decide_feasibility(spec, tuple);
  if (!exact.feasible())
    throw AllocationError("tuple is infeasible (negative circuit of length " +
                              format_rational(exact.circuit().length) + ")",
                          exact.circuit());
  return {exact.allocation(), AllocationMethod::potential};
}

std::string to_string(AllocationMethod method) {
  return method == AllocationMethod::auxiliary ? "auxiliary" : "potential";
}

}  // namespace tinopt
