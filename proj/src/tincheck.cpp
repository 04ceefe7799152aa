#include "tinopt/tincheck.hpp"

#include <string>

namespace tinopt {

namespace {

TinWitness make_witness(const NetworkSpec& spec, int k, int i, int j, int mk, int mj) {
  return {k, i, j, mk, mj, spec.alpha(k, k, mk), spec.alpha(j, k, mj), spec.alpha(k, i, mk)};
}

bool violates(const NetworkSpec& spec, int k, int i, int j, int mk, int mj) {
  return spec.alpha(k, k, mk) < spec.alpha(j, k, mj) + spec.alpha(k, i, mk);
}

}  // namespace

TinVerdict check_tin_optimality(const NetworkSpec& spec) {
  const int users = spec.users();
  const int states = spec.states();
  if (users < 2) return {};

  // caused_max[k][j]: strongest interference transmitter k causes at
  // receiver j over all of j's states; received_max[k][m]: strongest
  // interference receiver k sees in state m.
  std::vector<Rational> caused_max(static_cast<std::size_t>(users) * users);
  std::vector<Rational> received_max(static_cast<std::size_t>(users) * states);
  auto caused = [&](int k, int j) -> Rational& { return caused_max[static_cast<std::size_t>(k) * users + j]; };
  auto received = [&](int k, int m) -> Rational& { return received_max[static_cast<std::size_t>(k) * states + m]; };

  for (int k = 0; k < users; ++k)
    for (int j = 0; j < users; ++j) {
      if (j == k) continue;
      Rational best = spec.alpha(j, k, 0);
      for (int m = 1; m < states; ++m) best = std::max(best, spec.alpha(j, k, m));
      caused(k, j) = best;
    }
  for (int k = 0; k < users; ++k)
    for (int m = 0; m < states; ++m) {
      bool first = true;
      for (int i = 0; i < users; ++i) {
        if (i == k) continue;
        if (first || spec.alpha(k, i, m) > received(k, m)) received(k, m) = spec.alpha(k, i, m);
        first = false;
      }
    }

  for (int k = 0; k < users; ++k) {
    Rational caused_any;
    bool first = true;
    for (int j = 0; j < users; ++j) {
      if (j == k) continue;
      if (first || caused(k, j) > caused_any) caused_any = caused(k, j);
      first = false;
    }
    bool failing = false;
    for (int m = 0; m < states && !failing; ++m) failing = spec.alpha(k, k, m) < caused_any + received(k, m);
    if (!failing) continue;

    // Narrow down the lexicographically smallest (i, j, m_k, m_j) for this k.
    for (int i = 0; i < users; ++i) {
      if (i == k) continue;
      bool i_ok = false;
      for (int m = 0; m < states && !i_ok; ++m) i_ok = spec.alpha(k, k, m) < caused_any + spec.alpha(k, i, m);
      if (!i_ok) continue;
      for (int j = 0; j < users; ++j) {
        if (j == k) continue;
        for (int mk = 0; mk < states; ++mk) {
          if (!(spec.alpha(k, k, mk) < caused(k, j) + spec.alpha(k, i, mk))) continue;
          for (int mj = 0; mj < states; ++mj)
            if (violates(spec, k, i, j, mk, mj)) return {false, make_witness(spec, k, i, j, mk, mj)};
        }
      }
    }
  }
  return {};
}

TinVerdict check_tin_optimality_bruteforce(const NetworkSpec& spec, std::size_t max_states) {
  if (mixed_state_count(spec, max_states) > max_states)
    throw InstanceTooLarge("M^K mixed states exceed the limit of " + std::to_string(max_states));
  const int users = spec.users();
  if (users < 2) return {};

  std::optional<TinWitness> best;
  for_each_mixed_state(users, spec.states(), [&](const MixedState& ms) {
    RationalMatrix a = mixed_state_alpha(spec, ms);
    for (int k = 0; k < users; ++k) {
      // Single-state condition on this matrix: a_kk >= max_j a_jk + max_i a_ki.
      for (int i = 0; i < users; ++i) {
        if (i == k) continue;
        for (int j = 0; j < users; ++j) {
          if (j == k) continue;
          if (!(a(k, k) < a(j, k) + a(k, i))) continue;
          TinWitness w = make_witness(spec, k, i, j, ms[k], ms[j]);
          if (!best || w.key() < best->key()) best = w;
        }
      }
    }
  });
  if (!best) return {};
  return {false, best};
}

}  // namespace tinopt
