#pragma once

#include <cstddef>
#include <optional>

#include "tinopt/netmodel.hpp"

namespace tinopt {

/// A quintuple (k, i, j, m_k, m_j) with i != k, j != k for which
///   alpha_kk^{[m_k]} < alpha_jk^{[m_j]} + alpha_ki^{[m_k]}.
struct TinWitness {
  int k, i, j, state_k, state_j;
  Rational direct;        // alpha_kk^{[m_k]}
  Rational caused;        // alpha_jk^{[m_j]}: interference transmitter k causes at receiver j
  Rational received;      // alpha_ki^{[m_k]}: interference receiver k sees from transmitter i

  auto key() const { return std::tuple(k, i, j, state_k, state_j); }
  bool operator==(const TinWitness&) const = default;
};

struct TinVerdict {
  bool holds = true;
  std::optional<TinWitness> witness;  // lexicographically smallest violation
  bool operator==(const TinVerdict&) const = default;
};

/// Decides the TIN-optimality condition over every mixed state in O(K^2 M)
/// using per-receiver interference maxima.
TinVerdict check_tin_optimality(const NetworkSpec& spec);

/// Enumerates all M^K mixed states and tests the single-state condition on
/// each. Throws InstanceTooLarge when M^K exceeds `max_states`.
TinVerdict check_tin_optimality_bruteforce(const NetworkSpec& spec, std::size_t max_states = 1'000'000);

}  // namespace tinopt
