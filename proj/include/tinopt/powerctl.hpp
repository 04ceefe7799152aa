#pragma once

#include <stdexcept>
#include <vector>

#include "tinopt/netmodel.hpp"
#include "tinopt/potential.hpp"

namespace tinopt {

/// TIN decoding capability alpha_kk^{[m]} - max_{j != k} alpha_kj^{[m]}
/// (the max is 0 for a single user), laid out [k][m].
std::vector<Rational> tin_capability(const NetworkSpec& spec);

/// Threshold assignment ranking each receiver's states by capability:
/// pi_k(m') = 1 + #{m : cap(k, m) < cap(k, m')}. Laid out [k][m].
std::vector<int> natural_pi(const NetworkSpec& spec);

/// Per receiver, the state of largest capability (smallest index on ties).
std::vector<int> best_states(const NetworkSpec& spec);

/// Raised when the tuple admits no allocation at all.
class AllocationError : public std::runtime_error {
 public:
  AllocationError(const std::string& what, NegativeCircuit circuit)
      : std::runtime_error(what), circuit_(std::move(circuit)) {}
  const NegativeCircuit& circuit() const noexcept { return circuit_; }

 private:
  NegativeCircuit circuit_;
};

/// Single-state network in which receiver k always sits in best_states()[k],
/// decoding one message.
NetworkSpec auxiliary_network(const NetworkSpec& spec);

enum class AllocationMethod {
  auxiliary,  // potentials of the aggregate tuple on the auxiliary network
  potential,  // potentials of the full tuple on the original network
};

struct AllocationOutcome {
  PowerAllocation allocation;
  AllocationMethod method;
};

/// Base exponents from the potential allocation of the per-user aggregate
/// GDoF on the auxiliary network, then r^{[m+1]} = r^{[m]} - d^{[m]}.
/// The best-state network can miss a constraint of a weaker state; when its
/// allocation fails verify_certificate the exact allocation on the original
/// network is returned instead. Throws AllocationError when the tuple is
/// infeasible.
AllocationOutcome allocate(const NetworkSpec& spec, const GdofTuple& tuple);

std::string to_string(AllocationMethod method);

}  // namespace tinopt
