#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tinopt/netmodel.hpp"

namespace tinopt {

/// Sum d_user^{[1]} + ... + d_user^{[cap]} (cap counts orders, 1..M).
struct Term {
  int user;
  int cap;
  auto operator<=>(const Term&) const = default;
};

/// Where an inequality came from. Individual: users = {k}, states = {m'}.
/// Cycle: users is the canonical cyclic sequence, states[n] the state of
/// users[n].
struct Provenance {
  enum class Kind { individual, cycle };
  Kind kind = Kind::individual;
  std::vector<int> users;
  std::vector<int> states;
  bool operator==(const Provenance&) const = default;
};

/// sum over lhs terms <= rhs. `lhs` holds at most one term per user, sorted
/// by user.
struct Inequality {
  std::vector<Term> lhs;
  Rational rhs;
  Provenance source;

  /// Canonical order: fewer users first, then users, then caps, then rhs.
  static bool canonical_less(const Inequality& a, const Inequality& b);
  std::string to_string() const;
};

std::string lhs_key(const std::vector<Term>& lhs);

/// Directed cycles over k-element user subsets, smallest index first,
/// remaining users in every order. Ordered by subset, then rotation order.
std::vector<std::vector<int>> cyclic_sequences(int users, int length);

/// Exact number of raw inequalities K M + sum_k' C(K,k') (k'-1)! M^k',
/// saturating at UINT64_MAX.
std::uint64_t raw_inequality_count(int users, int states);

struct RegionOptions {
  std::uint64_t max_inequalities = 10'000'000;
};

/// All individual and cycle bounds of the optimal region, canonically
/// sorted. Throws InstanceTooLarge above the configured cap.
std::vector<Inequality> enumerate_region(const NetworkSpec& spec, const RegionOptions& options = {});

/// Per lhs, keeps the smallest rhs (first in input order on ties).
std::vector<Inequality> deduplicate(std::vector<Inequality> ineqs);

/// True when `a` is implied by `b` under d >= 0 on term inclusion alone:
/// every term of b is covered by a term of a and rhs(a) <= rhs(b).
bool dominates(const Inequality& a, const Inequality& b);

enum class RedundancyPolicy {
  /// Single-user bounds are dropped only when another single-user bound
  /// dominates them; multi-user bounds go whenever the rest imply them.
  keep_individual,
  /// Every bound the rest imply is dropped: an irredundant system.
  minimal,
};

/// Subsystem defining the same polyhedron (together with d >= 0).
/// Deduplicates, drops term-dominated bounds, then removes bounds the
/// survivors imply by exact LP, in canonical order.
std::vector<Inequality> remove_redundant(std::vector<Inequality> ineqs,
                                         RedundancyPolicy policy = RedundancyPolicy::keep_individual);

/// True when `system` together with d >= 0 implies `target`.
bool implies(const std::vector<Inequality>& system, const Inequality& target);

/// Mutual LP implication of two systems (both with d >= 0).
bool same_polyhedron(const std::vector<Inequality>& a, const std::vector<Inequality>& b);

struct Membership {
  bool member = true;
  std::optional<Inequality> violated;        // first violated bound, if any
  std::optional<Variable> invalid;           // first negative or undeliverable-but-nonzero coordinate
};

/// Tests a tuple against the bounds and nonnegativity. Throws
/// ValidationError on dimension mismatch.
Membership is_member(const std::vector<Inequality>& ineqs, const NetworkSpec& spec, const GdofTuple& tuple);

/// Single-state region of one mixed state, each receiver's rate being the
/// group sum_{m <= pi_k(m_k)} d_k^{[m]}; deduplicated by lhs.
std::vector<Inequality> mixed_state_region(const NetworkSpec& spec, const MixedState& ms);

/// Union of mixed_state_region over every mixed state, deduplicated and
/// canonically sorted. Throws InstanceTooLarge when M^K > max_states.
std::vector<Inequality> region_via_mixed_states(const NetworkSpec& spec, std::size_t max_states = 1'000'000);

}  // namespace tinopt
