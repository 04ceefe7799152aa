#include "tinopt/region.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "tinopt/lp.hpp"

namespace tinopt {

namespace {

std::vector<int> users_of(const std::vector<Term>& lhs) {
  std::vector<int> out;
  for (const auto& t : lhs) out.push_back(t.user);
  return out;
}

std::vector<Term> sorted_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end());
  return terms;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return b > std::numeric_limits<std::uint64_t>::max() - a ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

// Cycle bounds of a single K x K matrix, with receiver k's rate given by
// the group term group[k].
void append_cycle_bounds(const RationalMatrix& a, const std::vector<Term>& group, const std::vector<int>& states,
                         std::vector<Inequality>& out) {
  const int users = a.size();
  for (int length = 2; length <= users; ++length)
    for (const auto& seq : cyclic_sequences(users, length)) {
      Inequality ineq;
      ineq.rhs = 0;
      ineq.source.kind = Provenance::Kind::cycle;
      ineq.source.users = seq;
      for (std::size_t n = 0; n < seq.size(); ++n) {
        const int cur = seq[n];
        const int next = seq[(n + 1) % seq.size()];
        ineq.lhs.push_back(group[static_cast<std::size_t>(cur)]);
        ineq.rhs += a(cur, cur) - a(cur, next);
        ineq.source.states.push_back(states[static_cast<std::size_t>(cur)]);
      }
      ineq.lhs = sorted_terms(std::move(ineq.lhs));
      out.push_back(std::move(ineq));
    }
}

void sort_canonical(std::vector<Inequality>& ineqs) {
  std::stable_sort(ineqs.begin(), ineqs.end(), Inequality::canonical_less);
}

}  // namespace

bool Inequality::canonical_less(const Inequality& a, const Inequality& b) {
  if (a.lhs.size() != b.lhs.size()) return a.lhs.size() < b.lhs.size();
  auto ua = users_of(a.lhs), ub = users_of(b.lhs);
  if (ua != ub) return ua < ub;
  if (a.lhs != b.lhs) return a.lhs < b.lhs;
  return a.rhs < b.rhs;
}

std::string lhs_key(const std::vector<Term>& lhs) {
  std::string out;
  for (const auto& t : lhs)
    for (int m = 0; m < t.cap; ++m) {
      if (!out.empty()) out += " + ";
      out += "d" + std::to_string(t.user + 1) + "[" + std::to_string(m + 1) + "]";
    }
  return out;
}

std::string Inequality::to_string() const { return lhs_key(lhs) + " <= " + format_rational(rhs); }

std::vector<std::vector<int>> cyclic_sequences(int users, int length) {
  std::vector<std::vector<int>> out;
  if (length < 2 || length > users) return out;
  // Walk k-subsets in lexicographic order via a selection mask.
  std::vector<bool> pick(static_cast<std::size_t>(users), false);
  std::fill(pick.begin(), pick.begin() + length, true);
  do {
    std::vector<int> subset;
    for (int u = 0; u < users; ++u)
      if (pick[static_cast<std::size_t>(u)]) subset.push_back(u);
    do {
      out.push_back(subset);
    } while (std::next_permutation(subset.begin() + 1, subset.end()));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

std::uint64_t raw_inequality_count(int users, int states) {
  const auto m = static_cast<std::uint64_t>(states);
  std::uint64_t total = saturating_mul(static_cast<std::uint64_t>(users), m);
  for (int length = 2; length <= users; ++length) {
    // C(K, k') (k'-1)! = K! / (k' (K-k')!)
    std::uint64_t cycles = 1;
    for (int f = users - length + 1; f <= users; ++f) cycles = saturating_mul(cycles, static_cast<std::uint64_t>(f));
    if (cycles != std::numeric_limits<std::uint64_t>::max()) cycles /= static_cast<std::uint64_t>(length);
    std::uint64_t tuples = 1;
    for (int n = 0; n < length; ++n) tuples = saturating_mul(tuples, m);
    total = saturating_add(total, saturating_mul(cycles, tuples));
  }
  return total;
}

std::vector<Inequality> enumerate_region(const NetworkSpec& spec, const RegionOptions& options) {
  const int users = spec.users();
  const int states = spec.states();
  const std::uint64_t count = raw_inequality_count(users, states);
  if (count > options.max_inequalities)
    throw InstanceTooLarge("region has " + std::to_string(count) + " raw inequalities, above the cap of " +
                           std::to_string(options.max_inequalities));

  std::vector<Inequality> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < users; ++k)
    for (int m = 0; m < states; ++m)
      out.push_back({{{k, spec.pi(k, m)}}, spec.alpha(k, k, m), {Provenance::Kind::individual, {k}, {m}}});

  for (int length = 2; length <= users; ++length)
    for (const auto& seq : cyclic_sequences(users, length)) {
      std::vector<int> st(static_cast<std::size_t>(length), 0);
      while (true) {
        Inequality ineq;
        ineq.rhs = 0;
        ineq.source = {Provenance::Kind::cycle, seq, st};
        for (int n = 0; n < length; ++n) {
          const int cur = seq[static_cast<std::size_t>(n)];
          const int next = seq[static_cast<std::size_t>((n + 1) % length)];
          const int m = st[static_cast<std::size_t>(n)];
          ineq.lhs.push_back({cur, spec.pi(cur, m)});
          ineq.rhs += spec.alpha(cur, cur, m) - spec.alpha(cur, next, m);
        }
        ineq.lhs = sorted_terms(std::move(ineq.lhs));
        out.push_back(std::move(ineq));

        int pos = length - 1;
        while (pos >= 0 && st[static_cast<std::size_t>(pos)] == states - 1) st[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
        ++st[static_cast<std::size_t>(pos)];
      }
    }
  sort_canonical(out);
  return out;
}

std::vector<Inequality> deduplicate(std::vector<Inequality> ineqs) {
  std::map<std::vector<Term>, std::size_t> best;
  std::vector<Inequality> out;
  for (auto& ineq : ineqs) {
    auto [it, inserted] = best.emplace(ineq.lhs, out.size());
    if (inserted) {
      out.push_back(std::move(ineq));
    } else if (ineq.rhs < out[it->second].rhs) {
      out[it->second] = std::move(ineq);
    }
  }
  sort_canonical(out);
  return out;
}

bool dominates(const Inequality& a, const Inequality& b) {
  if (a.rhs > b.rhs) return false;
  for (const auto& tb : b.lhs) {
    auto it = std::find_if(a.lhs.begin(), a.lhs.end(), [&](const Term& ta) { return ta.user == tb.user; });
    if (it == a.lhs.end() || it->cap < tb.cap) return false;
  }
  return true;
}

bool implies(const std::vector<Inequality>& system, const Inequality& target) {
  for (const auto& ineq : system)
    if (dominates(ineq, target)) return true;

  std::map<Variable, std::size_t> column;
  auto collect = [&](const Inequality& ineq) {
    for (const auto& t : ineq.lhs)
      for (int m = 0; m < t.cap; ++m) column.emplace(Variable{t.user, m}, 0);
  };
  collect(target);
  for (const auto& ineq : system) collect(ineq);
  std::size_t n = 0;
  for (auto& [var, col] : column) col = n++;

  auto row_of = [&](const Inequality& ineq) {
    std::vector<Rational> row(n);
    for (const auto& t : ineq.lhs)
      for (int m = 0; m < t.cap; ++m) row[column.at({t.user, m})] = 1;
    return row;
  };
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (const auto& ineq : system) {
    a.push_back(row_of(ineq));
    b.push_back(ineq.rhs);
  }
  const auto result = lp::maximize(a, b, row_of(target));
  switch (result.status) {
    case lp::Status::infeasible: return true;
    case lp::Status::unbounded: return false;
    case lp::Status::optimal: return result.value <= target.rhs;
  }
  return false;
}

std::vector<Inequality> remove_redundant(std::vector<Inequality> ineqs, RedundancyPolicy policy) {
  auto unique = deduplicate(std::move(ineqs));
  const bool keep_individual = policy == RedundancyPolicy::keep_individual;
  auto protected_bound = [&](const Inequality& ineq) { return keep_individual && ineq.lhs.size() == 1; };

  std::vector<Inequality> undominated;
  for (std::size_t b = 0; b < unique.size(); ++b) {
    bool dominated = false;
    for (std::size_t a = 0; a < unique.size() && !dominated; ++a) {
      if (a == b || (protected_bound(unique[b]) && unique[a].lhs.size() != 1)) continue;
      dominated = dominates(unique[a], unique[b]);
    }
    if (!dominated) undominated.push_back(unique[b]);
  }

  // Sequential LP certification: a bound implied by the current survivors is
  // dropped; survivors stay irredundant since later removals only enlarge
  // the feasible set of the others.
  std::vector<Inequality> current = std::move(undominated);
  for (std::size_t n = 0; n < current.size();) {
    if (protected_bound(current[n])) {
      ++n;
      continue;
    }
    std::vector<Inequality> others;
    others.reserve(current.size() - 1);
    for (std::size_t o = 0; o < current.size(); ++o)
      if (o != n) others.push_back(current[o]);
    if (implies(others, current[n])) {
      current.erase(current.begin() + static_cast<std::ptrdiff_t>(n));
    } else {
      ++n;
    }
  }
  return current;
}

bool same_polyhedron(const std::vector<Inequality>& a, const std::vector<Inequality>& b) {
  for (const auto& ineq : b)
    if (!implies(a, ineq)) return false;
  for (const auto& ineq : a)
    if (!implies(b, ineq)) return false;
  return true;
}

Membership is_member(const std::vector<Inequality>& ineqs, const NetworkSpec& spec, const GdofTuple& tuple) {
  if (tuple.users() != spec.users() || tuple.orders() != spec.states())
    throw ValidationError("d", "tuple is " + std::to_string(tuple.users()) + "x" + std::to_string(tuple.orders()) +
                                   ", network needs " + std::to_string(spec.users()) + "x" +
                                   std::to_string(spec.states()));
  Membership result;
  for (int m = 0; m < spec.states() && result.member; ++m)
    for (int k = 0; k < spec.users(); ++k) {
      const auto& v = tuple.at(k, m);
      if (v < 0 || (v != 0 && !spec.deliverable(k, m))) {
        result.member = false;
        result.invalid = Variable{k, m};
        break;
      }
    }
  if (!result.member) return result;

  for (const auto& ineq : ineqs) {
    Rational sum = 0;
    for (const auto& t : ineq.lhs) sum += tuple.prefix_sum(t.user, t.cap);
    if (sum > ineq.rhs) {
      result.member = false;
      result.violated = ineq;
      return result;
    }
  }
  return result;
}

std::vector<Inequality> mixed_state_region(const NetworkSpec& spec, const MixedState& ms) {
  const RationalMatrix a = mixed_state_alpha(spec, ms);
  std::vector<Term> group;
  for (int k = 0; k < spec.users(); ++k) group.push_back({k, spec.pi(k, ms[static_cast<std::size_t>(k)])});

  std::vector<Inequality> out;
  for (int k = 0; k < spec.users(); ++k)
    out.push_back({{group[static_cast<std::size_t>(k)]},
                   a(k, k),
                   {Provenance::Kind::individual, {k}, {ms[static_cast<std::size_t>(k)]}}});
  append_cycle_bounds(a, group, ms, out);
  return deduplicate(std::move(out));
}

std::vector<Inequality> region_via_mixed_states(const NetworkSpec& spec, std::size_t max_states) {
  if (mixed_state_count(spec, max_states) > max_states)
    throw InstanceTooLarge("M^K mixed states exceed the limit of " + std::to_string(max_states));
  std::vector<Inequality> all;
  for_each_mixed_state(spec.users(), spec.states(), [&](const MixedState& ms) {
    auto part = mixed_state_region(spec, ms);
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  });
  return deduplicate(std::move(all));
}

}  // namespace tinopt
