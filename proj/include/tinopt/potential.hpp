#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tinopt/netmodel.hpp"

namespace tinopt {

/// Node 0 is the source u; node k + 1 is user k's node v_k.
constexpr int source_node = 0;
constexpr int user_node(int k) { return k + 1; }

struct Arc {
  int tail;
  int head;
  std::optional<int> label;  // state m'; absent on u -> v_k
  Rational length;
  bool operator==(const Arc&) const = default;
};

/// Labeled multi-digraph on {u, v_1, ..., v_K}:
///   u -> v_k                 length 0
///   v_k -> u, label m'       alpha_kk - D_k(m')
///   v_k -> v_j, label m'     alpha_kk - D_k(m') - alpha_kj
/// with D_k(m') = sum_{m <= pi_k(m')} d_k^{[m]}. Arcs are stored in that
/// group order, each group by tail, head, then label.
struct PotentialGraph {
  int users = 0;
  std::vector<Arc> arcs;

  int node_count() const { return users + 1; }
  /// The arc (tail, head, label) if present.
  const Arc* find(int tail, int head, std::optional<int> label) const;
};

PotentialGraph build_graph(const NetworkSpec& spec, const GdofTuple& tuple);

/// Simple directed circuit of strictly negative total length.
struct NegativeCircuit {
  std::vector<Arc> arcs;
  Rational length;
};

struct FeasibilityVerdict {
  std::variant<PowerAllocation, NegativeCircuit> result;

  bool feasible() const { return std::holds_alternative<PowerAllocation>(result); }
  const PowerAllocation& allocation() const { return std::get<PowerAllocation>(result); }
  const NegativeCircuit& circuit() const { return std::get<NegativeCircuit>(result); }
};

/// Bellman-Ford from u on the graph with parallel arcs collapsed to their
/// minimum. Feasible: r_k^{[1]} = dist(u, v_k), the pointwise largest
/// potential with p(u) = 0, layered down by the tuple. Infeasible: the
/// negative circuit found in the predecessor graph, with each hop carrying
/// its shortest label (smallest on ties).
FeasibilityVerdict decide_feasibility(const NetworkSpec& spec, const GdofTuple& tuple);

/// One constraint of the base-power system the allocation breaks.
struct CertificateViolation {
  enum class Kind {
    nonpositive,  // r_k <= 0
    individual,   // r_k >= D_k(m') - alpha_kk^{[m']}
    pairwise,     // r_k - r_j >= D_k(m') - alpha_kk^{[m']} + alpha_kj^{[m']}
  };
  Kind kind;
  int k;
  int j = -1;
  int state = -1;
  Rational required;  // lower bound on r_k (or r_k - r_j); upper bound 0 for nonpositive
  Rational actual;
  std::string to_string() const;
};

/// Every constraint of the base-power system violated by alloc's r^{[1]}.
std::vector<CertificateViolation> certificate_violations(const NetworkSpec& spec, const GdofTuple& tuple,
                                                         const PowerAllocation& alloc);

inline bool verify_certificate(const NetworkSpec& spec, const GdofTuple& tuple, const PowerAllocation& alloc) {
  return certificate_violations(spec, tuple, alloc).empty();
}

/// True when every arc of the circuit exists in the graph with the stated
/// length, the arcs chain head-to-tail into a closed walk, and the stated
/// total is their strictly negative sum.
bool verify_circuit(const PotentialGraph& graph, const NegativeCircuit& circuit);

}  // namespace tinopt
