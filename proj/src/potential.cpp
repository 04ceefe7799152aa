#include "tinopt/potential.hpp"

#include <algorithm>
#include <cassert>

namespace tinopt {

namespace {

struct Edge {
  int tail;
  int head;
  std::optional<int> label;
  Rational length;
};

// Per (tail, head) minimum over parallel arcs; smallest label wins ties.
std::vector<Edge> collapse(const PotentialGraph& graph) {
  const int n = graph.node_count();
  std::vector<std::optional<Edge>> best(static_cast<std::size_t>(n) * n);
  for (const auto& arc : graph.arcs) {
    auto& slot = best[static_cast<std::size_t>(arc.tail) * n + arc.head];
    if (!slot || arc.length < slot->length || (arc.length == slot->length && arc.label < slot->label))
      slot = Edge{arc.tail, arc.head, arc.label, arc.length};
  }
  std::vector<Edge> edges;
  for (auto& slot : best)
    if (slot) edges.push_back(std::move(*slot));
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.head, a.tail) < std::tie(b.head, b.tail);
  });
  return edges;
}

std::string label_text(const char* prefix, int k, int j, int state) {
  std::string s = std::string(prefix) + " k=" + std::to_string(k + 1);
  if (j >= 0) s += " j=" + std::to_string(j + 1);
  if (state >= 0) s += " state=" + std::to_string(state + 1);
  return s;
}

}  // namespace

const Arc* PotentialGraph::find(int tail, int head, std::optional<int> label) const {
  for (const auto& arc : arcs)
    if (arc.tail == tail && arc.head == head && arc.label == label) return &arc;
  return nullptr;
}

PotentialGraph build_graph(const NetworkSpec& spec, const GdofTuple& tuple) {
  validate_tuple(spec, tuple);
  const int users = spec.users();
  const int states = spec.states();
  PotentialGraph graph;
  graph.users = users;
  graph.arcs.reserve(static_cast<std::size_t>(users) * (1 + static_cast<std::size_t>(users) * states));

  for (int k = 0; k < users; ++k) graph.arcs.push_back({source_node, user_node(k), std::nullopt, 0});

  std::vector<Rational> slack(static_cast<std::size_t>(users) * states);  // alpha_kk - D_k(m')
  for (int k = 0; k < users; ++k)
    for (int m = 0; m < states; ++m)
      slack[static_cast<std::size_t>(k) * states + m] = spec.alpha(k, k, m) - tuple.prefix_sum(k, spec.pi(k, m));

  for (int k = 0; k < users; ++k)
    for (int m = 0; m < states; ++m)
      graph.arcs.push_back({user_node(k), source_node, m, slack[static_cast<std::size_t>(k) * states + m]});

  for (int k = 0; k < users; ++k)
    for (int j = 0; j < users; ++j) {
      if (j == k) continue;
      for (int m = 0; m < states; ++m)
        graph.arcs.push_back(
            {user_node(k), user_node(j), m, slack[static_cast<std::size_t>(k) * states + m] - spec.alpha(k, j, m)});
    }
  return graph;
}

FeasibilityVerdict decide_feasibility(const NetworkSpec& spec, const GdofTuple& tuple) {
  const PotentialGraph graph = build_graph(spec, tuple);
  const std::vector<Edge> edges = collapse(graph);
  const int n = graph.node_count();

  std::vector<std::optional<Rational>> dist(static_cast<std::size_t>(n));
  std::vector<const Edge*> pred(static_cast<std::size_t>(n), nullptr);
  dist[source_node] = Rational(0);

  auto relax = [&](const Edge& e) {
    const auto& from = dist[static_cast<std::size_t>(e.tail)];
    if (!from) return false;
    Rational candidate = *from + e.length;
    auto& to = dist[static_cast<std::size_t>(e.head)];
    if (to && candidate >= *to) return false;
    to = std::move(candidate);
    pred[static_cast<std::size_t>(e.head)] = &e;
    return true;
  };

  for (int round = 0; round < n - 1; ++round) {
    bool changed = false;
    for (const auto& e : edges) changed = relax(e) || changed;
    if (!changed) break;
  }

  const Edge* trigger = nullptr;
  for (const auto& e : edges)
    if (relax(e)) {
      trigger = &e;
      break;
    }

  if (!trigger) {
    std::vector<Rational> base;
    for (int k = 0; k < spec.users(); ++k) base.push_back(*dist[static_cast<std::size_t>(user_node(k))]);
    return {PowerAllocation::layered(base, tuple)};
  }

  // Walk back n steps to land on the cycle, then trace it once.
  int node = trigger->head;
  for (int step = 0; step < n; ++step) node = pred[static_cast<std::size_t>(node)]->tail;
  std::vector<const Edge*> cycle;
  int walker = node;
  do {
    const Edge* e = pred[static_cast<std::size_t>(walker)];
    cycle.push_back(e);
    walker = e->tail;
  } while (walker != node);
  std::reverse(cycle.begin(), cycle.end());

  // Start at the smallest node so the reported circuit does not depend on
  // where the walk entered it.
  auto start = std::min_element(cycle.begin(), cycle.end(), [](const Edge* a, const Edge* b) { return a->tail < b->tail; });
  std::rotate(cycle.begin(), start, cycle.end());

  NegativeCircuit circuit;
  circuit.length = 0;
  for (const Edge* e : cycle) {
    circuit.arcs.push_back({e->tail, e->head, e->label, e->length});
    circuit.length += e->length;
  }
  assert(circuit.length < 0);
  return {std::move(circuit)};
}

std::string CertificateViolation::to_string() const {
  switch (kind) {
    case Kind::nonpositive: return label_text("r_k <= 0", k, -1, -1) + " actual=" + format_rational(actual);
    case Kind::individual:
      return label_text("r_k >= D_k - a_kk", k, -1, state) + " required=" + format_rational(required) +
             " actual=" + format_rational(actual);
    case Kind::pairwise:
      return label_text("r_k - r_j >= D_k - a_kk + a_kj", k, j, state) + " required=" + format_rational(required) +
             " actual=" + format_rational(actual);
  }
  return {};
}

std::vector<CertificateViolation> certificate_violations(const NetworkSpec& spec, const GdofTuple& tuple,
                                                         const PowerAllocation& alloc) {
  validate_tuple(spec, tuple);
  if (alloc.users() != spec.users() || alloc.orders() != spec.states())
    throw ValidationError("r", "allocation dimensions do not match the network");
  using Kind = CertificateViolation::Kind;
  std::vector<CertificateViolation> out;
  for (int k = 0; k < spec.users(); ++k) {
    const Rational& rk = alloc.base(k);
    if (rk > 0) out.push_back({Kind::nonpositive, k, -1, -1, 0, rk});
    for (int m = 0; m < spec.states(); ++m) {
      const Rational need = tuple.prefix_sum(k, spec.pi(k, m)) - spec.alpha(k, k, m);
      if (rk < need) out.push_back({Kind::individual, k, -1, m, need, rk});
      for (int j = 0; j < spec.users(); ++j) {
        if (j == k) continue;
        const Rational pair_need = need + spec.alpha(k, j, m);
        const Rational diff = rk - alloc.base(j);
        if (diff < pair_need) out.push_back({Kind::pairwise, k, j, m, pair_need, diff});
      }
    }
  }
  return out;
}

bool verify_circuit(const PotentialGraph& graph, const NegativeCircuit& circuit) {
  if (circuit.arcs.empty()) return false;
  Rational total = 0;
  for (std::size_t n = 0; n < circuit.arcs.size(); ++n) {
    const Arc& arc = circuit.arcs[n];
    const Arc* stored = graph.find(arc.tail, arc.head, arc.label);
    if (!stored || stored->length != arc.length) return false;
    if (circuit.arcs[(n + 1) % circuit.arcs.size()].tail != arc.head) return false;
    total += arc.length;
  }
  return total == circuit.length && total < 0;
}

}  // namespace tinopt
