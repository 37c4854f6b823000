#include "interlace/bounds.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

namespace interlace {
namespace {

// Minimum number of deletions that leave the alive-induced subgraph acyclic,
// never deleting a forced vertex. Empty when some cycle consists of forced
// vertices only. Branch and bound: split into strongly connected components,
// then branch over the vertices of a shortest cycle.
class FvsSolver {
 public:
  FvsSolver(const Digraph& g, const std::vector<char>& forced)
      : g_(g), forced_(forced) {}

  std::optional<int> solve(const std::vector<char>& alive) {
    std::vector<VertexId> keep;
    for (VertexId v = 0; v < g_.vertex_count(); ++v)
      if (alive[v]) keep.push_back(v);
    if (keep.empty()) return 0;
    auto sub = induced_subgraph(g_, keep);
    int total = 0;
    for (const auto& comp : strongly_connected_components(sub.graph)) {
      if (comp.size() < 2) continue;
      std::vector<char> scoped(g_.vertex_count(), 0);
      for (VertexId v : comp) scoped[sub.original[v]] = 1;
      auto part = solve_component(scoped);
      if (!part) return std::nullopt;
      total += *part;
    }
    return total;
  }

 private:
  std::optional<int> solve_component(std::vector<char>& alive) {
    auto cycle = shortest_cycle(alive);
    if (cycle.empty()) return 0;
    std::optional<int> best;
    for (VertexId v : cycle) {
      if (forced_[v]) continue;
      alive[v] = 0;
      auto rest = solve(alive);
      alive[v] = 1;
      if (rest && (!best || *rest + 1 < *best)) best = *rest + 1;
      // a component with a cycle needs at least one deletion
      if (best && *best == 1) break;
    }
    return best;
  }

  // Vertices of a shortest directed cycle among the alive set, empty when
  // acyclic. BFS from every vertex ascending, so ties break the same way
  // on every run.
  std::vector<VertexId> shortest_cycle(const std::vector<char>& alive) const {
    int k = g_.vertex_count();
    std::vector<VertexId> best;
    for (VertexId s = 0; s < k; ++s) {
      if (!alive[s]) continue;
      std::vector<int> dist(k, -1);
      std::vector<VertexId> prev(k, -1);
      std::vector<VertexId> queue = {s};
      dist[s] = 0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        VertexId v = queue[head];
        for (VertexId w : g_.out_neighbors(v)) {
          if (!alive[w] || dist[w] >= 0) continue;
          dist[w] = dist[v] + 1;
          prev[w] = v;
          queue.push_back(w);
        }
      }
      for (VertexId u : g_.in_neighbors(s)) {
        if (!alive[u] || dist[u] < 0) continue;
        int len = dist[u] + 1;
        if (!best.empty() && len >= static_cast<int>(best.size())) continue;
        std::vector<VertexId> cycle;
        for (VertexId v = u; v >= 0; v = prev[v]) cycle.push_back(v);
        std::reverse(cycle.begin(), cycle.end());
        best = std::move(cycle);
      }
      if (best.size() == 2) break;  // nothing shorter exists
    }
    return best;
  }

  const Digraph& g_;
  const std::vector<char>& forced_;
};

bool contains_sorted(const std::vector<VertexId>& vs, VertexId v) {
  return std::binary_search(vs.begin(), vs.end(), v);
}

}  // namespace

MaisResult mais_exact(const Digraph& g, int max_vertices) {
  int k = g.vertex_count();
  if (k > max_vertices)
    throw BudgetError("exact acyclic-set search on " + std::to_string(k) +
                      " vertices exceeds the budget of " +
                      std::to_string(max_vertices));

  std::vector<char> forced(k, 0);
  std::vector<char> alive(k, 1);
  FvsSolver solver(g, forced);
  // with nothing forced the search cannot fail
  int fvs = *solver.solve(alive);
  int m = k - fvs;

  MaisResult out;
  out.size = m;
  // grow the lexicographically smallest witness: keep v whenever some
  // maximum acyclic set contains everything kept so far plus v
  for (VertexId v = 0; v < k && static_cast<int>(out.witness.size()) < m;
       ++v) {
    forced[v] = 1;
    auto r = solver.solve(alive);
    if (r && *r == fvs)
      out.witness.push_back(v);
    else
      forced[v] = 0;
  }
  if (static_cast<int>(out.witness.size()) != m)
    throw std::logic_error("acyclic witness construction lost vertices");
  if (!is_acyclic(induced_subgraph(g, out.witness).graph).acyclic)
    throw std::logic_error("acyclic witness fails its own check");
  return out;
}

std::vector<VertexId> oic_witness(const Digraph& g,
                                  const PolytreeDecomposition& decomp,
                                  const DerivedSets& derived) {
  std::vector<VertexId> out;
  const auto& nodes = decomp.nodes();
  for (int p = 0; p < decomp.node_count(); ++p) {
    VertexId pick = -1;
    for (VertexId v : nodes[p].vertices) {
      if (contains_sorted(derived.parent_shared[p], v)) continue;
      if (contains_sorted(derived.child_shared[p], v)) continue;
      pick = v;
      break;
    }
    if (pick < 0)
      throw std::logic_error("node " + nodes[p].id.label() +
                             " has no unshared vertex to witness with");
    out.push_back(pick);
  }
  out.insert(out.end(), derived.non_inner.begin(), derived.non_inner.end());
  std::sort(out.begin(), out.end());
  if (!is_acyclic(induced_subgraph(g, out).graph).acyclic)
    throw std::logic_error("structure witness induces a cycle");
  return out;
}

BoundsReport bounds_report(const Digraph& g,
                           const PolytreeDecomposition& decomp,
                           int mais_budget) {
  auto verification = verify_oic(g, decomp);
  for (const auto& r : verification.results)
    if (!r.passed)
      throw std::invalid_argument("bounds need a verified structure (" +
                                  r.condition + "): " + r.detail);

  auto derived = derive_sets(g, decomp);
  BoundsReport out;
  out.code_length =
      static_cast<int>(derived.non_inner.size()) + decomp.node_count();
  out.capacity = {1, out.code_length};

  // always built: certifies by itself that no shorter code exists
  auto witness = oic_witness(g, decomp, derived);
  try {
    auto exact = mais_exact(g, mais_budget);
    out.mais = exact.size;
    out.mais_witness = exact.witness;
    if (exact.size == out.code_length)
      out.beta = out.code_length;
    else
      out.notes.push_back("exact acyclic bound " + std::to_string(exact.size) +
                          " does not meet the achievable length " +
                          std::to_string(out.code_length));
  } catch (const BudgetError& e) {
    out.mais_witness = witness;
    out.notes.push_back(std::string("acyclic-set search refused: ") +
                        e.what() + "; falling back to the structural witness" +
                        " of size " + std::to_string(witness.size()));
  }
  return out;
}

}  // namespace interlace
