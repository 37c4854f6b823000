#include "interlace/ic.hpp"

#include <algorithm>
#include <stdexcept>

namespace interlace {
namespace {

std::vector<bool> inner_flags(int k, const InnerVertexSet& inner) {
  std::vector<bool> flags(k, false);
  for (VertexId v : inner.vertices) flags[v] = true;
  return flags;
}

// Non-inner vertices reachable from some inner vertex through non-inner
// interiors only. Reverse = true walks edges backwards, giving the vertices
// that reach an inner vertex instead.
std::vector<bool> touched_by_inner(const Digraph& g,
                                   const std::vector<bool>& is_inner,
                                   bool reverse) {
  int k = g.vertex_count();
  std::vector<bool> seen(k, false);
  std::vector<VertexId> queue;
  for (VertexId v = 0; v < k; ++v) {
    if (!is_inner[v]) continue;
    const auto& step = reverse ? g.in_neighbors(v) : g.out_neighbors(v);
    for (VertexId w : step) {
      if (!is_inner[w] && !seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  while (!queue.empty()) {
    VertexId v = queue.back();
    queue.pop_back();
    const auto& step = reverse ? g.in_neighbors(v) : g.out_neighbors(v);
    for (VertexId w : step) {
      if (!is_inner[w] && !seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

InnerVertexSet::InnerVertexSet(int k, std::vector<VertexId> inner)
    : vertices(std::move(inner)) {
  std::sort(vertices.begin(), vertices.end());
  for (size_t i = 0; i < vertices.size(); ++i) {
    VertexId v = vertices[i];
    if (v < 0 || v >= k)
      throw std::invalid_argument("inner vertex " + std::to_string(v) +
                                  " out of range for K=" + std::to_string(k));
    if (i > 0 && vertices[i - 1] == v)
      throw std::invalid_argument("duplicate inner vertex " + vertex_name(v));
  }
  if (vertices.empty())
    throw std::invalid_argument("inner vertex set must be nonempty");
}

bool InnerVertexSet::contains(VertexId v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

BitVec InnerVertexSet::mask(int k) const {
  BitVec m(k);
  for (VertexId v : vertices) m.set(v);
  return m;
}

std::vector<VertexId> InnerVertexSet::non_inner(int k) const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < k; ++v)
    if (!contains(v)) out.push_back(v);
  return out;
}

PathEnumeration find_i_paths(const Digraph& g, const InnerVertexSet& inner,
                             VertexId from, VertexId to, size_t max_count) {
  return enumerate_paths(g, from, to, inner_flags(g.vertex_count(), inner),
                         max_count);
}

VerificationReport verify_ic(const Digraph& g, const InnerVertexSet& inner) {
  VerificationReport report;
  int k = g.vertex_count();
  auto is_inner = inner_flags(k, inner);

  bool cycle_free = true;
  for (VertexId v : inner.vertices) {
    auto cycles = find_i_paths(g, inner, v, v, 1);
    if (!cycles.paths.empty()) {
      report.add_fail("inner-cycle-free",
                      "cycle through " + vertex_name(v) +
                          " avoids every other inner vertex",
                      cycles.paths.front());
      cycle_free = false;
      break;
    }
  }
  if (cycle_free) report.add_pass("inner-cycle-free");

  // Exact given cycle freedom plus outer acyclicity: a vertex that is both
  // entered from an inner vertex and drains into one lies on a simple
  // interior-avoiding path (the joined walk cannot repeat vertices inside an
  // acyclic outer subgraph).
  auto from_inner = touched_by_inner(g, is_inner, /*reverse=*/false);
  auto to_inner = touched_by_inner(g, is_inner, /*reverse=*/true);
  std::vector<VertexId> uncovered;
  for (VertexId v = 0; v < k; ++v)
    if (!is_inner[v] && !(from_inner[v] && to_inner[v])) uncovered.push_back(v);
  if (uncovered.empty()) {
    report.add_pass("outer-coverage");
  } else {
    report.add_fail("outer-coverage",
                    "non-inner vertices on no interior-avoiding path",
                    uncovered);
  }

  bool unique = true;
  for (VertexId a : inner.vertices) {
    for (VertexId b : inner.vertices) {
      if (a == b) continue;
      auto found = find_i_paths(g, inner, a, b, 2);
      if (found.paths.empty()) {
        report.add_fail("inner-path-unique",
                        "no interior-avoiding path from " + vertex_name(a) +
                            " to " + vertex_name(b));
        unique = false;
      } else if (found.paths.size() > 1) {
        report.add_fail("inner-path-unique",
                        "several interior-avoiding paths from " +
                            vertex_name(a) + " to " + vertex_name(b),
                        found.paths.front());
        unique = false;
      }
      if (!unique) break;
    }
    if (!unique) break;
  }
  if (unique) report.add_pass("inner-path-unique");

  auto outer = inner.non_inner(k);
  if (outer.empty()) {
    report.add_pass("outer-acyclic");
    return report;
  }
  auto induced = induced_subgraph(g, outer);
  auto acyclic = is_acyclic(induced.graph);
  if (acyclic.acyclic) {
    report.add_pass("outer-acyclic");
  } else {
    std::vector<VertexId> cycle;
    for (VertexId v : acyclic.cycle) cycle.push_back(induced.original[v]);
    report.add_fail("outer-acyclic", "non-inner vertices contain a cycle",
                    cycle);
  }
  return report;
}

LinearCode encode_ic(const Digraph& g, const InnerVertexSet& inner) {
  int k = g.vertex_count();
  std::vector<CodeSymbol> symbols;
  symbols.push_back({"y_I", inner.mask(k)});
  for (VertexId j : inner.non_inner(k)) {
    BitVec m(k);
    m.set(j);
    for (VertexId w : g.out_neighbors(j)) m.flip(w);
    symbols.push_back({"y_" + std::to_string(j + 1), m});
  }
  return LinearCode(k, std::move(symbols));
}

bool RootedTree::contains(VertexId v) const {
  return v >= 0 && v < static_cast<int>(depth.size()) && depth[v] >= 0;
}

std::vector<VertexId> RootedTree::leaves() const {
  std::vector<VertexId> out;
  for (VertexId v : vertices)
    if (v != root && children[v].empty()) out.push_back(v);
  return out;
}

RootedTree build_tree_ic(const Digraph& g, const InnerVertexSet& inner,
                         VertexId root) {
  if (!inner.contains(root))
    throw std::invalid_argument("tree root " + vertex_name(root) +
                                " is not inner");
  int k = g.vertex_count();
  RootedTree tree;
  tree.root = root;
  tree.parent.assign(k, -1);
  tree.depth.assign(k, -1);
  tree.children.assign(k, {});

  std::vector<bool> in_tree(k, false);
  in_tree[root] = true;
  for (VertexId b : inner.vertices) {
    if (b == root) continue;
    auto found = find_i_paths(g, inner, root, b, 2);
    if (found.paths.size() != 1)
      throw std::logic_error("expected a unique interior-avoiding path from " +
                             vertex_name(root) + " to " + vertex_name(b));
    const auto& path = found.paths.front();
    for (size_t i = 1; i < path.size(); ++i) {
      VertexId v = path[i];
      VertexId p = path[i - 1];
      if (!in_tree[v]) {
        in_tree[v] = true;
        tree.parent[v] = p;
        tree.children[p].push_back(v);
      } else if (tree.parent[v] != p) {
        throw std::logic_error("conflicting tree parents for " +
                               vertex_name(v));
      }
    }
  }

  for (VertexId v = 0; v < k; ++v) {
    if (in_tree[v]) tree.vertices.push_back(v);
    std::sort(tree.children[v].begin(), tree.children[v].end());
  }
  tree.depth[root] = 0;
  std::vector<VertexId> stack = {root};
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId c : tree.children[v]) {
      tree.depth[c] = tree.depth[v] + 1;
      stack.push_back(c);
    }
  }
  return tree;
}

}  // namespace interlace
