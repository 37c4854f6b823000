#include "interlace/oic.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace interlace {
namespace {

bool contains_sorted(const std::vector<VertexId>& vs, VertexId v) {
  return std::binary_search(vs.begin(), vs.end(), v);
}

std::vector<VertexId> intersect_sorted(const std::vector<VertexId>& a,
                                       const std::vector<VertexId>& b) {
  std::vector<VertexId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

std::vector<VertexId> subtract_sorted(const std::vector<VertexId>& a,
                                      const std::vector<VertexId>& b) {
  std::vector<VertexId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

std::vector<VertexId> sorted_unique(std::vector<VertexId> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

// Non-inner vertices reachable from some inner vertex through non-inner
// interiors only; reverse = true gives the ones that drain into an inner
// vertex instead. Same walk as the single-cycle verifier uses.
std::vector<bool> touched_by_inner(const Digraph& g,
                                   const std::vector<bool>& is_inner,
                                   bool reverse) {
  int k = g.vertex_count();
  std::vector<bool> seen(k, false);
  std::vector<VertexId> queue;
  for (VertexId v = 0; v < k; ++v) {
    if (!is_inner[v]) continue;
    const auto& step = reverse ? g.in_neighbors(v) : g.out_neighbors(v);
    for (VertexId w : step)
      if (!is_inner[w] && !seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
  }
  while (!queue.empty()) {
    VertexId v = queue.back();
    queue.pop_back();
    const auto& step = reverse ? g.in_neighbors(v) : g.out_neighbors(v);
    for (VertexId w : step)
      if (!is_inner[w] && !seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
  }
  return seen;
}

// The four structural entries (polytree shape). The remaining conditions
// are only meaningful when all of these pass.
std::vector<ConditionResult> structure_results(
    const PolytreeDecomposition& d) {
  std::vector<ConditionResult> out;
  const auto& nodes = d.nodes();
  const auto& edges = d.edges();
  int s = d.node_count();

  {
    ConditionResult r{"node-labels", true, "", {}};
    for (int lvl = 0; r.passed && lvl <= d.max_depth(); ++lvl)
      if (d.width(lvl) == 0) {
        r.passed = false;
        r.detail = "no nodes at depth " + std::to_string(lvl) +
                   " although deeper nodes exist";
      }
    int cur_depth = -1, expect = 1;
    for (const auto& n : nodes) {
      if (!r.passed) break;
      if (n.id.depth != cur_depth) {
        cur_depth = n.id.depth;
        expect = 1;
      }
      if (n.id.index != expect) {
        r.passed = false;
        r.detail = "expected node (" + std::to_string(cur_depth) + "," +
                   std::to_string(expect) + ") but found " + n.id.label();
      }
      ++expect;
    }
    for (const auto& e : edges) {
      if (!r.passed) break;
      if (e.child.depth != e.parent.depth + 1) {
        r.passed = false;
        r.detail = "link " + e.parent.label() + "->" + e.child.label() +
                   " does not descend exactly one level";
      }
    }
    out.push_back(std::move(r));
  }

  {
    ConditionResult r{"node-tree", true, "", {}};
    if (static_cast<int>(edges.size()) != s - 1) {
      r.passed = false;
      r.detail = std::to_string(edges.size()) + " links cannot form a tree over " +
                 std::to_string(s) + " nodes";
    } else {
      std::vector<bool> seen(s, false);
      std::vector<int> stack = {0};
      seen[0] = true;
      while (!stack.empty()) {
        int p = stack.back();
        stack.pop_back();
        for (int ei : d.child_edges(p)) {
          int c = d.find(edges[ei].child);
          if (!seen[c]) seen[c] = true, stack.push_back(c);
        }
        for (int ei : d.parent_edges(p)) {
          int c = d.find(edges[ei].parent);
          if (!seen[c]) seen[c] = true, stack.push_back(c);
        }
      }
      for (int p = 0; r.passed && p < s; ++p)
        if (!seen[p]) {
          r.passed = false;
          r.detail = "node " + nodes[p].id.label() + " is not connected to " +
                     nodes[0].id.label() + " through the links";
        }
    }
    out.push_back(std::move(r));
  }

  {
    ConditionResult r{"node-overlap", true, "", {}};
    // adjacency by node position pair
    std::set<std::pair<int, int>> adjacent;
    for (const auto& e : edges) {
      int p = d.find(e.parent), c = d.find(e.child);
      adjacent.insert({std::min(p, c), std::max(p, c)});
    }
    for (int p = 0; r.passed && p < s; ++p) {
      for (int q = p + 1; r.passed && q < s; ++q) {
        auto inter = intersect_sorted(nodes[p].vertices, nodes[q].vertices);
        bool linked = adjacent.count({p, q}) > 0;
        if (linked && inter.size() != 1) {
          r.passed = false;
          r.detail = "linked nodes " + nodes[p].id.label() + " and " +
                     nodes[q].id.label() + " must share exactly one vertex";
          r.witness = inter;
        } else if (!linked && !inter.empty()) {
          r.passed = false;
          r.detail = "unlinked nodes " + nodes[p].id.label() + " and " +
                     nodes[q].id.label() + " share vertices";
          r.witness = inter;
        }
      }
    }
    out.push_back(std::move(r));
  }

  {
    ConditionResult r{"node-size", true, "", {}};
    for (int p = 0; r.passed && p < s; ++p) {
      int links = static_cast<int>(d.parent_edges(p).size() +
                                   d.child_edges(p).size());
      if (static_cast<int>(nodes[p].vertices.size()) <= links) {
        r.passed = false;
        r.detail = "node " + nodes[p].id.label() + " has " +
                   std::to_string(nodes[p].vertices.size()) +
                   " vertices for " + std::to_string(links) +
                   " links; needs more vertices than links";
        r.witness = nodes[p].vertices;
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

// Pre: structure_results all pass.
DerivedSets compute_derived(const PolytreeDecomposition& d) {
  DerivedSets out;
  int k = d.message_count();
  int s = d.node_count();
  const auto& nodes = d.nodes();
  const auto& edges = d.edges();

  std::vector<std::vector<int>> occ(k);
  for (int p = 0; p < s; ++p)
    for (VertexId v : nodes[p].vertices) occ[v].push_back(p);

  out.home.assign(k, -1);
  for (VertexId v = 0; v < k; ++v) {
    if (occ[v].empty()) {
      out.non_inner.push_back(v);
      continue;
    }
    out.inner.push_back(v);
    if (occ[v].size() == 1) {
      out.home[v] = occ[v][0];
      continue;
    }
    // a vertex in two node sets is the shared vertex of the link between
    // them; the parent side owns it
    if (occ[v].size() > 2)
      throw std::logic_error(vertex_name(v) + " appears in three node sets");
    int owner = -1;
    for (const auto& e : edges) {
      int p = d.find(e.parent), c = d.find(e.child);
      if ((p == occ[v][0] && c == occ[v][1]) ||
          (p == occ[v][1] && c == occ[v][0])) {
        owner = p;
        break;
      }
    }
    if (owner < 0)
      throw std::logic_error(vertex_name(v) + " is shared outside a link");
    out.home[v] = owner;
  }

  out.parent_shared.assign(s, {});
  out.child_shared.assign(s, {});
  for (const auto& e : edges) {
    out.child_shared[d.find(e.parent)].push_back(e.shared);
    out.parent_shared[d.find(e.child)].push_back(e.shared);
  }
  out.reduced.resize(s);
  for (int p = 0; p < s; ++p) {
    std::sort(out.parent_shared[p].begin(), out.parent_shared[p].end());
    std::sort(out.child_shared[p].begin(), out.child_shared[p].end());
    out.reduced[p] = subtract_sorted(nodes[p].vertices, out.parent_shared[p]);
  }

  out.branch_nodes.assign(edges.size(), {});
  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    std::vector<int> stack = {d.find(edges[ei].child)};
    while (!stack.empty()) {
      int p = stack.back();
      stack.pop_back();
      out.branch_nodes[ei].push_back(p);
      for (int ce : d.child_edges(p)) stack.push_back(d.find(edges[ce].child));
    }
    std::sort(out.branch_nodes[ei].begin(), out.branch_nodes[ei].end());
  }

  for (int a = 0; a < s; ++a) {
    std::vector<int> chain = {a};
    std::vector<VertexId> connectors;
    auto dive = [&](auto&& self, int cur) -> void {
      for (int ei : d.child_edges(cur)) {
        int c = d.find(edges[ei].child);
        chain.push_back(c);
        connectors.push_back(edges[ei].shared);
        DescendantPath path;
        path.ancestor = a;
        path.descendant = c;
        path.nodes = chain;
        path.connectors = connectors;
        std::vector<VertexId> uni;
        for (std::size_t t = 1; t < chain.size(); ++t)
          uni.insert(uni.end(), nodes[chain[t]].vertices.begin(),
                     nodes[chain[t]].vertices.end());
        uni = sorted_unique(std::move(uni));
        std::vector<VertexId> conn = connectors;
        std::sort(conn.begin(), conn.end());
        path.vp = subtract_sorted(uni, conn);
        if (path.vp.size() != uni.size() - conn.size())
          throw std::logic_error("path set arithmetic failed between " +
                                 nodes[a].id.label() + " and " +
                                 nodes[c].id.label());
        out.paths.emplace(std::make_pair(a, c), std::move(path));
        self(self, c);
        chain.pop_back();
        connectors.pop_back();
      }
    };
    dive(dive, a);
  }
  return out;
}

struct BranchFailure {
  std::string detail;
  std::vector<VertexId> witness;
};

// Resolves every child branch of node p for the reduced-set vertex v,
// appending to `out`. Returns the failure for the first unsatisfiable
// branch, if any.
std::optional<BranchFailure> resolve_vertex(
    const Digraph& g, const PolytreeDecomposition& d,
    const DerivedSets& derived, const InnerVertexSet& inner, VertexId v,
    int p, std::vector<BranchResolution>& out) {
  const auto& edges = d.edges();
  for (int ei : d.child_edges(p)) {
    const auto& e = edges[ei];
    BranchResolution res;
    res.vertex = v;
    res.node = p;
    res.edge = ei;
    if (v == e.shared) {
      res.mode = BranchMode::kSelf;
      out.push_back(std::move(res));
      continue;
    }
    auto to_shared = find_i_paths(g, inner, v, e.shared, 2);
    if (to_shared.paths.size() == 1) {
      res.mode = BranchMode::kShared;
      res.targets = {e.shared};
      out.push_back(std::move(res));
      continue;
    }
    // shared vertex unreachable or ambiguous: descend, shallowest node of
    // the branch first
    bool resolved = false;
    std::string descend_detail;
    std::vector<VertexId> descend_witness;
    for (int m : derived.branch_nodes[ei]) {
      const auto& vp = derived.paths.at({p, m}).vp;
      bool all_ok = true;
      for (VertexId u : vp) {
        auto found = find_i_paths(g, inner, v, u, 2);
        if (found.paths.size() == 1) continue;
        all_ok = false;
        if (descend_detail.empty()) {
          descend_detail = (found.paths.empty()
                                ? "no interior-avoiding path from "
                                : "several interior-avoiding paths from ") +
                           vertex_name(v) + " to " + vertex_name(u) +
                           " descending to node " + d.nodes()[m].id.label();
          if (!found.paths.empty()) descend_witness = found.paths.front();
        }
        break;
      }
      if (all_ok) {
        res.mode = BranchMode::kDescend;
        res.terminal = m;
        res.targets = vp;
        out.push_back(std::move(res));
        resolved = true;
        break;
      }
    }
    if (resolved) continue;
    BranchFailure fail;
    fail.detail = (to_shared.paths.empty()
                       ? "no interior-avoiding path from "
                       : "several interior-avoiding paths from ") +
                  vertex_name(v) + " to shared vertex " +
                  vertex_name(e.shared) + " on the branch toward " +
                  e.child.label();
    if (!to_shared.paths.empty()) fail.witness = to_shared.paths.front();
    if (!descend_detail.empty()) {
      fail.detail += "; " + descend_detail;
      if (fail.witness.empty()) fail.witness = descend_witness;
    }
    return fail;
  }
  return std::nullopt;
}

}  // namespace

std::string NodeId::label() const {
  return "(" + std::to_string(depth) + "," + std::to_string(index) + ")";
}

PolytreeDecomposition::PolytreeDecomposition(int message_count,
                                             std::vector<PolytreeNode> nodes,
                                             std::vector<PolytreeEdge> edges)
    : message_count_(message_count),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)) {
  if (message_count_ < 1)
    throw std::invalid_argument("message count must be positive");
  if (nodes_.empty())
    throw std::invalid_argument("decomposition needs at least one node");
  std::sort(nodes_.begin(), nodes_.end(),
            [](const PolytreeNode& a, const PolytreeNode& b) {
              return a.id < b.id;
            });
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    auto& n = nodes_[i];
    if (n.id.depth < 0 || n.id.index < 1)
      throw std::invalid_argument("node " + n.id.label() +
                                  " has an invalid position");
    if (i > 0 && nodes_[i - 1].id == n.id)
      throw std::invalid_argument("duplicate node " + n.id.label());
    if (n.vertices.empty())
      throw std::invalid_argument("node " + n.id.label() + " has no vertices");
    std::sort(n.vertices.begin(), n.vertices.end());
    for (std::size_t t = 0; t < n.vertices.size(); ++t) {
      VertexId v = n.vertices[t];
      if (v < 0 || v >= message_count_)
        throw std::invalid_argument(
            "node " + n.id.label() + " vertex " + std::to_string(v) +
            " out of range for K=" + std::to_string(message_count_));
      if (t > 0 && n.vertices[t - 1] == v)
        throw std::invalid_argument("node " + n.id.label() + " repeats " +
                                    vertex_name(v));
    }
    max_depth_ = std::max(max_depth_, n.id.depth);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const PolytreeEdge& a, const PolytreeEdge& b) {
              return std::pair(a.parent, a.child) < std::pair(b.parent, b.child);
            });
  parent_edges_.assign(nodes_.size(), {});
  child_edges_.assign(nodes_.size(), {});
  for (std::size_t ei = 0; ei < edges_.size(); ++ei) {
    const auto& e = edges_[ei];
    std::string name = "link " + e.parent.label() + "->" + e.child.label();
    int p = find(e.parent);
    int c = find(e.child);
    if (p < 0 || c < 0)
      throw std::invalid_argument(name + " references a missing node");
    if (p == c) throw std::invalid_argument(name + " joins a node to itself");
    if (ei > 0 && edges_[ei - 1].parent == e.parent &&
        edges_[ei - 1].child == e.child)
      throw std::invalid_argument("duplicate " + name);
    if (e.shared < 0 || e.shared >= message_count_)
      throw std::invalid_argument(name + " shared vertex out of range");
    if (!std::binary_search(nodes_[p].vertices.begin(),
                            nodes_[p].vertices.end(), e.shared) ||
        !std::binary_search(nodes_[c].vertices.begin(),
                            nodes_[c].vertices.end(), e.shared))
      throw std::invalid_argument(name + " marks " + vertex_name(e.shared) +
                                  " shared but both nodes do not contain it");
    child_edges_[p].push_back(static_cast<int>(ei));
    parent_edges_[c].push_back(static_cast<int>(ei));
  }
}

int PolytreeDecomposition::width(int depth) const {
  int n = 0;
  for (const auto& node : nodes_)
    if (node.id.depth == depth) ++n;
  return n;
}

int PolytreeDecomposition::find(NodeId id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const PolytreeNode& n, NodeId want) {
                               return n.id < want;
                             });
  if (it == nodes_.end() || !(it->id == id)) return -1;
  return static_cast<int>(it - nodes_.begin());
}

DerivedSets derive_sets(const Digraph& g,
                        const PolytreeDecomposition& decomp) {
  if (g.vertex_count() != decomp.message_count())
    throw std::invalid_argument(
        "graph has " + std::to_string(g.vertex_count()) +
        " vertices but the decomposition covers K=" +
        std::to_string(decomp.message_count()));
  for (const auto& r : structure_results(decomp))
    if (!r.passed) throw std::invalid_argument(r.detail);
  return compute_derived(decomp);
}

BranchOutcome resolve_branches(const Digraph& g,
                               const PolytreeDecomposition& decomp,
                               const DerivedSets& derived) {
  BranchOutcome out;
  InnerVertexSet inner(decomp.message_count(), derived.inner);
  for (int p = 0; p < decomp.node_count(); ++p) {
    for (VertexId v : derived.reduced[p]) {
      auto fail =
          resolve_vertex(g, decomp, derived, inner, v, p, out.resolutions);
      if (fail) {
        out.detail = std::move(fail->detail);
        out.witness = std::move(fail->witness);
        return out;
      }
    }
  }
  out.ok = true;
  return out;
}

VerificationReport check_conditions(const Digraph& g,
                                    const PolytreeDecomposition& decomp) {
  VerificationReport report;
  int k = g.vertex_count();
  if (k != decomp.message_count()) {
    report.add_fail("message-count",
                    "graph has " + std::to_string(k) +
                        " vertices but the decomposition covers K=" +
                        std::to_string(decomp.message_count()));
    return report;
  }
  bool structural = true;
  for (auto& r : structure_results(decomp)) {
    structural = structural && r.passed;
    report.results.push_back(std::move(r));
  }
  if (!structural) return report;

  auto derived = compute_derived(decomp);
  const auto& nodes = decomp.nodes();
  InnerVertexSet inner(k, derived.inner);
  auto is_inner = std::vector<bool>(k, false);
  for (VertexId v : derived.inner) is_inner[v] = true;

  // unique interior-avoiding paths: within the owning node first, then per
  // child branch (shared vertex or descend into the branch)
  bool unique = true;
  for (int p = 0; unique && p < decomp.node_count(); ++p) {
    for (VertexId v : derived.reduced[p]) {
      for (VertexId u : nodes[p].vertices) {
        if (u == v || contains_sorted(derived.child_shared[p], u)) continue;
        auto found = find_i_paths(g, inner, v, u, 2);
        if (found.paths.size() == 1) continue;
        if (found.paths.empty()) {
          report.add_fail("inner-path-unique",
                          "no interior-avoiding path from " + vertex_name(v) +
                              " to " + vertex_name(u) + " inside node " +
                              nodes[p].id.label());
        } else {
          report.add_fail("inner-path-unique",
                          "several interior-avoiding paths from " +
                              vertex_name(v) + " to " + vertex_name(u) +
                              " inside node " + nodes[p].id.label(),
                          found.paths.front());
        }
        unique = false;
        break;
      }
      if (!unique) break;
    }
  }
  if (unique) {
    auto branches = resolve_branches(g, decomp, derived);
    if (!branches.ok) {
      report.add_fail("inner-path-unique", branches.detail, branches.witness);
      unique = false;
    } else {
      int n_shared = 0, n_descend = 0, n_self = 0;
      for (const auto& r : branches.resolutions) {
        if (r.mode == BranchMode::kShared) ++n_shared;
        if (r.mode == BranchMode::kDescend) ++n_descend;
        if (r.mode == BranchMode::kSelf) ++n_self;
      }
      std::string detail;
      if (!branches.resolutions.empty())
        detail = "branches: " + std::to_string(n_shared) + " shared, " +
                 std::to_string(n_descend) + " descend, " +
                 std::to_string(n_self) + " self";
      report.add_pass("inner-path-unique", detail);
    }
  }

  // no cycle may meet the owning node's set in just one vertex
  bool isolated = true;
  for (VertexId v : derived.inner) {
    const auto& node_set = nodes[derived.home[v]].vertices;
    std::vector<VertexId> keep;
    for (VertexId u = 0; u < k; ++u)
      if (u == v || !contains_sorted(node_set, u)) keep.push_back(u);
    auto sub = induced_subgraph(g, keep);
    auto cycles =
        enumerate_paths(sub.graph, sub.remap[v], sub.remap[v],
                        std::vector<bool>(sub.graph.vertex_count(), false), 1);
    if (!cycles.paths.empty()) {
      std::vector<VertexId> cycle;
      for (VertexId u : cycles.paths.front()) cycle.push_back(sub.original[u]);
      report.add_fail("inner-cycle-isolated",
                      "cycle through " + vertex_name(v) +
                          " avoids every other vertex of its node " +
                          nodes[derived.home[v]].id.label(),
                      cycle);
      isolated = false;
      break;
    }
  }
  if (isolated) report.add_pass("inner-cycle-isolated");

  // every vertex can be inner; the acyclicity of nothing is vacuous
  if (derived.non_inner.empty()) {
    report.add_pass("outer-acyclic");
  } else {
    auto induced = induced_subgraph(g, derived.non_inner);
    auto acyclic = is_acyclic(induced.graph);
    if (acyclic.acyclic) {
      report.add_pass("outer-acyclic");
    } else {
      std::vector<VertexId> cycle;
      for (VertexId v : acyclic.cycle) cycle.push_back(induced.original[v]);
      report.add_fail("outer-acyclic", "non-inner vertices contain a cycle",
                      cycle);
    }
  }

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

  // every interior-avoiding path leaving a non-inner vertex must end in a
  // single node's vertex set
  bool terminals_ok = true;
  for (VertexId u : derived.non_inner) {
    std::vector<bool> seen(k, false);
    std::vector<VertexId> stack = {u};
    seen[u] = true;
    std::vector<VertexId> ends;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (VertexId w : g.out_neighbors(v)) {
        if (is_inner[w]) {
          ends.push_back(w);
        } else if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    ends = sorted_unique(std::move(ends));
    bool in_one_node = ends.empty();
    for (const auto& node : nodes)
      if (subtract_sorted(ends, node.vertices).empty()) {
        in_one_node = true;
        break;
      }
    if (!in_one_node) {
      report.add_fail("outer-terminals",
                      "interior-avoiding paths through " + vertex_name(u) +
                          " end in several node sets",
                      ends);
      terminals_ok = false;
      break;
    }
  }
  if (terminals_ok) report.add_pass("outer-terminals");

  return report;
}

VerificationReport verify_oic(const Digraph& g,
                              const PolytreeDecomposition& decomp) {
  // check_conditions already folds in the structural entries and refuses
  // mismatched sizes, so acceptance is exactly "every entry passed"
  return check_conditions(g, decomp);
}

OicTree build_tree_oic(const Digraph& g, const PolytreeDecomposition& decomp,
                       const DerivedSets& derived, VertexId root) {
  int k = g.vertex_count();
  if (root < 0 || root >= k || derived.home[root] < 0)
    throw std::invalid_argument("tree root " + vertex_name(root) +
                                " is not inner");
  int h = derived.home[root];
  InnerVertexSet inner(decomp.message_count(), derived.inner);

  std::vector<BranchResolution> resolutions;
  auto fail = resolve_vertex(g, decomp, derived, inner, root, h, resolutions);
  if (fail) throw std::logic_error(fail->detail);

  std::set<int> contributing = {h};
  std::vector<VertexId> connectors;
  std::vector<VertexId> targets;
  for (VertexId u : decomp.nodes()[h].vertices)
    if (u != root && !contains_sorted(derived.child_shared[h], u))
      targets.push_back(u);
  for (const auto& r : resolutions) {
    targets.insert(targets.end(), r.targets.begin(), r.targets.end());
    if (r.mode == BranchMode::kDescend) {
      const auto& path = derived.paths.at({h, r.terminal});
      contributing.insert(path.nodes.begin(), path.nodes.end());
      connectors.insert(connectors.end(), path.connectors.begin(),
                        path.connectors.end());
    }
  }
  std::sort(targets.begin(), targets.end());
  std::sort(connectors.begin(), connectors.end());

  std::vector<VertexId> uni;
  for (int p : contributing)
    uni.insert(uni.end(), decomp.nodes()[p].vertices.begin(),
               decomp.nodes()[p].vertices.end());
  uni = sorted_unique(std::move(uni));
  std::vector<VertexId> vset = subtract_sorted(uni, connectors);
  if (vset.size() != uni.size() - connectors.size())
    throw std::logic_error("contributing set arithmetic failed for " +
                           vertex_name(root));
  std::vector<VertexId> expect = targets;
  expect.push_back(root);
  std::sort(expect.begin(), expect.end());
  if (vset != expect)
    throw std::logic_error("target set mismatch for " + vertex_name(root));

  RootedTree tree;
  tree.root = root;
  tree.parent.assign(k, -1);
  tree.depth.assign(k, -1);
  tree.children.assign(k, {});
  std::vector<bool> in_tree(k, false);
  in_tree[root] = true;
  for (VertexId b : targets) {
    auto found = find_i_paths(g, inner, root, b, 2);
    if (found.paths.size() != 1)
      throw std::logic_error("expected a unique interior-avoiding path from " +
                             vertex_name(root) + " to " + vertex_name(b));
    const auto& path = found.paths.front();
    for (std::size_t i = 1; i < path.size(); ++i) {
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
  if (tree.leaves() != targets)
    throw std::logic_error("tree leaves diverge from the target set for " +
                           vertex_name(root));

  OicTree out;
  out.tree = std::move(tree);
  out.home = h;
  out.contributing.assign(contributing.begin(), contributing.end());
  out.vertex_set = std::move(vset);
  return out;
}

SuggestionResult suggest_decompositions(const Digraph& g,
                                        const SuggestLimits& limits) {
  SuggestionResult out;
  int k = g.vertex_count();

  // short simple cycles seed the candidate vertex sets
  std::set<std::vector<VertexId>> seen;
  std::vector<std::vector<VertexId>> seeds;
  std::vector<bool> open(k, false);
  for (VertexId v = 0;
       v < k && static_cast<int>(seeds.size()) < limits.max_cycles; ++v) {
    std::size_t room = limits.max_cycles - seeds.size();
    auto cycles = enumerate_paths(g, v, v, open, room);
    if (cycles.truncated) out.budget_exhausted = true;
    for (const auto& path : cycles.paths) {
      auto set = sorted_unique(path);
      if (seen.insert(set).second) seeds.push_back(std::move(set));
    }
  }

  std::set<std::vector<VertexId>> cand_set;
  auto add_candidate = [&](std::vector<VertexId> set) {
    if (set.size() < 2 || cand_set.count(set)) return;
    if (static_cast<int>(cand_set.size()) >= limits.max_candidates) {
      out.budget_exhausted = true;
      return;
    }
    cand_set.insert(std::move(set));
  };
  // whole cycle sets first, then sets one vertex short, then two short, so
  // trimmed variants of late seeds are not crowded out of a tight pool
  for (const auto& seed : seeds) add_candidate(seed);
  for (const auto& seed : seeds) {
    for (std::size_t i = 0; i < seed.size(); ++i) {
      auto one = seed;
      one.erase(one.begin() + i);
      add_candidate(std::move(one));
    }
  }
  for (const auto& seed : seeds) {
    for (std::size_t i = 0; i < seed.size(); ++i) {
      for (std::size_t j = i + 1; j < seed.size(); ++j) {
        auto two = seed;
        two.erase(two.begin() + j);
        two.erase(two.begin() + i);
        add_candidate(std::move(two));
      }
    }
  }
  // larger sets first: they leave fewer non-inner vertices
  std::vector<std::vector<VertexId>> candidates(cand_set.begin(),
                                                cand_set.end());
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) {
                     return a.size() > b.size();
                   });

  // every ordered candidate pair fits in the budget, with room for triples
  int attempts = limits.max_candidates * limits.max_candidates * 2;
  std::vector<PolytreeDecomposition> accepted;
  auto attempt = [&](std::vector<PolytreeNode> ns,
                     std::vector<PolytreeEdge> es) {
    if (attempts <= 0) {
      out.budget_exhausted = true;
      return;
    }
    --attempts;
    PolytreeDecomposition d(k, std::move(ns), std::move(es));
    if (verify_oic(g, d).ok()) accepted.push_back(std::move(d));
  };

  for (const auto& a : candidates) {
    if (attempts <= 0) break;
    attempt({{{0, 1}, a}}, {});
  }
  int n = static_cast<int>(candidates.size());
  for (int i = 0; i < n && attempts > 0; ++i) {
    for (int j = 0; j < n && attempts > 0; ++j) {
      if (i == j) continue;
      auto common = intersect_sorted(candidates[i], candidates[j]);
      if (common.size() != 1) continue;
      attempt({{{0, 1}, candidates[i]}, {{1, 1}, candidates[j]}},
              {{{0, 1}, {1, 1}, common[0]}});
    }
  }
  if (limits.max_nodes >= 3) {
    for (int i = 0; i < n && attempts > 0; ++i) {
      for (int j = 0; j < n && attempts > 0; ++j) {
        if (j == i) continue;
        auto ij = intersect_sorted(candidates[i], candidates[j]);
        if (ij.size() != 1) continue;
        for (int l = 0; l < n && attempts > 0; ++l) {
          if (l == i || l == j) continue;
          auto jl = intersect_sorted(candidates[j], candidates[l]);
          auto il = intersect_sorted(candidates[i], candidates[l]);
          // chain i -> j -> l
          if (jl.size() == 1 && il.empty())
            attempt({{{0, 1}, candidates[i]},
                     {{1, 1}, candidates[j]},
                     {{2, 1}, candidates[l]}},
                    {{{0, 1}, {1, 1}, ij[0]}, {{1, 1}, {2, 1}, jl[0]}});
          // fork i -> j, i -> l
          if (l > j && il.size() == 1 && jl.empty())
            attempt({{{0, 1}, candidates[i]},
                     {{1, 1}, candidates[j]},
                     {{1, 2}, candidates[l]}},
                    {{{0, 1}, {1, 1}, ij[0]}, {{0, 1}, {1, 2}, il[0]}});
          // merge i, l -> j
          if (l > i && jl.size() == 1 && il.empty())
            attempt({{{0, 1}, candidates[i]},
                     {{0, 2}, candidates[l]},
                     {{1, 1}, candidates[j]}},
                    {{{0, 1}, {1, 1}, ij[0]}, {{0, 2}, {1, 1}, jl[0]}});
        }
      }
    }
  }

  auto score = [k](const PolytreeDecomposition& d) {
    std::vector<VertexId> uni;
    for (const auto& node : d.nodes())
      uni.insert(uni.end(), node.vertices.begin(), node.vertices.end());
    uni = sorted_unique(std::move(uni));
    return (k - static_cast<int>(uni.size())) + d.node_count();
  };
  std::stable_sort(accepted.begin(), accepted.end(),
                   [&](const PolytreeDecomposition& a,
                       const PolytreeDecomposition& b) {
                     int sa = score(a), sb = score(b);
                     if (sa != sb) return sa < sb;
                     return a.node_count() < b.node_count();
                   });
  if (static_cast<int>(accepted.size()) > limits.max_results)
    accepted.erase(accepted.begin() + limits.max_results, accepted.end());
  out.decompositions = std::move(accepted);
  return out;
}

}  // namespace interlace
