#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "interlace/graph.hpp"
#include "interlace/ic.hpp"
#include "interlace/verify.hpp"

namespace interlace {

// Position of a node inside the polytree: depth i (0 = roots) and the
// 1-based index j among nodes of the same depth.
struct NodeId {
  int depth = 0;
  int index = 1;

  auto operator<=>(const NodeId&) const = default;

  // Human-facing form, e.g. "(0,1)".
  std::string label() const;
};

struct PolytreeNode {
  NodeId id;
  std::vector<VertexId> vertices;  // sorted ascending
};

// A parent->child link. The shared vertex is stored explicitly rather than
// inferred so that inputs where the two sets overlap in more than one vertex
// are rejected during verification instead of silently disambiguated.
struct PolytreeEdge {
  NodeId parent;
  NodeId child;
  VertexId shared = -1;
};

// A family of vertex subsets arranged as a polytree. Construction checks
// shape only (ids unique, vertices in range, edges reference known nodes);
// whether the family actually satisfies the structural conditions against a
// concrete graph is the job of verify_oic.
class PolytreeDecomposition {
 public:
  PolytreeDecomposition(int message_count, std::vector<PolytreeNode> nodes,
                        std::vector<PolytreeEdge> edges);

  int message_count() const { return message_count_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int max_depth() const { return max_depth_; }
  int width(int depth) const;

  const std::vector<PolytreeNode>& nodes() const { return nodes_; }
  const std::vector<PolytreeEdge>& edges() const { return edges_; }

  // Position of the node with this id, or -1.
  int find(NodeId id) const;

  // Edge indices into edges() where the node at `pos` is the child / parent.
  const std::vector<int>& parent_edges(int pos) const {
    return parent_edges_[pos];
  }
  const std::vector<int>& child_edges(int pos) const {
    return child_edges_[pos];
  }

 private:
  int message_count_ = 0;
  int max_depth_ = 0;
  std::vector<PolytreeNode> nodes_;   // sorted by id
  std::vector<PolytreeEdge> edges_;   // sorted by (parent, child)
  std::vector<std::vector<int>> parent_edges_;
  std::vector<std::vector<int>> child_edges_;
};

// Path between two nodes of the polytree, descending parent-to-child.
struct DescendantPath {
  int ancestor = -1;    // node position
  int descendant = -1;  // node position
  std::vector<int> nodes;         // positions, ancestor first
  std::vector<VertexId> connectors;  // shared vertex per hop, ancestor side first
  std::vector<VertexId> vp;       // union of sets after the first, minus connectors
};

struct DerivedSets {
  std::vector<VertexId> inner;      // union of all node sets, sorted
  std::vector<VertexId> non_inner;  // complement, sorted
  // home[v] = node position whose reduced set owns v, -1 for non-inner.
  std::vector<int> home;
  // reduced[p] = node vertices minus those shared with parents, sorted.
  std::vector<std::vector<VertexId>> reduced;
  std::vector<std::vector<VertexId>> parent_shared;  // per node, sorted
  std::vector<std::vector<VertexId>> child_shared;   // per node, sorted
  // branch_nodes[e] = node positions in the subtree hanging off edge e
  // (the child and everything below it).
  std::vector<std::vector<int>> branch_nodes;
  // Keyed by (ancestor position, descendant position), ancestor strictly
  // above. Only pairs connected by a descending chain appear.
  std::map<std::pair<int, int>, DescendantPath> paths;
};

// Computes every derived set the decoding construction needs. Throws
// std::invalid_argument naming the offending nodes when the polytree shape
// itself is broken (duplicate ids handled at construction; here: shared
// vertex not in both sets, non-tree link graph, bad depths).
DerivedSets derive_sets(const Digraph& g, const PolytreeDecomposition& decomp);

enum class BranchMode {
  kSelf,     // the branch's shared vertex is the probe vertex itself
  kShared,   // unique I-path to the shared vertex
  kDescend,  // unique I-paths to every vertex of V_P down to a terminal node
};

struct BranchResolution {
  VertexId vertex = -1;  // probe vertex in the reduced set
  int node = -1;         // probe vertex's node position
  int edge = -1;         // child edge this resolution is for
  BranchMode mode = BranchMode::kShared;
  int terminal = -1;     // descendant node position when mode == kDescend
  std::vector<VertexId> targets;  // vertices this branch must reach
};

struct BranchOutcome {
  bool ok = false;
  std::vector<BranchResolution> resolutions;
  std::string detail;             // set when !ok
  std::vector<VertexId> witness;  // set when !ok
};

// Resolves, for every reduced-set vertex and every child branch of its node,
// whether the branch is satisfied by the shared vertex or by descending to a
// deeper node. Part of condition checking but exposed separately because the
// tree builder replays the same choices.
BranchOutcome resolve_branches(const Digraph& g,
                               const PolytreeDecomposition& decomp,
                               const DerivedSets& derived);

// Evaluates the four structural conditions. Report entries, in order:
//   node-labels, node-tree, node-overlap, node-size   (structure)
//   inner-path-unique                                  (unique I-paths)
//   inner-cycle-isolated, outer-acyclic                (cycle exclusion)
//   outer-coverage, outer-terminals                    (non-inner placement)
// When the structure entries fail the later ones are omitted since the
// derived sets they depend on are not well defined.
VerificationReport check_conditions(const Digraph& g,
                                    const PolytreeDecomposition& decomp);

// Full acceptance check: graph/decomposition sizes agree and all condition
// entries pass. Never throws on verification failure; the report carries it.
VerificationReport verify_oic(const Digraph& g,
                              const PolytreeDecomposition& decomp);

// Decoding tree for one inner receiver. `contributing` lists the polytree
// nodes whose combined symbols the receiver consumes, in id order.
struct OicTree {
  RootedTree tree;
  int home = -1;                       // root's node position
  std::vector<int> contributing;       // node positions, id order
  std::vector<VertexId> vertex_set;    // V_k: tree vertex targets plus root
};

// Builds the decoding tree rooted at an inner vertex of some reduced set.
// Requires a graph/decomposition pair that verify_oic accepts; throws
// std::invalid_argument when the root is not a reduced-set vertex and
// std::logic_error when a required I-path is missing or ambiguous (which
// verification would have rejected).
OicTree build_tree_oic(const Digraph& g, const PolytreeDecomposition& decomp,
                       const DerivedSets& derived, VertexId root);

struct SuggestLimits {
  int max_cycles = 64;      // cycles harvested as seeds
  int max_candidates = 48;  // candidate families tried against verify_oic
  int max_nodes = 3;        // largest family size attempted
  int max_results = 8;
};

struct SuggestionResult {
  std::vector<PolytreeDecomposition> decompositions;  // ranked, best first
  bool budget_exhausted = false;
};

// Best-effort search for decompositions the verifier accepts, seeded by
// short cycles and their pairwise intersections. Deliberately incomplete:
// an empty result does not prove none exists. Ranked by code length
// (non-inner count + node count), ties by node count.
SuggestionResult suggest_decompositions(const Digraph& g,
                                        const SuggestLimits& limits = {});

}  // namespace interlace
