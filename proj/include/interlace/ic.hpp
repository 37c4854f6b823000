#pragma once

#include <vector>

#include "interlace/codec.hpp"
#include "interlace/graph.hpp"
#include "interlace/verify.hpp"

namespace interlace {

// Distinguished vertex subset for the single-cycle structure. Kept sorted.
struct InnerVertexSet {
  std::vector<VertexId> vertices;

  InnerVertexSet() = default;
  InnerVertexSet(int k, std::vector<VertexId> inner);

  bool contains(VertexId v) const;
  int size() const { return static_cast<int>(vertices.size()); }

  // Mask with a bit per inner vertex.
  BitVec mask(int k) const;
  std::vector<VertexId> non_inner(int k) const;
};

// Paths whose interior avoids every inner vertex (endpoints exempt).
PathEnumeration find_i_paths(const Digraph& g, const InnerVertexSet& inner,
                             VertexId from, VertexId to,
                             size_t max_count = kDefaultPathLimit);

// Checks the four structural conditions for a single interlinked cycle:
//  1. no cycle through an inner vertex avoiding all other inner vertices
//  2. exactly one interior-avoiding path between every ordered inner pair
//  3. every non-inner vertex lies on such a path
//  4. the non-inner vertices induce an acyclic subgraph
VerificationReport verify_ic(const Digraph& g, const InnerVertexSet& inner);

// Length K - N + 1 code: the XOR of all inner vertices plus, for each
// non-inner j ascending, x_j XOR its out-neighborhood. Pre: verify_ic passes.
LinearCode encode_ic(const Digraph& g, const InnerVertexSet& inner);

// Decoding tree for one receiver: root plus the unique interior-avoiding
// paths toward every other inner vertex, merged. parent[root] = -1 and
// entries for vertices outside the tree are -1; depth[root] = 0.
struct RootedTree {
  VertexId root = -1;
  std::vector<VertexId> vertices;  // sorted
  std::vector<VertexId> parent;    // size K
  std::vector<int> depth;          // size K, -1 outside the tree
  std::vector<std::vector<VertexId>> children;  // size K, each sorted

  bool contains(VertexId v) const;
  std::vector<VertexId> leaves() const;
};

// Tree rooted at an inner vertex whose leaves are exactly the other inner
// vertices. Pre: verify_ic passes and root is inner.
RootedTree build_tree_ic(const Digraph& g, const InnerVertexSet& inner,
                         VertexId root);

}  // namespace interlace
