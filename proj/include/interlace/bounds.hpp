#pragma once

#include <optional>
#include <string>
#include <vector>

#include "interlace/graph.hpp"
#include "interlace/oic.hpp"

namespace interlace {

struct Rational {
  long long num = 0;
  long long den = 1;

  bool operator==(const Rational&) const = default;
  std::string str() const {
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

struct MaisResult {
  int size = 0;
  // lexicographically smallest maximum acyclic set
  std::vector<VertexId> witness;
};

// Largest vertex set inducing an acyclic subgraph, exactly: branch and bound
// on the complement (a minimum feedback vertex set), splitting by strongly
// connected component and branching over a shortest cycle. Throws
// BudgetError above max_vertices; a correctness oracle, not a production
// solver.
MaisResult mais_exact(const Digraph& g, int max_vertices = 24);

// Acyclic set of size |V_NI| + s witnessing that no shorter code exists:
// the smallest unshared vertex of every node plus all non-inner vertices.
// Throws std::logic_error if a node has no unshared vertex or the selection
// is cyclic; both would mean the verifier let a bad structure through.
std::vector<VertexId> oic_witness(const Digraph& g,
                                  const PolytreeDecomposition& decomp,
                                  const DerivedSets& derived);

struct BoundsReport {
  int code_length = 0;
  std::optional<int> mais;  // absent when the exact search was refused
  std::vector<VertexId> mais_witness;
  Rational capacity;         // always 1 / code_length
  std::optional<int> beta;   // set only when both bounds agree
  std::vector<std::string> notes;
};

// Achievable length |V_NI| + s against the exact acyclic bound. beta is
// pinned only when the two meet; a mismatch is recorded in the notes rather
// than thrown, so callers decide how strict to be. Requires a
// decomposition that verify_oic accepts.
BoundsReport bounds_report(const Digraph& g,
                           const PolytreeDecomposition& decomp,
                           int mais_budget = 24);

}  // namespace interlace
