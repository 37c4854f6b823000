#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace interlace {

using VertexId = int;

// Vertex 0 prints as "x1"; reports and tables use this 1-based display form.
std::string vertex_name(VertexId v);
std::string vertex_list(const std::vector<VertexId>& vs);

// Thrown when an exact computation would exceed its configured search budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite simple digraph on the dense vertex range [0, K). No self-loops,
// no duplicate edges. Neighbor lists are kept ascending.
class Digraph {
 public:
  explicit Digraph(int vertex_count);
  Digraph(int vertex_count,
          const std::vector<std::pair<VertexId, VertexId>>& edges);

  int vertex_count() const { return static_cast<int>(out_.size()); }
  int edge_count() const { return edge_count_; }

  // Throws std::invalid_argument on out-of-range ids, self-loops and
  // duplicate edges, naming the offending pair.
  void add_edge(VertexId from, VertexId to);
  bool has_edge(VertexId from, VertexId to) const;

  const std::vector<VertexId>& out_neighbors(VertexId v) const;
  const std::vector<VertexId>& in_neighbors(VertexId v) const;

  // Edge list in canonical lexicographic (from, to) order.
  std::vector<std::pair<VertexId, VertexId>> edges() const;

  bool operator==(const Digraph& other) const = default;

 private:
  void check_vertex(VertexId v) const;

  std::vector<std::vector<VertexId>> out_;
  std::vector<std::vector<VertexId>> in_;
  int edge_count_ = 0;
};

// One-sender broadcast instance: receiver k wants message k and already
// holds the messages of out_neighbors(k). Messages carry t bits each.
struct SuicpInstance {
  Digraph graph;
  int t = 1;

  SuicpInstance(Digraph g, int t_bits = 1) : graph(std::move(g)), t(t_bits) {
    if (t < 1 || t > 64)
      throw std::invalid_argument("message width t must be in [1, 64]");
  }
};

// Enough to distinguish "none", "exactly one" and "several" with headroom
// for diagnostics that list the alternatives.
inline constexpr std::size_t kDefaultPathLimit = 64;

struct PathEnumeration {
  // Each path lists its vertices endpoint-to-endpoint. With from == to the
  // entries are simple cycles through the endpoint (length >= 2).
  std::vector<std::vector<VertexId>> paths;
  bool truncated = false;
};

// Simple directed paths from `from` to `to` whose interior vertices all
// avoid `forbidden_interior` (endpoints are exempt). Paths are produced in
// lexicographic vertex-sequence order; enumeration stops after max_count
// paths and sets `truncated` if at least one more exists.
PathEnumeration enumerate_paths(const Digraph& g, VertexId from, VertexId to,
                                const std::vector<bool>& forbidden_interior,
                                std::size_t max_count);

struct AcyclicityResult {
  bool acyclic = true;
  std::vector<VertexId> cycle;  // first cycle in DFS order when cyclic
};

AcyclicityResult is_acyclic(const Digraph& g);

struct InducedSubgraph {
  Digraph graph;
  std::vector<VertexId> original;  // new id -> old id, ascending
  std::vector<int> remap;          // old id -> new id, -1 when dropped
};

InducedSubgraph induced_subgraph(const Digraph& g,
                                 const std::vector<VertexId>& keep);

// Components ordered by smallest member, members ascending.
std::vector<std::vector<VertexId>> strongly_connected_components(
    const Digraph& g);

}  // namespace interlace
