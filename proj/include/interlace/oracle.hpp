#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "interlace/codec.hpp"
#include "interlace/graph.hpp"

namespace interlace {

// Unit-diagonal GF(2) matrix whose off-diagonal support is confined to the
// graph's edges; row k is a combination receiver k can subtract using its
// side information.
struct FittingMatrix {
  int k = 0;
  std::vector<BitVec> rows;

  bool fits(const Digraph& g) const;
};

struct MinrankResult {
  int rank = 0;
  FittingMatrix witness;
  std::uint64_t states_explored = 0;
};

// Minimum rank over all fitting matrices: the exact optimum length of any
// scalar linear code for the graph. Exhaustive over the free off-diagonal
// entries (one per edge), depth first in row-major order with incremental
// elimination; a branch is cut once its rank reaches the best known. Stops
// outright when the best reaches known_floor (pass the acyclic bound).
// Throws BudgetError when the graph has more than max_free_entries edges.
MinrankResult minrank_gf2(const Digraph& g, int max_free_entries = 24,
                          std::optional<int> known_floor = {});

// Shortest decodable code by direct enumeration of GF(2) row spaces,
// dimension by dimension, each space visited once via its canonical
// reduced-row-echelon basis. Refuses before starting when the number of
// candidate spaces exceeds max_states. Returns the first hit in
// enumeration order, or nothing up to max_len.
std::optional<LinearCode> exhaustive_code_search(
    const Digraph& g, int max_len,
    std::uint64_t max_states = std::uint64_t{1} << 20);

}  // namespace interlace
