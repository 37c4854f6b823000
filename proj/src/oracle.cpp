#include "interlace/oracle.hpp"

#include <string>
#include <utility>
#include <vector>

#include "interlace/gf2.hpp"

namespace interlace {

bool FittingMatrix::fits(const Digraph& g) const {
  if (k != g.vertex_count()) return false;
  if (static_cast<int>(rows.size()) != k) return false;
  for (int i = 0; i < k; ++i) {
    if (rows[i].bit_count() != k) return false;
    if (!rows[i].test(i)) return false;
    for (int j : rows[i].set_bits())
      if (j != i && !g.has_edge(i, j)) return false;
  }
  return true;
}

namespace {

// Depth-first over the free off-diagonal entries, one row at a time. Rank
// never drops as rows are added, so a branch dies once the partial basis
// reaches the best complete rank seen so far.
struct MinrankSearch {
  const Digraph& g;
  int k;
  int floor;
  int best_rank;
  std::vector<BitVec> rows;
  std::vector<BitVec> best_rows;
  std::uint64_t states = 0;
  bool done = false;

  void run(int row, const Gf2Basis& basis) {
    if (done || basis.rank() >= best_rank) return;
    if (row == k) {
      best_rank = basis.rank();
      best_rows = rows;
      if (best_rank <= floor) done = true;
      return;
    }
    const auto& nbrs = g.out_neighbors(row);
    int d = static_cast<int>(nbrs.size());
    for (std::uint32_t pick = 0; pick < (std::uint32_t{1} << d); ++pick) {
      BitVec r = BitVec::unit(k, row);
      for (int b = 0; b < d; ++b)
        if ((pick >> b) & 1) r.flip(nbrs[b]);
      ++states;
      Gf2Basis next = basis;
      next.insert(r);
      rows[row] = std::move(r);
      run(row + 1, next);
      if (done) return;
    }
  }
};

std::uint64_t saturating_pow2(int e) {
  if (e >= 64) return ~std::uint64_t{0};
  return std::uint64_t{1} << e;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s < a ? ~std::uint64_t{0} : s;
}

bool next_combination(std::vector<int>& pivots, int k) {
  int d = static_cast<int>(pivots.size());
  int i = d - 1;
  while (i >= 0 && pivots[i] == k - d + i) --i;
  if (i < 0) return false;
  ++pivots[i];
  for (int j = i + 1; j < d; ++j) pivots[j] = pivots[j - 1] + 1;
  return true;
}

int free_cell_count(const std::vector<int>& pivots, int k) {
  int d = static_cast<int>(pivots.size());
  int cells = 0;
  for (int i = 0; i < d; ++i)
    cells += (k - pivots[i] - 1) - (d - 1 - i);
  return cells;
}

}  // namespace

MinrankResult minrank_gf2(const Digraph& g, int max_free_entries,
                          std::optional<int> known_floor) {
  if (g.edge_count() > max_free_entries)
    throw BudgetError("exact minrank search over " +
                      std::to_string(g.edge_count()) +
                      " free entries exceeds the budget of " +
                      std::to_string(max_free_entries));
  int k = g.vertex_count();
  MinrankSearch search{g,
                       k,
                       known_floor.value_or(0),
                       k + 1,
                       std::vector<BitVec>(k, BitVec(k)),
                       {},
                       0,
                       false};
  search.run(0, Gf2Basis(k));
  return MinrankResult{search.best_rank,
                       FittingMatrix{k, std::move(search.best_rows)},
                       search.states};
}

std::optional<LinearCode> exhaustive_code_search(const Digraph& g, int max_len,
                                                 std::uint64_t max_states) {
  int k = g.vertex_count();
  if (max_len > k) max_len = k;
  if (max_len < 1) return std::nullopt;

  // count the candidate row spaces first and refuse before enumerating
  std::uint64_t total = 0;
  for (int d = 1; d <= max_len && total <= max_states; ++d) {
    std::vector<int> pivots(d);
    for (int i = 0; i < d; ++i) pivots[i] = i;
    do {
      total =
          saturating_add(total, saturating_pow2(free_cell_count(pivots, k)));
    } while (total <= max_states && next_combination(pivots, k));
  }
  if (total > max_states)
    throw BudgetError("row-space enumeration needs more than " +
                      std::to_string(max_states) + " candidates");

  // each subspace visited exactly once via its reduced-row-echelon basis:
  // choose pivot columns, then count through the free cells
  for (int d = 1; d <= max_len; ++d) {
    std::vector<int> pivots(d);
    for (int i = 0; i < d; ++i) pivots[i] = i;
    do {
      std::vector<bool> is_pivot(k, false);
      for (int c : pivots) is_pivot[c] = true;
      std::vector<std::pair<int, int>> cells;
      for (int i = 0; i < d; ++i)
        for (int c = pivots[i] + 1; c < k; ++c)
          if (!is_pivot[c]) cells.push_back({i, c});
      int f = static_cast<int>(cells.size());
      if (f >= 63)
        throw BudgetError("row-space enumeration cannot count " +
                          std::to_string(f) + " free cells");
      for (std::uint64_t fill = 0; fill < (std::uint64_t{1} << f); ++fill) {
        std::vector<CodeSymbol> symbols;
        symbols.reserve(d);
        for (int i = 0; i < d; ++i)
          symbols.push_back(
              {"b_" + std::to_string(i + 1), BitVec::unit(k, pivots[i])});
        for (int b = 0; b < f; ++b)
          if ((fill >> b) & 1) symbols[cells[b].first].mask.set(cells[b].second);
        LinearCode code(k, std::move(symbols));
        if (check_linear_decodability(g, code).all) return code;
      }
    } while (next_combination(pivots, k));
  }
  return std::nullopt;
}

}  // namespace interlace
