#include <random>
#include <vector>

#include "doctest.h"
#include "interlace/bounds.hpp"
#include "interlace/codec.hpp"
#include "interlace/oracle.hpp"

using namespace interlace;

namespace {

Digraph bidirected_cycle(int n) {
  Digraph g(n);
  for (int v = 0; v < n; ++v) {
    g.add_edge(v, (v + 1) % n);
    g.add_edge((v + 1) % n, v);
  }
  return g;
}

Digraph complete_bidirected(int n) {
  Digraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) g.add_edge(u, v);
  return g;
}

int basis_rank(const FittingMatrix& m) {
  Gf2Basis basis(m.k);
  for (const auto& row : m.rows) basis.insert(row);
  return basis.rank();
}

}  // namespace

TEST_CASE("a graph without side information needs every row") {
  Digraph g(3);
  auto res = minrank_gf2(g);
  CHECK(res.rank == 3);
  CHECK(res.witness.fits(g));
}

TEST_CASE("acyclic side information saves nothing") {
  Digraph path(4, {{0, 1}, {1, 2}, {2, 3}});
  auto res = minrank_gf2(path);
  CHECK(res.rank == 4);
}

TEST_CASE("complete side information collapses to one symbol") {
  auto g = complete_bidirected(3);
  auto res = minrank_gf2(g);
  CHECK(res.rank == 1);
  CHECK(res.witness.fits(g));
}

TEST_CASE("the bidirected five-cycle separates the two bounds") {
  auto g = bidirected_cycle(5);
  auto rank = minrank_gf2(g);
  auto acyclic = mais_exact(g);
  CHECK(rank.rank == 3);
  CHECK(acyclic.size == 2);
  CHECK(rank.witness.fits(g));
  CHECK(basis_rank(rank.witness) == 3);
}

TEST_CASE("a known floor does not change the answer") {
  auto g = bidirected_cycle(5);
  auto with = minrank_gf2(g, 24, 2);
  auto without = minrank_gf2(g, 24);
  CHECK(with.rank == without.rank);
}

TEST_CASE("fitting matrices have unit diagonals confined to edges") {
  Digraph g(3, {{0, 1}});
  FittingMatrix m;
  m.k = 3;
  m.rows = {BitVec::from_hex(3, "3"), BitVec::from_hex(3, "2"),
            BitVec::from_hex(3, "4")};
  CHECK(m.fits(g));
  m.rows[1] = BitVec::from_hex(3, "6");  // off-edge entry
  CHECK(!m.fits(g));
  m.rows[1] = BitVec::from_hex(3, "4");  // zero diagonal
  CHECK(!m.fits(g));
}

TEST_CASE("the rank search refuses too many free entries") {
  CHECK_THROWS_AS(minrank_gf2(complete_bidirected(6)), BudgetError);
}

TEST_CASE("direct code enumeration meets the rank search") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 12; ++round) {
    int k = 2 + static_cast<int>(rng() % 4);  // up to 5
    Digraph g(k);
    for (int u = 0; u < k; ++u)
      for (int v = 0; v < k; ++v)
        if (u != v && rng() % 3 == 0) g.add_edge(u, v);
    auto rank = minrank_gf2(g);
    auto code = exhaustive_code_search(g, k);
    REQUIRE(code.has_value());
    CHECK(code->length() == rank.rank);
    CHECK(check_linear_decodability(g, *code).all);
    CHECK(rank.rank >= mais_exact(g).size);
  }
}

TEST_CASE("code enumeration respects its length cap") {
  auto g = bidirected_cycle(5);
  auto found = exhaustive_code_search(g, 3);
  REQUIRE(found.has_value());
  CHECK(found->length() == 3);
  CHECK(found->symbol(0).label == "b_1");
  CHECK(!exhaustive_code_search(g, 2).has_value());
}

TEST_CASE("code enumeration refuses oversized state spaces") {
  CHECK_THROWS_AS(exhaustive_code_search(bidirected_cycle(5), 5, 10),
                  BudgetError);
}
