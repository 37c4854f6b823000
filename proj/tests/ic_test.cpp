#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "interlace/ic.hpp"

using namespace interlace;

namespace {

Digraph single5_graph() {
  return Digraph(5, {{0, 2},
                     {0, 3},
                     {1, 2},
                     {1, 4},
                     {2, 3},
                     {2, 4},
                     {3, 1},
                     {4, 0}});
}

}  // namespace

TEST_CASE("inner vertex sets are normalized and validated") {
  InnerVertexSet inner(5, {2, 0, 1});
  CHECK(inner.vertices == std::vector<VertexId>{0, 1, 2});
  CHECK(inner.contains(1));
  CHECK(!inner.contains(3));
  CHECK(inner.non_inner(5) == std::vector<VertexId>{3, 4});
  CHECK(inner.mask(5) == BitVec::from_hex(5, "07"));

  CHECK_THROWS_AS(InnerVertexSet(5, {}), std::invalid_argument);
  CHECK_THROWS_AS(InnerVertexSet(5, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(InnerVertexSet(5, {5}), std::invalid_argument);
}

TEST_CASE("interior-avoiding paths skip inner interiors") {
  auto g = single5_graph();
  InnerVertexSet inner(5, {0, 1, 2});
  auto res = find_i_paths(g, inner, 0, 1, 64);
  REQUIRE(res.paths.size() == 1);
  CHECK(res.paths[0] == std::vector<VertexId>{0, 3, 1});
}

TEST_CASE("the three-cycle structure verifies cleanly") {
  auto g = single5_graph();
  auto report = verify_ic(g, InnerVertexSet(5, {0, 1, 2}));
  CHECK(report.ok());
  std::vector<std::string> names;
  for (const auto& r : report.results) names.push_back(r.condition);
  CHECK(names == std::vector<std::string>{"inner-cycle-free", "outer-coverage",
                                          "inner-path-unique",
                                          "outer-acyclic"});
}

TEST_CASE("a single vertex is vacuously a valid structure") {
  Digraph g(1);
  auto report = verify_ic(g, InnerVertexSet(1, {0}));
  CHECK(report.ok());
}

TEST_CASE("an inner cycle avoiding the other inner vertices is rejected") {
  Digraph g(3, {{0, 1}, {0, 2}, {1, 0}, {2, 0}});
  auto report = verify_ic(g, InnerVertexSet(3, {0, 1}));
  auto* cond = report.find("inner-cycle-free");
  REQUIRE(cond != nullptr);
  CHECK(!cond->passed);
  REQUIRE(!cond->witness.empty());
  CHECK(cond->witness.front() == cond->witness.back());
}

TEST_CASE("ambiguous paths between inner vertices are rejected") {
  Digraph g(3, {{0, 1}, {0, 2}, {1, 0}, {2, 1}});
  auto report = verify_ic(g, InnerVertexSet(3, {0, 1}));
  CHECK(!report.ok());
  auto* cond = report.find("inner-path-unique");
  REQUIRE(cond != nullptr);
  CHECK(!cond->passed);
  CHECK(cond->detail.find("several") != std::string::npos);
}

TEST_CASE("a missing path between inner vertices is rejected") {
  Digraph g(2, {{0, 1}});
  auto report = verify_ic(g, InnerVertexSet(2, {0, 1}));
  auto* cond = report.find("inner-path-unique");
  REQUIRE(cond != nullptr);
  CHECK(!cond->passed);
  CHECK(cond->detail.find("no interior-avoiding path") != std::string::npos);
}

TEST_CASE("non-inner vertices off every connecting path are rejected") {
  // x4 is isolated from the cycle
  Digraph g(4, {{0, 1}, {1, 2}, {2, 0}});
  auto report = verify_ic(g, InnerVertexSet(4, {0, 1, 2}));
  auto* cond = report.find("outer-coverage");
  REQUIRE(cond != nullptr);
  CHECK(!cond->passed);
  CHECK(cond->witness == std::vector<VertexId>{3});
}

TEST_CASE("a cycle among non-inner vertices is rejected in isolation") {
  // x3 <-> x4 cycle rides the unique path from x2 back to x1
  Digraph g(4, {{0, 1}, {1, 2}, {2, 3}, {3, 2}, {3, 0}});
  auto report = verify_ic(g, InnerVertexSet(4, {0, 1}));
  CHECK(!report.ok());
  auto* acyclic = report.find("outer-acyclic");
  REQUIRE(acyclic != nullptr);
  CHECK(!acyclic->passed);
  for (const auto& name :
       {"inner-cycle-free", "outer-coverage", "inner-path-unique"}) {
    auto* other = report.find(name);
    REQUIRE(other != nullptr);
    CHECK(other->passed);
  }
}

TEST_CASE("decoding trees follow the unique paths") {
  auto g = single5_graph();
  InnerVertexSet inner(5, {0, 1, 2});
  auto tree = build_tree_ic(g, inner, 0);
  CHECK(tree.root == 0);
  CHECK(tree.parent[2] == 0);
  CHECK(tree.parent[3] == 0);
  CHECK(tree.parent[1] == 3);
  CHECK(tree.depth[1] == 2);
  CHECK(tree.children[0] == std::vector<VertexId>{2, 3});
  CHECK(tree.leaves() == std::vector<VertexId>{1, 2});
  CHECK(!tree.contains(4));
  CHECK_THROWS_AS(build_tree_ic(g, inner, 3), std::invalid_argument);
}

TEST_CASE("non-inner tree vertices fan out to their whole neighborhood") {
  auto g = single5_graph();
  InnerVertexSet inner(5, {0, 1, 2});
  for (VertexId root : inner.vertices) {
    auto tree = build_tree_ic(g, inner, root);
    for (VertexId v : tree.vertices) {
      if (inner.contains(v)) continue;
      CHECK(tree.children[v] == g.out_neighbors(v));
    }
  }
}
