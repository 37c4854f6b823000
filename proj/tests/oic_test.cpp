#include <algorithm>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "interlace/json_io.hpp"
#include "interlace/oic.hpp"

using namespace interlace;

namespace {

// two cycles glued in x3 (0-based vertex 2)
Digraph chain6_graph() {
  return Digraph(6, {{0, 2},
                     {0, 3},
                     {1, 0},
                     {2, 1},
                     {2, 3},
                     {3, 1},
                     {3, 4},
                     {3, 5},
                     {4, 2},
                     {4, 5},
                     {5, 2},
                     {5, 4}});
}

PolytreeDecomposition chain6_decomp() {
  return PolytreeDecomposition(
      6,
      {PolytreeNode{{0, 1}, {0, 2, 3}}, PolytreeNode{{1, 1}, {2, 4, 5}}},
      {PolytreeEdge{{0, 1}, {1, 1}, 2}});
}

Digraph bidirected_triangle() {
  return Digraph(3, {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}});
}

const BranchResolution& resolution_for(const BranchOutcome& out, VertexId v) {
  for (const auto& r : out.resolutions)
    if (r.vertex == v) return r;
  REQUIRE(false);
  return out.resolutions.front();
}

}  // namespace

TEST_CASE("node ids order by depth then index") {
  CHECK(NodeId{0, 1}.label() == "(0,1)");
  CHECK(NodeId{0, 1} < NodeId{0, 2});
  CHECK(NodeId{0, 2} < NodeId{1, 1});
}

TEST_CASE("decomposition construction rejects malformed shapes") {
  CHECK_THROWS_AS(PolytreeDecomposition(
                      4, {PolytreeNode{{0, 1}, {0, 1}},
                          PolytreeNode{{0, 1}, {2, 3}}},
                      {}),
                  std::invalid_argument);  // duplicate id
  CHECK_THROWS_AS(PolytreeDecomposition(
                      3, {PolytreeNode{{0, 1}, {0, 1, 5}}}, {}),
                  std::invalid_argument);  // vertex out of range
  CHECK_THROWS_AS(PolytreeDecomposition(
                      4, {PolytreeNode{{0, 1}, {0, 1}}},
                      {PolytreeEdge{{0, 1}, {1, 1}, 1}}),
                  std::invalid_argument);  // edge to a missing node
  CHECK_THROWS_AS(PolytreeDecomposition(
                      4,
                      {PolytreeNode{{0, 1}, {0, 1}},
                       PolytreeNode{{1, 1}, {2, 3}}},
                      {PolytreeEdge{{0, 1}, {1, 1}, 1}}),
                  std::invalid_argument);  // shared vertex not in the child
}

TEST_CASE("derived sets on the two-node chain") {
  auto g = chain6_graph();
  auto d = chain6_decomp();
  auto s = derive_sets(g, d);

  CHECK(s.inner == std::vector<VertexId>{0, 2, 3, 4, 5});
  CHECK(s.non_inner == std::vector<VertexId>{1});
  CHECK(s.home == std::vector<int>{0, -1, 0, 0, 1, 1});
  CHECK(s.reduced[0] == std::vector<VertexId>{0, 2, 3});
  CHECK(s.reduced[1] == std::vector<VertexId>{4, 5});
  CHECK(s.parent_shared[0].empty());
  CHECK(s.parent_shared[1] == std::vector<VertexId>{2});
  CHECK(s.child_shared[0] == std::vector<VertexId>{2});
  CHECK(s.child_shared[1].empty());
  REQUIRE(s.branch_nodes.size() == 1);
  CHECK(s.branch_nodes[0] == std::vector<int>{1});

  const auto& path = s.paths.at({0, 1});
  CHECK(path.nodes == std::vector<int>{0, 1});
  CHECK(path.connectors == std::vector<VertexId>{2});
  CHECK(path.vp == std::vector<VertexId>{4, 5});
}

TEST_CASE("branch resolution picks self, shared, and descend modes") {
  auto g = chain6_graph();
  auto d = chain6_decomp();
  auto s = derive_sets(g, d);
  auto out = resolve_branches(g, d, s);
  REQUIRE(out.ok);
  REQUIRE(out.resolutions.size() == 3);  // reduced set of the root node

  const auto& self = resolution_for(out, 2);
  CHECK(self.mode == BranchMode::kSelf);

  const auto& shared = resolution_for(out, 0);
  CHECK(shared.mode == BranchMode::kShared);
  CHECK(shared.targets == std::vector<VertexId>{2});

  const auto& descend = resolution_for(out, 3);
  CHECK(descend.mode == BranchMode::kDescend);
  CHECK(descend.terminal == 1);
  CHECK(descend.targets == std::vector<VertexId>{4, 5});
}

TEST_CASE("the two-node chain verifies with all conditions reported") {
  auto report = verify_oic(chain6_graph(), chain6_decomp());
  CHECK(report.ok());
  std::vector<std::string> names;
  for (const auto& r : report.results) names.push_back(r.condition);
  CHECK(names == std::vector<std::string>{
                     "node-labels", "node-tree", "node-overlap", "node-size",
                     "inner-path-unique", "inner-cycle-isolated",
                     "outer-acyclic", "outer-coverage", "outer-terminals"});
  auto* unique = report.find("inner-path-unique");
  REQUIRE(unique != nullptr);
  CHECK(unique->detail == "branches: 1 shared, 1 descend, 1 self");
}

TEST_CASE("size mismatch short-circuits the report") {
  auto d = chain6_decomp();
  Digraph small(5, {{0, 1}});
  auto report = verify_oic(small, d);
  CHECK(!report.ok());
  REQUIRE(report.results.size() == 1);
  CHECK(report.results[0].condition == "message-count");
}

TEST_CASE("structural failures suppress the graph conditions") {
  // overlap of two vertices between the nodes
  PolytreeDecomposition d(
      6,
      {PolytreeNode{{0, 1}, {0, 2, 3}}, PolytreeNode{{1, 1}, {2, 3, 4}}},
      {PolytreeEdge{{0, 1}, {1, 1}, 2}});
  auto report = verify_oic(chain6_graph(), d);
  CHECK(!report.ok());
  auto* overlap = report.find("node-overlap");
  REQUIRE(overlap != nullptr);
  CHECK(!overlap->passed);
  CHECK(report.find("inner-path-unique") == nullptr);
  CHECK(report.find("outer-acyclic") == nullptr);
}

TEST_CASE("a node needs more vertices than polytree links") {
  PolytreeDecomposition d(
      6,
      {PolytreeNode{{0, 1}, {0, 3}}, PolytreeNode{{1, 1}, {0, 4}},
       PolytreeNode{{1, 2}, {3, 5}}},
      {PolytreeEdge{{0, 1}, {1, 1}, 0}, PolytreeEdge{{0, 1}, {1, 2}, 3}});
  auto report = verify_oic(chain6_graph(), d);
  auto* size = report.find("node-size");
  REQUIRE(size != nullptr);
  CHECK(!size->passed);
  CHECK(size->detail.find("(0,1)") != std::string::npos);
  CHECK(size->detail.find("needs more vertices than links") !=
        std::string::npos);
}

TEST_CASE("a broken unique-path condition is caught and witnessed") {
  // second route from x3 to x4 through the non-inner x2: add 1 -> 3
  auto g = Digraph(6, {{0, 2},
                       {0, 3},
                       {1, 0},
                       {1, 3},
                       {2, 1},
                       {2, 3},
                       {3, 1},
                       {3, 4},
                       {3, 5},
                       {4, 2},
                       {4, 5},
                       {5, 2},
                       {5, 4}});
  auto report = verify_oic(g, chain6_decomp());
  CHECK(!report.ok());
  auto* unique = report.find("inner-path-unique");
  REQUIRE(unique != nullptr);
  CHECK(!unique->passed);
  CHECK(unique->detail.find("several") != std::string::npos);
  CHECK(!unique->witness.empty());
}

TEST_CASE("an isolated cycle through one node vertex is rejected") {
  // x1 and the non-inner x2 form a cycle avoiding the rest of x1's node
  auto g = Digraph(6, {{0, 1},
                       {0, 2},
                       {0, 3},
                       {1, 0},
                       {2, 1},
                       {2, 3},
                       {3, 1},
                       {3, 4},
                       {3, 5},
                       {4, 2},
                       {4, 5},
                       {5, 2},
                       {5, 4}});
  auto report = verify_oic(g, chain6_decomp());
  CHECK(!report.ok());
  auto* isolated = report.find("inner-cycle-isolated");
  REQUIRE(isolated != nullptr);
  CHECK(!isolated->passed);
  CHECK(isolated->witness.front() == isolated->witness.back());
}

TEST_CASE("single-node decompositions reduce to the plain inner set") {
  Digraph g(5, {{0, 2},
                {0, 3},
                {1, 2},
                {1, 4},
                {2, 3},
                {2, 4},
                {3, 1},
                {4, 0}});
  PolytreeDecomposition d(5, {PolytreeNode{{0, 1}, {0, 1, 2}}}, {});
  auto oic = verify_oic(g, d);
  auto ic = verify_ic(g, InnerVertexSet(5, {0, 1, 2}));
  CHECK(oic.ok());
  CHECK(ic.ok());
}

TEST_CASE("decoding tree for a reduced-set vertex spans its targets") {
  auto g = chain6_graph();
  auto d = chain6_decomp();
  auto s = derive_sets(g, d);

  auto t = build_tree_oic(g, d, s, 3);  // x4, the descend case
  CHECK(t.home == 0);
  CHECK(t.contributing == std::vector<int>{0, 1});
  CHECK(t.tree.root == 3);
  for (VertexId v : {4, 5}) CHECK(t.tree.contains(v));

  auto own = build_tree_oic(g, d, s, 4);  // x5 sits in the leaf node
  CHECK(own.home == 1);
  CHECK(own.contributing == std::vector<int>{1});

  CHECK_THROWS_AS(build_tree_oic(g, d, s, 1), std::invalid_argument);
}

TEST_CASE("encode refuses a decomposition the verifier rejects") {
  auto g = chain6_graph();
  PolytreeDecomposition bad(
      6,
      {PolytreeNode{{0, 1}, {0, 2, 3}}, PolytreeNode{{1, 1}, {2, 3, 4}}},
      {PolytreeEdge{{0, 1}, {1, 1}, 2}});
  auto s = derive_sets(g, chain6_decomp());
  CHECK_THROWS_WITH_AS(encode_oic(g, bad, s),
                       doctest::Contains("decomposition fails verification"),
                       std::invalid_argument);
}

TEST_CASE("suggestions find the whole bidirected triangle") {
  auto res = suggest_decompositions(bidirected_triangle());
  REQUIRE(!res.decompositions.empty());
  const auto& best = res.decompositions.front();
  CHECK(best.node_count() == 1);
  CHECK(best.nodes()[0].vertices == std::vector<VertexId>{0, 1, 2});
}

TEST_CASE("suggestions stay empty on an acyclic graph") {
  Digraph dag(4, {{0, 1}, {1, 2}, {2, 3}});
  auto res = suggest_decompositions(dag);
  CHECK(res.decompositions.empty());
}

TEST_CASE("suggestions rediscover the two-node chain") {
  auto res = suggest_decompositions(chain6_graph());
  REQUIRE(!res.decompositions.empty());
  bool found = false;
  for (const auto& d : res.decompositions) {
    if (d.node_count() != 2) continue;
    if (verify_oic(chain6_graph(), d).ok()) found = true;
  }
  CHECK(found);
  // ranked by code length: nothing later beats the front
  auto cost = [&](const PolytreeDecomposition& d) {
    auto s = derive_sets(chain6_graph(), d);
    return static_cast<int>(s.non_inner.size()) + d.node_count();
  };
  for (const auto& d : res.decompositions)
    CHECK(cost(res.decompositions.front()) <= cost(d));
}

TEST_CASE("json decomposition round-trip preserves the structure") {
  auto d = chain6_decomp();
  auto text = decomposition_json(d);
  auto back = parse_decomposition(text, 6);
  REQUIRE(back.node_count() == 2);
  CHECK(back.nodes()[0].vertices == d.nodes()[0].vertices);
  CHECK(back.nodes()[1].vertices == d.nodes()[1].vertices);
  REQUIRE(back.edges().size() == 1);
  CHECK(back.edges()[0].shared == 2);
  CHECK(inner_payload("{\"V_I\": [0, 1]}"));
  CHECK(!inner_payload(text));
}
