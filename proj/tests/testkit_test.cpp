#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "interlace/json_io.hpp"
#include "interlace/testkit.hpp"

using namespace interlace;
namespace fs = std::filesystem;

namespace {

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

OicProfile small_profile() {
  OicProfile p;
  p.depth = 1;
  p.widths = {1, 2};
  p.min_node_size = 3;
  p.max_node_size = 4;
  p.non_inner = 2;
  return p;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const char* name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const Fixture& fixture_named(const std::vector<Fixture>& all,
                             const std::string& name) {
  for (const auto& f : all)
    if (f.name == name) return f;
  REQUIRE(false);
  return all.front();
}

}  // namespace

TEST_CASE("the edge hash is stable") {
  Digraph g(2, {{0, 1}});
  CHECK(edge_list_hash(g) == "799098e06d109d31");
  Digraph other(2);
  CHECK(edge_list_hash(other) != edge_list_hash(g));
}

TEST_CASE("the pinned fixtures load and self-check") {
  auto all = load_fixtures();
  REQUIRE(all.size() == 8);
  std::vector<std::string> names;
  for (const auto& f : all) names.push_back(f.name);
  CHECK(names == std::vector<std::string>{"chain10", "chain12", "chain6",
                                          "chain9", "fork8", "merge10",
                                          "single5", "single6"});
  for (const auto& f : all) {
    CHECK(f.capacity.num == 1);
    CHECK(f.capacity.den == f.expected_code.length());
    CHECK(f.expected_plans.size() ==
          static_cast<std::size_t>(f.instance.graph.vertex_count()));
  }
  const auto& chain12 = fixture_named(all, "chain12");
  CHECK(!chain12.minrank.has_value());
  CHECK(fixture_named(all, "chain6").minrank == 3);
}

TEST_CASE("a tampered fixture is refused by its hash") {
  TempDir dir("interlace_tamper_fixture");
  std::ofstream out(dir.path / "tamper.json");
  out << R"({
    "name": "tamper",
    "graph": {"K": 5, "edges": [[0,2],[0,3],[1,2],[1,4],[2,3],[2,4],[3,1],[4,0]], "t": 1},
    "decomposition": {"nodes": [{"i": 0, "j": 1, "vertices": [0,1,2]}], "edges": []},
    "edge_hash": "0000000000000000",
    "expected": {
      "code": [{"label": "y_I", "mask_hex": "07"},
               {"label": "y_4", "mask_hex": "0a"},
               {"label": "y_5", "mask_hex": "11"}],
      "plans": [{"receiver": 0, "gamma": ["y_I", "y_4"], "tau_hex": "0d"},
                {"receiver": 1, "gamma": ["y_I", "y_5"], "tau_hex": "16"},
                {"receiver": 2, "gamma": ["y_I", "y_4", "y_5"], "tau_hex": "1c"},
                {"receiver": 3, "gamma": ["y_4"], "tau_hex": "0a"},
                {"receiver": 4, "gamma": ["y_5"], "tau_hex": "11"}],
      "capacity": {"num": 1, "den": 3},
      "mais": 3
    }
  })";
  out.close();
  CHECK_THROWS_WITH_AS(load_fixtures(dir.path.string()),
                       doctest::Contains("edge hash mismatch"),
                       std::runtime_error);
}

TEST_CASE("fixture directories must exist and hold fixtures") {
  TempDir dir("interlace_empty_fixture");
  CHECK_THROWS_WITH_AS(load_fixtures(dir.path.string()),
                       doctest::Contains("no fixtures found"),
                       std::runtime_error);
  CHECK_THROWS_AS(load_fixtures((dir.path / "missing").string()),
                  std::runtime_error);
}

TEST_CASE("generated structures always verify") {
  for (std::uint64_t seed : {1ULL, 7ULL, 42ULL, 1234ULL}) {
    auto [inst, decomp] = random_oic(small_profile(), seed);
    auto report = verify_oic(inst.graph, decomp);
    CHECK(report.ok());
    auto derived = derive_sets(inst.graph, decomp);
    CHECK(derived.non_inner.size() == 2);
    CHECK(decomp.node_count() == 3);
    for (const auto& node : decomp.nodes()) {
      CHECK(static_cast<int>(node.vertices.size()) >= 3);
      CHECK(static_cast<int>(node.vertices.size()) <= 4);
    }
  }
}

TEST_CASE("generation is deterministic in the seed") {
  auto a = random_oic(small_profile(), 11);
  auto b = random_oic(small_profile(), 11);
  CHECK(a.first.graph == b.first.graph);
  CHECK(decomposition_json(a.second) == decomposition_json(b.second));
}

TEST_CASE("profiles are validated before generation") {
  auto p = small_profile();
  p.widths = {1};
  CHECK_THROWS_WITH_AS(random_oic(p, 1),
                       doctest::Contains("one entry per depth level"),
                       std::invalid_argument);
  p = small_profile();
  p.min_node_size = 1;
  CHECK_THROWS_WITH_AS(random_oic(p, 1),
                       doctest::Contains("2 <= min <= max"),
                       std::invalid_argument);
  p = small_profile();
  p.widths = {2, 1};
  p.depth = 1;
  CHECK_NOTHROW(random_oic(p, 1));  // two roots joined one level down
  p.widths = {2};
  p.depth = 0;
  CHECK_THROWS_WITH_AS(random_oic(p, 1),
                       doctest::Contains("several roots"),
                       std::invalid_argument);
  p = small_profile();
  p.non_inner = -1;
  CHECK_THROWS_AS(random_oic(p, 1), std::invalid_argument);
}

TEST_CASE("exhaustive simulation covers every vector") {
  auto all = load_fixtures();
  const auto& f = fixture_named(all, "single5");
  auto rep = simulate(f.instance, f.decomposition, 0, 1);
  CHECK(rep.exhaustive);
  CHECK(rep.trials == 32);
  CHECK(rep.failures == 0);
  REQUIRE(rep.receivers.size() == 5);
  for (const auto& r : rep.receivers) {
    CHECK(r.attempts == 32);
    CHECK(r.failures == 0);
  }
  CHECK(!rep.first_failure.has_value());
}

TEST_CASE("random simulation handles wide messages") {
  SuicpInstance inst(chain6_graph(), 8);
  auto rep = simulate(inst, chain6_decomp(), 50, 3);
  CHECK(!rep.exhaustive);
  CHECK(rep.trials == 50);
  CHECK(rep.seed == 3);
  CHECK(rep.failures == 0);
}

TEST_CASE("simulation refuses structures that fail verification") {
  Digraph g(2, {{0, 1}});
  SuicpInstance inst(g, 1);
  CHECK_THROWS_WITH_AS(simulate(inst, InnerVertexSet(2, {0, 1}), 10, 1),
                       doctest::Contains("needs a verified structure"),
                       std::invalid_argument);
}

TEST_CASE("inner-set simulation decodes the pinned example") {
  auto all = load_fixtures();
  const auto& f = fixture_named(all, "single5");
  InnerVertexSet inner(5, {0, 1, 2});
  auto rep = simulate(f.instance, inner, 0, 1);
  CHECK(rep.exhaustive);
  CHECK(rep.failures == 0);
}
