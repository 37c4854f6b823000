#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "interlace/codec.hpp"
#include "interlace/oic.hpp"

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

const DecodingPlan& plan_for(const std::vector<DecodingPlan>& plans,
                             VertexId receiver) {
  for (const auto& p : plans)
    if (p.receiver == receiver) return p;
  REQUIRE(false);
  return plans.front();
}

}  // namespace

TEST_CASE("linear code validates its symbols") {
  std::vector<CodeSymbol> symbols{{"a", BitVec::from_hex(4, "3")},
                                  {"b", BitVec::from_hex(4, "c")}};
  LinearCode code(4, symbols);
  CHECK(code.length() == 2);
  CHECK(code.find_label("b") == 1);
  CHECK(code.find_label("nope") == -1);

  CHECK_THROWS_AS(LinearCode(4, {{"z", BitVec(4)}}), std::invalid_argument);
  CHECK_THROWS_AS(LinearCode(4, {{"a", BitVec::from_hex(4, "3")},
                                 {"a", BitVec::from_hex(4, "c")}}),
                  std::invalid_argument);
}

TEST_CASE("apply and decode are inverse on a hand-built plan") {
  LinearCode code(3, {{"y", BitVec::from_hex(3, "7")}});
  MessageVector m(3, 8);
  m.values = {0x5a, 0x13, 0xc7};
  auto words = apply_code(code, m);
  REQUIRE(words.size() == 1);
  CHECK(words[0] == (0x5aULL ^ 0x13ULL ^ 0xc7ULL));

  DecodingPlan plan;
  plan.receiver = 0;
  plan.gamma = {"y"};
  plan.tau = BitVec::from_hex(3, "7");
  plan.side = BitVec::from_hex(3, "6");
  CHECK(decode_receiver(plan, code, words, m) == 0x5a);
}

TEST_CASE("ic encoding matches the pinned three-symbol code") {
  auto g = single5_graph();
  InnerVertexSet inner(5, {0, 1, 2});
  auto code = encode_ic(g, inner);
  REQUIRE(code.length() == 3);
  CHECK(code.symbol(0).label == "y_I");
  CHECK(code.symbol(0).mask == BitVec::from_hex(5, "07"));
  CHECK(code.symbol(1).label == "y_4");
  CHECK(code.symbol(1).mask == BitVec::from_hex(5, "0a"));
  CHECK(code.symbol(2).label == "y_5");
  CHECK(code.symbol(2).mask == BitVec::from_hex(5, "11"));
}

TEST_CASE("ic plans match the pinned table") {
  auto g = single5_graph();
  InnerVertexSet inner(5, {0, 1, 2});
  auto plans = make_all_plans(g, inner);
  REQUIRE(plans.size() == 5);

  struct Row {
    VertexId receiver;
    std::vector<std::string> gamma;
    const char* tau;
  };
  const Row table[] = {{0, {"y_I", "y_4"}, "0d"},
                       {1, {"y_I", "y_5"}, "16"},
                       {2, {"y_I", "y_4", "y_5"}, "1c"},
                       {3, {"y_4"}, "0a"},
                       {4, {"y_5"}, "11"}};
  for (const auto& row : table) {
    const auto& p = plan_for(plans, row.receiver);
    CHECK(p.gamma == row.gamma);
    CHECK(p.tau == BitVec::from_hex(5, row.tau));
    CHECK(make_decoding_plan(g, inner, row.receiver).tau == p.tau);
  }
}

TEST_CASE("oic encoding matches the pinned chain code") {
  auto g = chain6_graph();
  auto d = chain6_decomp();
  auto s = derive_sets(g, d);
  auto code = encode_oic(g, d, s);
  REQUIRE(code.length() == 3);
  CHECK(code.symbol(0).label == "y_I^(0,1)");
  CHECK(code.symbol(0).mask == BitVec::from_hex(6, "0d"));
  CHECK(code.symbol(1).label == "y_I^(1,1)");
  CHECK(code.symbol(1).mask == BitVec::from_hex(6, "34"));
  CHECK(code.symbol(2).label == "y_2");
  CHECK(code.symbol(2).mask == BitVec::from_hex(6, "03"));
}

TEST_CASE("oic plans match the pinned chain table") {
  auto g = chain6_graph();
  auto d = chain6_decomp();
  auto s = derive_sets(g, d);
  auto plans = make_all_plans(g, d, s);
  REQUIRE(plans.size() == 6);

  struct Row {
    VertexId receiver;
    std::vector<std::string> gamma;
    const char* tau;
  };
  const Row table[] = {{0, {"y_I^(0,1)"}, "0d"},
                       {1, {"y_2"}, "03"},
                       {2, {"y_I^(0,1)", "y_2"}, "0e"},
                       {3, {"y_I^(0,1)", "y_I^(1,1)", "y_2"}, "3a"},
                       {4, {"y_I^(1,1)"}, "34"},
                       {5, {"y_I^(1,1)"}, "34"}};
  for (const auto& row : table) {
    const auto& p = plan_for(plans, row.receiver);
    CHECK(p.gamma == row.gamma);
    CHECK(p.tau == BitVec::from_hex(6, row.tau));
  }
}

TEST_CASE("plan side information stays inside the receiver's out-edges") {
  auto g = chain6_graph();
  auto d = chain6_decomp();
  auto s = derive_sets(g, d);
  for (const auto& p : make_all_plans(g, d, s)) {
    CHECK(p.tau.test(p.receiver));
    auto expect = p.tau;
    expect.set(p.receiver, false);
    CHECK(p.side == expect);
    for (int v : p.side.set_bits()) CHECK(g.has_edge(p.receiver, v));
    // tau really is the XOR of the gamma symbol masks
    auto code = encode_oic(g, d, s);
    BitVec acc(6);
    for (const auto& label : p.gamma) acc ^= code.symbol(code.find_label(label)).mask;
    CHECK(acc == p.tau);
  }
}

TEST_CASE("every receiver decodes every bit pattern on the chain") {
  auto g = chain6_graph();
  auto d = chain6_decomp();
  auto s = derive_sets(g, d);
  auto code = encode_oic(g, d, s);
  auto plans = make_all_plans(g, d, s);
  for (std::uint64_t word = 0; word < 64; ++word) {
    MessageVector m(6, 1);
    for (int v = 0; v < 6; ++v) m.values[v] = (word >> v) & 1;
    auto words = apply_code(code, m);
    for (const auto& p : plans)
      CHECK(decode_receiver(p, code, words, m) == m.values[p.receiver]);
  }
}

TEST_CASE("linear decodability agrees with the plan route") {
  auto g = chain6_graph();
  auto d = chain6_decomp();
  auto s = derive_sets(g, d);
  auto code = encode_oic(g, d, s);
  auto res = check_linear_decodability(g, code);
  CHECK(res.all);

  // dropping the non-inner symbol strands x2
  LinearCode broken(6, {code.symbol(0), code.symbol(1)});
  auto bad = check_linear_decodability(g, broken);
  CHECK(!bad.all);
  CHECK(!bad.receiver_ok[1]);
}

TEST_CASE("wide messages ride the same masks") {
  auto g = single5_graph();
  InnerVertexSet inner(5, {0, 1, 2});
  auto code = encode_ic(g, inner);
  auto plans = make_all_plans(g, inner);
  MessageVector m(5, 16);
  m.values = {0xdead, 0xbeef, 0x0123, 0x4567, 0x89ab};
  auto words = apply_code(code, m);
  for (const auto& p : plans)
    CHECK(decode_receiver(p, code, words, m) == m.values[p.receiver]);
}
