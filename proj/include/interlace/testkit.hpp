#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "interlace/bounds.hpp"
#include "interlace/codec.hpp"
#include "interlace/graph.hpp"
#include "interlace/ic.hpp"
#include "interlace/oic.hpp"

namespace interlace {

struct ExpectedPlan {
  int receiver = 0;
  std::vector<std::string> gamma;
  std::string tau_hex;
};

// A pinned reference instance: graph, decomposition, and the outputs the
// library must reproduce exactly. Loaded from JSON and locked by an edge
// list hash so silent edits to the inputs are caught.
struct Fixture {
  std::string name;
  SuicpInstance instance;
  PolytreeDecomposition decomposition;
  LinearCode expected_code;
  std::vector<ExpectedPlan> expected_plans;
  Rational capacity;
  int mais = 0;
  std::optional<int> minrank;
  std::vector<std::string> notes;
};

std::string default_fixture_dir();

// Loads every .json fixture in the directory, checks the stored edge hash,
// and recomputes verification, code, and plans against the pinned values.
// Any divergence throws std::runtime_error naming the fixture.
std::vector<Fixture> load_fixtures();
std::vector<Fixture> load_fixtures(const std::string& dir);

// FNV-1a over the canonical edge list; matches the "edge_hash" field.
std::string edge_list_hash(const Digraph& g);

// Shape of a generated instance: how many node layers, how many nodes per
// layer, node size bounds, and how many plain receivers to append.
struct OicProfile {
  int depth = 1;
  std::vector<int> widths;
  int min_node_size = 3;
  int max_node_size = 4;
  int non_inner = 0;
};

// Draws a decomposition matching the profile together with a graph the
// verifier provably accepts. Deterministic in the seed.
std::pair<SuicpInstance, PolytreeDecomposition> random_oic(
    const OicProfile& profile, std::uint64_t seed);

struct ReceiverStat {
  int receiver = 0;
  std::uint64_t attempts = 0;
  std::uint64_t failures = 0;
};

struct FailureCase {
  MessageVector messages;
  int receiver = 0;
  std::uint64_t expected = 0;
  std::uint64_t decoded = 0;
};

struct SimulationReport {
  bool exhaustive = false;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::uint64_t seed = 0;
  std::vector<ReceiverStat> receivers;
  std::optional<FailureCase> first_failure;
};

// Encodes, decodes every receiver, and compares against the true message.
// Exhausts all 2^K message vectors when K <= 16 and t == 1; otherwise runs
// seeded random trials.
SimulationReport simulate(const SuicpInstance& instance,
                          const PolytreeDecomposition& decomp,
                          std::uint64_t trials, std::uint64_t seed);
SimulationReport simulate(const SuicpInstance& instance,
                          const InnerVertexSet& inner, std::uint64_t trials,
                          std::uint64_t seed);

}  // namespace interlace
