#include "interlace/testkit.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "interlace/json_io.hpp"

namespace interlace {
namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

[[noreturn]] void fixture_error(const std::string& name,
                                const std::string& what) {
  throw std::runtime_error("fixture " + name + ": " + what);
}

Fixture parse_fixture(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error("fixture " + path.string() + ": " + e.what());
  }
  std::string name = path.stem().string();
  try {
    name = j.at("name").get<std::string>();
    SuicpInstance instance = parse_instance(j.at("graph").dump());
    int k = instance.graph.vertex_count();
    PolytreeDecomposition decomp =
        parse_decomposition(j.at("decomposition").dump(), k);

    std::string stored = j.at("edge_hash").get<std::string>();
    std::string computed = edge_list_hash(instance.graph);
    if (stored != computed)
      fixture_error(name, "edge hash mismatch (stored " + stored +
                              ", computed " + computed + ")");

    const json& exp = j.at("expected");
    std::vector<CodeSymbol> symbols;
    for (const auto& sym : exp.at("code"))
      symbols.push_back(
          {sym.at("label").get<std::string>(),
           BitVec::from_hex(k, sym.at("mask_hex").get<std::string>())});
    LinearCode expected_code(k, std::move(symbols));

    std::vector<ExpectedPlan> expected_plans;
    for (const auto& p : exp.at("plans")) {
      ExpectedPlan row;
      row.receiver = p.at("receiver").get<int>();
      row.gamma = p.at("gamma").get<std::vector<std::string>>();
      row.tau_hex = p.at("tau_hex").get<std::string>();
      expected_plans.push_back(std::move(row));
    }

    Rational capacity{exp.at("capacity").at("num").get<long long>(),
                      exp.at("capacity").at("den").get<long long>()};
    int mais = exp.at("mais").get<int>();
    std::optional<int> minrank;
    if (exp.contains("minrank")) minrank = exp.at("minrank").get<int>();
    std::vector<std::string> notes;
    if (j.contains("notes")) notes = j.at("notes").get<std::vector<std::string>>();

    // recompute everything the fixture pins before handing it out
    auto report = verify_oic(instance.graph, decomp);
    if (!report.ok()) fixture_error(name, "structure rejected:\n" + report.summary());
    auto derived = derive_sets(instance.graph, decomp);
    LinearCode code = encode_oic(instance.graph, decomp, derived);
    if (!(code == expected_code))
      fixture_error(name, "encoded symbols diverge from the pinned code");
    auto plans = make_all_plans(instance.graph, decomp, derived);
    if (plans.size() != expected_plans.size())
      fixture_error(name, "plan count diverges from the pinned table");
    for (std::size_t i = 0; i < plans.size(); ++i) {
      const auto& got = plans[i];
      const auto& want = expected_plans[i];
      if (got.receiver != want.receiver || got.gamma != want.gamma ||
          got.tau.to_hex() != want.tau_hex)
        fixture_error(name, "plan for " + vertex_name(want.receiver) +
                                " diverges from the pinned table");
    }
    if (capacity.num != 1 || capacity.den != code.length())
      fixture_error(name, "pinned capacity does not match the code length");

    return Fixture{std::move(name),
                   std::move(instance),
                   std::move(decomp),
                   std::move(expected_code),
                   std::move(expected_plans),
                   capacity,
                   mais,
                   minrank,
                   std::move(notes)};
  } catch (const json::exception& e) {
    fixture_error(name, e.what());
  } catch (const std::invalid_argument& e) {
    fixture_error(name, e.what());
  }
}

}  // namespace

std::string default_fixture_dir() { return INTERLACE_FIXTURE_DIR; }

std::vector<Fixture> load_fixtures() {
  return load_fixtures(default_fixture_dir());
}

std::vector<Fixture> load_fixtures(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::directory_iterator it(dir, ec);
  if (ec)
    throw std::runtime_error("cannot read fixture directory " + dir + ": " +
                             ec.message());
  std::vector<fs::path> files;
  for (const auto& entry : it)
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error("no fixtures found in " + dir);
  std::vector<Fixture> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(parse_fixture(f));
  return out;
}

std::string edge_list_hash(const Digraph& g) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  mix("K" + std::to_string(g.vertex_count()));
  for (auto [u, v] : g.edges())
    mix(":" + std::to_string(u) + "," + std::to_string(v));
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

namespace {

int draw(std::mt19937_64& rng, std::size_t n) {
  return static_cast<int>(rng() % n);
}

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

struct GenLink {
  int parent = -1;  // node positions
  int child = -1;
  VertexId shared = -1;
};

std::vector<VertexId> subtract(const std::vector<VertexId>& a,
                               const std::vector<VertexId>& b) {
  std::vector<VertexId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

}  // namespace

std::pair<SuicpInstance, PolytreeDecomposition> random_oic(
    const OicProfile& profile, std::uint64_t seed) {
  if (profile.depth < 0) throw std::invalid_argument("depth must be >= 0");
  if (profile.widths.size() != static_cast<std::size_t>(profile.depth) + 1)
    throw std::invalid_argument("widths must list one entry per depth level");
  for (int w : profile.widths)
    if (w < 1) throw std::invalid_argument("every level needs at least one node");
  if (profile.depth == 0 && profile.widths[0] != 1)
    throw std::invalid_argument("several roots need depth >= 1 to join up");
  if (profile.min_node_size < 2 ||
      profile.max_node_size < profile.min_node_size)
    throw std::invalid_argument("node size bounds must satisfy 2 <= min <= max");
  if (profile.non_inner < 0)
    throw std::invalid_argument("non_inner must be >= 0");

  std::mt19937_64 rng(seed);

  // node layout, positions in (depth, index) order
  std::vector<NodeId> ids;
  std::vector<std::vector<int>> by_depth(profile.depth + 1);
  for (int d = 0; d <= profile.depth; ++d)
    for (int j = 1; j <= profile.widths[d]; ++j) {
      by_depth[d].push_back(static_cast<int>(ids.size()));
      ids.push_back(NodeId{d, j});
    }
  int s = static_cast<int>(ids.size());

  // one parent per non-root, then extra adjacent-level links until the node
  // tree connects; merging distinct components keeps it cycle free
  std::vector<GenLink> links;
  DisjointSet dsu(s);
  for (int d = 1; d <= profile.depth; ++d)
    for (int c : by_depth[d]) {
      int p = by_depth[d - 1][draw(rng, by_depth[d - 1].size())];
      links.push_back({p, c, -1});
      dsu.unite(p, c);
    }
  for (;;) {
    std::vector<std::pair<int, int>> open;
    for (int d = 1; d <= profile.depth; ++d)
      for (int c : by_depth[d])
        for (int p : by_depth[d - 1])
          if (dsu.find(p) != dsu.find(c)) open.push_back({p, c});
    if (open.empty()) break;
    auto [p, c] = open[draw(rng, open.size())];
    links.push_back({p, c, -1});
    dsu.unite(p, c);
  }
  std::sort(links.begin(), links.end(),
            [](const GenLink& a, const GenLink& b) {
              return std::pair(a.parent, a.child) < std::pair(b.parent, b.child);
            });

  std::vector<std::vector<int>> parent_links(s), child_links(s);
  for (std::size_t li = 0; li < links.size(); ++li) {
    child_links[links[li].parent].push_back(static_cast<int>(li));
    parent_links[links[li].child].push_back(static_cast<int>(li));
  }

  // sizes within the profile bounds, bumped so every link gets a distinct
  // shared vertex and one vertex stays unshared
  std::vector<int> size(s);
  for (int p = 0; p < s; ++p) {
    int ln = static_cast<int>(parent_links[p].size() + child_links[p].size());
    if (ln + 1 > profile.max_node_size)
      throw std::invalid_argument(
          "node " + ids[p].label() + " carries " + std::to_string(ln) +
          " links; max_node_size " + std::to_string(profile.max_node_size) +
          " leaves no unshared vertex");
    int drawn = profile.min_node_size +
                draw(rng, profile.max_node_size - profile.min_node_size + 1);
    size[p] = std::max(drawn, ln + 1);
  }

  // mint vertices in position order; each parent fixes the shared vertex of
  // its downward links from its own fresh pool, without replacement
  int next_id = 0;
  std::vector<std::vector<VertexId>> fresh(s), verts(s);
  for (int p = 0; p < s; ++p) {
    for (int li : parent_links[p]) verts[p].push_back(links[li].shared);
    int take = size[p] - static_cast<int>(parent_links[p].size());
    for (int i = 0; i < take; ++i) {
      fresh[p].push_back(next_id);
      verts[p].push_back(next_id);
      ++next_id;
    }
    std::vector<VertexId> pool = fresh[p];
    for (int li : child_links[p]) {
      int at = draw(rng, pool.size());
      links[li].shared = pool[at];
      pool.erase(pool.begin() + at);
    }
    std::sort(verts[p].begin(), verts[p].end());
  }

  std::vector<std::vector<VertexId>> child_shared(s);
  for (const auto& l : links) child_shared[l.parent].push_back(l.shared);
  for (auto& cs : child_shared) std::sort(cs.begin(), cs.end());

  // descend candidates per link: chains below the link running only through
  // single-parent nodes, so the unique-path resolution provably lands on the
  // terminal we route for
  struct Chain {
    int terminal;
    std::vector<VertexId> vp;  // union below the link minus its connectors
  };
  std::vector<std::vector<Chain>> chains(links.size());
  for (std::size_t li = 0; li < links.size(); ++li) {
    if (parent_links[links[li].child].size() != 1) continue;
    std::vector<std::vector<int>> stack = {{static_cast<int>(li)}};
    while (!stack.empty()) {
      std::vector<int> hops = std::move(stack.back());
      stack.pop_back();
      int node = links[hops.back()].child;
      std::vector<VertexId> uni, conn;
      for (int h : hops) {
        uni.insert(uni.end(), verts[links[h].child].begin(),
                   verts[links[h].child].end());
        conn.push_back(links[h].shared);
      }
      std::sort(uni.begin(), uni.end());
      uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
      std::sort(conn.begin(), conn.end());
      chains[li].push_back({node, subtract(uni, conn)});
      for (int nl : child_links[node])
        if (parent_links[links[nl].child].size() == 1) {
          auto next = hops;
          next.push_back(nl);
          stack.push_back(std::move(next));
        }
    }
  }

  // every ordered pair the verifier will demand exactly one path for:
  // within-node targets, then per child link either the shared vertex or a
  // drawn descend chain
  struct PairReq {
    VertexId src;
    VertexId dst;
  };
  std::vector<PairReq> pairs;
  std::set<std::pair<VertexId, VertexId>> seen;
  auto wire = [&](VertexId a, VertexId b) {
    if (!seen.insert({a, b}).second)
      throw std::logic_error("generator produced a duplicate path requirement");
    pairs.push_back({a, b});
  };
  for (int p = 0; p < s; ++p) {
    std::vector<VertexId> base = subtract(verts[p], child_shared[p]);
    for (VertexId v : fresh[p]) {
      for (VertexId u : base)
        if (u != v) wire(v, u);
      for (int li : child_links[p]) {
        VertexId w = links[li].shared;
        if (v == w) continue;
        const auto& cands = chains[li];
        bool descend = !cands.empty() && draw(rng, 2) == 0;
        if (descend) {
          const Chain& pick = cands[draw(rng, cands.size())];
          for (VertexId u : pick.vp) wire(v, u);
        } else {
          wire(v, w);
        }
      }
    }
  }

  // spread the non-inner budget over the required paths as relay chains;
  // every other pair becomes a direct edge
  std::vector<int> relay_len(pairs.size(), 0);
  if (profile.non_inner > 0) {
    if (pairs.empty())
      throw std::invalid_argument(
          "profile has no path requirements to carry non-inner vertices");
    std::vector<int> unused(pairs.size());
    std::iota(unused.begin(), unused.end(), 0);
    std::vector<int> used;
    for (int n = 0; n < profile.non_inner; ++n) {
      bool extend;
      if (used.empty())
        extend = false;
      else if (unused.empty())
        extend = true;
      else
        extend = draw(rng, 2) == 1;
      if (extend) {
        ++relay_len[used[draw(rng, used.size())]];
      } else {
        int at = draw(rng, unused.size());
        used.push_back(unused[at]);
        unused.erase(unused.begin() + at);
        relay_len[used.back()] = 1;
      }
    }
  }

  std::vector<std::pair<VertexId, VertexId>> graph_edges;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    VertexId prev = pairs[i].src;
    for (int r = 0; r < relay_len[i]; ++r) {
      graph_edges.push_back({prev, next_id});
      prev = next_id++;
    }
    graph_edges.push_back({prev, pairs[i].dst});
  }
  int k = next_id;

  Digraph g(k, graph_edges);
  std::vector<PolytreeNode> nodes;
  for (int p = 0; p < s; ++p) nodes.push_back({ids[p], verts[p]});
  std::vector<PolytreeEdge> pedges;
  for (const auto& l : links)
    pedges.push_back({ids[l.parent], ids[l.child], l.shared});
  PolytreeDecomposition decomp(k, std::move(nodes), std::move(pedges));

  auto report = verify_oic(g, decomp);
  if (!report.ok())
    throw std::logic_error("generated structure fails verification:\n" +
                           report.summary());
  return {SuicpInstance(std::move(g), 1), std::move(decomp)};
}

namespace {

SimulationReport run_simulation(const SuicpInstance& instance,
                                const LinearCode& code,
                                const std::vector<DecodingPlan>& plans,
                                std::uint64_t trials, std::uint64_t seed) {
  int k = instance.graph.vertex_count();
  int t = instance.t;
  SimulationReport rep;
  rep.seed = seed;
  rep.exhaustive = k <= 16 && t == 1;
  rep.trials = rep.exhaustive ? std::uint64_t{1} << k : trials;
  rep.receivers.reserve(plans.size());
  for (const auto& p : plans) rep.receivers.push_back({p.receiver, 0, 0});

  std::mt19937_64 rng(seed);
  std::uint64_t mask =
      t == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << t) - 1;
  MessageVector m(k, t);
  for (std::uint64_t trial = 0; trial < rep.trials; ++trial) {
    if (rep.exhaustive)
      for (int v = 0; v < k; ++v) m.values[v] = (trial >> v) & 1;
    else
      for (int v = 0; v < k; ++v) m.values[v] = rng() & mask;
    auto words = apply_code(code, m);
    for (std::size_t i = 0; i < plans.size(); ++i) {
      std::uint64_t got = decode_receiver(plans[i], code, words, m);
      std::uint64_t want = m.values[plans[i].receiver];
      ++rep.receivers[i].attempts;
      if (got != want) {
        ++rep.receivers[i].failures;
        ++rep.failures;
        if (!rep.first_failure)
          rep.first_failure = FailureCase{m, plans[i].receiver, want, got};
      }
    }
  }
  return rep;
}

}  // namespace

SimulationReport simulate(const SuicpInstance& instance,
                          const PolytreeDecomposition& decomp,
                          std::uint64_t trials, std::uint64_t seed) {
  auto derived = derive_sets(instance.graph, decomp);
  LinearCode code = encode_oic(instance.graph, decomp, derived);
  auto plans = make_all_plans(instance.graph, decomp, derived);
  return run_simulation(instance, code, plans, trials, seed);
}

SimulationReport simulate(const SuicpInstance& instance,
                          const InnerVertexSet& inner, std::uint64_t trials,
                          std::uint64_t seed) {
  auto report = verify_ic(instance.graph, inner);
  if (!report.ok()) {
    for (const auto& r : report.results)
      if (!r.passed)
        throw std::invalid_argument("simulation needs a verified structure (" +
                                    r.condition + "): " + r.detail);
  }
  LinearCode code = encode_ic(instance.graph, inner);
  auto plans = make_all_plans(instance.graph, inner);
  return run_simulation(instance, code, plans, trials, seed);
}

}  // namespace interlace
