// Command line front end: verify structures, build codes and decoding
// plans, run the exact bounds, and exercise the fixtures.
//
// Exit codes: 0 pass, 1 verification or property failure, 2 malformed
// input, 3 exact search refused its budget.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "interlace/bounds.hpp"
#include "interlace/json_io.hpp"
#include "interlace/oracle.hpp"
#include "interlace/testkit.hpp"

namespace {

using namespace interlace;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// OIC_BUDGET caps both exact searches; it must be a plain positive integer
int env_budget(int fallback) {
  const char* raw = std::getenv("OIC_BUDGET");
  if (!raw) return fallback;
  std::string s(raw);
  if (s.empty() || s.size() > 9 ||
      s.find_first_not_of("0123456789") != std::string::npos || s == "0")
    throw std::invalid_argument("OIC_BUDGET must be a positive integer");
  return std::stoi(s);
}

// A structure file holds either an inner vertex set or a decomposition.
struct Structure {
  std::optional<InnerVertexSet> inner;
  std::optional<PolytreeDecomposition> decomp;
};

Structure load_structure(const std::string& path, int k) {
  std::string text = read_file(path);
  Structure s;
  if (inner_payload(text))
    s.inner = parse_inner(text, k);
  else
    s.decomp = parse_decomposition(text, k);
  return s;
}

VerificationReport run_verify(const SuicpInstance& inst, const Structure& st) {
  return st.inner ? verify_ic(inst.graph, *st.inner)
                  : verify_oic(inst.graph, *st.decomp);
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

std::string mask_terms(const BitVec& mask) {
  std::vector<std::string> names;
  for (int v : mask.set_bits()) names.push_back(vertex_name(v));
  return names.empty() ? "0" : join(names, "+");
}

std::string plan_line(const DecodingPlan& p) {
  std::string out = vertex_name(p.receiver) + " | " + join(p.gamma, ",");
  std::vector<std::string> side;
  for (int v : p.side.set_bits()) side.push_back(vertex_name(v));
  out += " | " + vertex_name(p.receiver);
  if (!side.empty()) out += "+(" + join(side, "+") + ")";
  return out;
}

struct Built {
  LinearCode code;
  std::vector<DecodingPlan> plans;
};

// Verifies first; on failure prints the report and leaves the result empty.
std::optional<Built> build_code(const SuicpInstance& inst, const Structure& st,
                                bool json_out) {
  auto report = run_verify(inst, st);
  if (!report.ok()) {
    if (json_out)
      std::cout << report_json(report) << "\n";
    else
      std::cout << report.summary();
    return std::nullopt;
  }
  if (st.inner)
    return Built{encode_ic(inst.graph, *st.inner),
                 make_all_plans(inst.graph, *st.inner)};
  auto derived = derive_sets(inst.graph, *st.decomp);
  return Built{encode_oic(inst.graph, *st.decomp, derived),
               make_all_plans(inst.graph, *st.decomp, derived)};
}

int cmd_verify(const SuicpInstance& inst, const Structure& st, bool json_out) {
  auto report = run_verify(inst, st);
  if (json_out)
    std::cout << report_json(report) << "\n";
  else
    std::cout << report.summary();
  return report.ok() ? 0 : 1;
}

int cmd_encode(const SuicpInstance& inst, const Structure& st, bool json_out) {
  auto built = build_code(inst, st, json_out);
  if (!built) return 1;
  if (json_out) {
    std::cout << code_json(built->code) << "\n";
  } else {
    for (const auto& s : built->code.symbols())
      std::cout << s.label << " = " << mask_terms(s.mask) << "\n";
  }
  return 0;
}

int cmd_plan(const SuicpInstance& inst, const Structure& st, bool json_out) {
  auto built = build_code(inst, st, json_out);
  if (!built) return 1;
  if (json_out) {
    std::cout << plans_json(built->plans) << "\n";
  } else {
    for (const auto& p : built->plans) std::cout << plan_line(p) << "\n";
  }
  return 0;
}

std::vector<std::uint64_t> parse_values(const std::string& csv, int k, int t) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.size() > 20 ||
        item.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument(
          "values must be comma separated non-negative integers");
    std::uint64_t v = std::stoull(item);
    if (t < 64 && v >> t)
      throw std::invalid_argument("value " + item + " does not fit in " +
                                  std::to_string(t) + " bit(s)");
    out.push_back(v);
  }
  if (static_cast<int>(out.size()) != k)
    throw std::invalid_argument("expected " + std::to_string(k) +
                                " values, got " + std::to_string(out.size()));
  return out;
}

int cmd_decode(const SuicpInstance& inst, const Structure& st,
               const std::string& csv, bool json_out) {
  auto built = build_code(inst, st, json_out);
  if (!built) return 1;
  int k = inst.graph.vertex_count();
  MessageVector m(k, inst.t);
  m.values = parse_values(csv, k, inst.t);
  auto words = apply_code(built->code, m);
  bool all_ok = true;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& p : built->plans) {
    std::uint64_t got = decode_receiver(p, built->code, words, m);
    std::uint64_t want = m.values[p.receiver];
    bool ok = got == want;
    all_ok = all_ok && ok;
    if (json_out)
      rows.push_back({{"receiver", p.receiver},
                      {"decoded", got},
                      {"expected", want},
                      {"ok", ok}});
    else
      std::cout << vertex_name(p.receiver) << ": decoded=" << got
                << " expected=" << want << (ok ? " ok" : " FAIL") << "\n";
  }
  if (json_out) {
    nlohmann::json j;
    j["words"] = words;
    j["rows"] = std::move(rows);
    j["ok"] = all_ok;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (all_ok ? "decode ok" : "decode FAILED") << "\n";
  }
  return all_ok ? 0 : 1;
}

int cmd_mais(const SuicpInstance& inst, bool json_out) {
  auto res = mais_exact(inst.graph, env_budget(24));
  if (json_out) {
    nlohmann::json j;
    j["mais"] = res.size;
    j["witness"] = res.witness;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "mais = " << res.size << "\n"
              << "witness = " << vertex_list(res.witness) << "\n";
  }
  return 0;
}

int cmd_capacity(const SuicpInstance& inst, const Structure& st,
                 bool json_out) {
  auto report = run_verify(inst, st);
  if (!report.ok()) {
    if (json_out)
      std::cout << report_json(report) << "\n";
    else
      std::cout << report.summary();
    return 1;
  }
  // an inner set is the one node decomposition
  PolytreeDecomposition decomp =
      st.decomp ? *st.decomp
                : PolytreeDecomposition(
                      inst.graph.vertex_count(),
                      {PolytreeNode{{0, 1}, st.inner->vertices}}, {});
  auto bounds = bounds_report(inst.graph, decomp, env_budget(24));
  if (json_out) {
    std::cout << bounds_json(bounds) << "\n";
    return 0;
  }
  std::cout << bounds.capacity.str() << "\n";
  std::cout << "code_length = " << bounds.code_length << "\n";
  if (bounds.mais) std::cout << "mais = " << *bounds.mais << "\n";
  if (bounds.beta) std::cout << "beta = " << *bounds.beta << "\n";
  for (const auto& n : bounds.notes) std::cout << "note: " << n << "\n";
  return 0;
}

int cmd_oracle(const SuicpInstance& inst, bool json_out) {
  int budget = env_budget(24);
  std::optional<MaisResult> mais;
  try {
    mais = mais_exact(inst.graph, budget);
  } catch (const BudgetError&) {
    // rank search can still run; optimality stays open
  }
  std::optional<int> floor;
  if (mais) floor = mais->size;
  auto res = minrank_gf2(inst.graph, budget, floor);
  bool optimal = mais && mais->size == res.rank;
  if (json_out) {
    nlohmann::json j;
    j["minrank"] = res.rank;
    j["states_explored"] = res.states_explored;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : res.witness.rows) rows.push_back(r.to_hex());
    j["witness_rows"] = std::move(rows);
    if (mais) {
      j["mais"] = mais->size;
      j["optimal"] = optimal;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "minrank = " << res.rank << "\n";
    std::cout << "witness rows:\n";
    for (int i = 0; i < res.witness.k; ++i)
      std::cout << "  " << vertex_name(i) << ": "
                << res.witness.rows[i].to_hex() << "\n";
    if (mais) {
      std::cout << "mais = " << mais->size << "\n";
      std::cout << (optimal ? "optimal: the acyclic bound meets the rank"
                            : "gap: acyclic bound below the rank")
                << "\n";
    } else {
      std::cout << "mais refused at this budget; optimality open\n";
    }
  }
  return 0;
}

int cmd_simulate(const SuicpInstance& inst, const Structure& st,
                 std::uint64_t trials, std::uint64_t seed, bool exhaustive,
                 bool json_out) {
  if (exhaustive &&
      (inst.graph.vertex_count() > 16 || inst.t != 1))
    throw std::invalid_argument(
        "exhaustive simulation needs K <= 16 and t == 1");
  SimulationReport rep = st.inner ? simulate(inst, *st.inner, trials, seed)
                                  : simulate(inst, *st.decomp, trials, seed);
  if (json_out) {
    nlohmann::json j;
    j["exhaustive"] = rep.exhaustive;
    j["trials"] = rep.trials;
    j["failures"] = rep.failures;
    j["seed"] = rep.seed;
    nlohmann::json rec = nlohmann::json::array();
    for (const auto& r : rep.receivers)
      rec.push_back({{"receiver", r.receiver},
                     {"attempts", r.attempts},
                     {"failures", r.failures}});
    j["receivers"] = std::move(rec);
    if (rep.first_failure) {
      const auto& f = *rep.first_failure;
      j["first_failure"] = {{"receiver", f.receiver},
                            {"expected", f.expected},
                            {"decoded", f.decoded},
                            {"messages", f.messages.values}};
    }
    std::cout << j.dump(2) << "\n";
  } else {
    if (rep.exhaustive)
      std::cout << "mode = exhaustive (" << rep.trials << " vectors)\n";
    else
      std::cout << "mode = random (" << rep.trials << " trials, seed "
                << rep.seed << ")\n";
    std::cout << "failures = " << rep.failures << "\n";
    if (rep.first_failure) {
      const auto& f = *rep.first_failure;
      std::cout << "first failure: " << vertex_name(f.receiver) << " decoded "
                << f.decoded << " expected " << f.expected << "\n";
    }
  }
  return rep.failures == 0 ? 0 : 1;
}

OicProfile parse_profile(const std::string& text) {
  OicProfile p;
  bool have_widths = false;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.empty()) continue;
    auto eq = part.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("profile entries look like key=value; got \"" +
                                  part + "\"");
    std::string key = part.substr(0, eq);
    std::string val = part.substr(eq + 1);
    auto as_int = [&key](const std::string& v) {
      if (v.empty() || v.size() > 6 ||
          v.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("profile value for " + key +
                                    " must be a small non-negative integer");
      return std::stoi(v);
    };
    if (key == "widths") {
      p.widths.clear();
      std::stringstream ws(val);
      std::string w;
      while (std::getline(ws, w, ',')) p.widths.push_back(as_int(w));
      have_widths = true;
    } else if (key == "min") {
      p.min_node_size = as_int(val);
    } else if (key == "max") {
      p.max_node_size = as_int(val);
    } else if (key == "non_inner") {
      p.non_inner = as_int(val);
    } else {
      throw std::invalid_argument("unknown profile key \"" + key + "\"");
    }
  }
  if (!have_widths || p.widths.empty())
    throw std::invalid_argument("profile needs widths=<comma list>");
  p.depth = static_cast<int>(p.widths.size()) - 1;
  return p;
}

int cmd_gen(const std::string& profile_str, std::uint64_t seed) {
  auto [inst, decomp] = random_oic(parse_profile(profile_str), seed);
  nlohmann::json j;
  j["graph"] = nlohmann::json::parse(instance_json(inst));
  j["decomposition"] = nlohmann::json::parse(decomposition_json(decomp));
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_fixtures(const std::string& dir, bool run_all, bool json_out) {
  auto fixtures = dir.empty() ? load_fixtures() : load_fixtures(dir);
  if (!run_all) {
    nlohmann::json names = nlohmann::json::array();
    for (const auto& f : fixtures) {
      if (json_out)
        names.push_back({{"name", f.name},
                         {"K", f.instance.graph.vertex_count()},
                         {"length", f.expected_code.length()}});
      else
        std::cout << f.name << " K=" << f.instance.graph.vertex_count()
                  << " length=" << f.expected_code.length() << "\n";
    }
    if (json_out) std::cout << names.dump(2) << "\n";
    return 0;
  }
  int budget = env_budget(24);
  bool all_ok = true;
  nlohmann::json results = nlohmann::json::array();
  for (const auto& f : fixtures) {
    std::string why;
    try {
      auto mr = mais_exact(f.instance.graph, budget);
      if (mr.size != f.mais)
        why = "mais " + std::to_string(mr.size) + " != pinned " +
              std::to_string(f.mais);
      if (why.empty() && f.minrank) {
        auto rank = minrank_gf2(f.instance.graph, budget, f.mais);
        if (rank.rank != *f.minrank)
          why = "minrank " + std::to_string(rank.rank) + " != pinned " +
                std::to_string(*f.minrank);
      }
      if (why.empty()) {
        auto sim = simulate(f.instance, f.decomposition, 0, 1);
        if (!sim.exhaustive)
          why = "instance too large to decode exhaustively";
        else if (sim.failures > 0)
          why = std::to_string(sim.failures) + " decode failures";
      }
    } catch (const BudgetError& e) {
      why = std::string("refused: ") + e.what();
    }
    if (json_out) {
      results.push_back({{"name", f.name},
                         {"pass", why.empty()},
                         {"length", f.expected_code.length()},
                         {"mais", f.mais},
                         {"capacity", f.capacity.str()},
                         {"detail", why}});
    } else if (why.empty()) {
      std::cout << "PASS " << f.name << " {length="
                << f.expected_code.length() << ", mais=" << f.mais
                << ", capacity=" << f.capacity.str() << "}\n";
    } else {
      std::cout << "FAIL " << f.name << ": " << why << "\n";
    }
    if (!why.empty()) all_ok = false;
  }
  if (json_out) std::cout << results.dump(2) << "\n";
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interlinked cycle structures: verify, encode, plan, bound"};
  app.require_subcommand(1);

  bool json_out = false;
  app.add_flag("--json", json_out, "machine readable output");

  std::string graph_path, structure_path, values_csv, profile_str, fix_dir;
  std::uint64_t trials = 1024, seed = 1;
  bool exhaustive = false, run_all = false;

  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("graph", graph_path, "graph JSON file")->required();
    sub->fallthrough();
  };
  auto add_structure = [&](CLI::App* sub) {
    sub->add_option("structure", structure_path,
                    "inner set or decomposition JSON file")
        ->required();
  };

  auto* c_verify = app.add_subcommand("verify", "check a structure");
  add_graph(c_verify);
  add_structure(c_verify);
  auto* c_encode = app.add_subcommand("encode", "build the code");
  add_graph(c_encode);
  add_structure(c_encode);
  auto* c_plan = app.add_subcommand("plan", "per receiver decoding plans");
  add_graph(c_plan);
  add_structure(c_plan);
  auto* c_decode =
      app.add_subcommand("decode", "encode and decode one message vector");
  add_graph(c_decode);
  add_structure(c_decode);
  c_decode->add_option("--values", values_csv, "comma separated messages")
      ->required();
  auto* c_mais =
      app.add_subcommand("mais", "largest acyclic induced vertex set");
  add_graph(c_mais);
  auto* c_capacity =
      app.add_subcommand("capacity", "achievable rate and bounds");
  add_graph(c_capacity);
  add_structure(c_capacity);
  auto* c_oracle =
      app.add_subcommand("oracle", "exact scalar linear optimum over GF(2)");
  add_graph(c_oracle);
  auto* c_simulate =
      app.add_subcommand("simulate", "encode/decode round trips");
  add_graph(c_simulate);
  add_structure(c_simulate);
  c_simulate->add_option("--trials", trials, "random trial count");
  c_simulate->add_option("--seed", seed, "random seed");
  c_simulate->add_flag("--exhaustive", exhaustive,
                       "require all message vectors (K <= 16, t == 1)");
  auto* c_gen = app.add_subcommand("gen", "draw a random verified structure");
  c_gen->add_option("--profile", profile_str,
                    "widths=1,2;min=3;max=4;non_inner=2")
      ->required();
  c_gen->add_option("--seed", seed, "random seed");
  c_gen->fallthrough();
  auto* c_fixtures = app.add_subcommand("fixtures", "pinned reference runs");
  c_fixtures->add_option("--dir", fix_dir, "fixture directory override");
  c_fixtures->add_flag("--run-all", run_all, "recheck every pinned value");
  c_fixtures->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_gen->parsed()) return cmd_gen(profile_str, seed);
    if (c_fixtures->parsed()) return cmd_fixtures(fix_dir, run_all, json_out);

    SuicpInstance inst = parse_instance(read_file(graph_path));
    if (c_mais->parsed()) return cmd_mais(inst, json_out);
    if (c_oracle->parsed()) return cmd_oracle(inst, json_out);

    Structure st = load_structure(structure_path, inst.graph.vertex_count());
    if (c_verify->parsed()) return cmd_verify(inst, st, json_out);
    if (c_encode->parsed()) return cmd_encode(inst, st, json_out);
    if (c_plan->parsed()) return cmd_plan(inst, st, json_out);
    if (c_decode->parsed()) return cmd_decode(inst, st, values_csv, json_out);
    if (c_capacity->parsed()) return cmd_capacity(inst, st, json_out);
    if (c_simulate->parsed())
      return cmd_simulate(inst, st, trials, seed, exhaustive, json_out);
    return 2;
  } catch (const interlace::BudgetError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
