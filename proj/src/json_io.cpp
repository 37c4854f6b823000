#include "interlace/json_io.hpp"

#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace interlace {
namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("bad JSON: ") + e.what());
  }
}

const json& need(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end())
    throw std::invalid_argument(std::string("missing field \"") + field +
                                "\"");
  return *it;
}

int need_int(const json& j, const char* field) {
  const json& v = need(j, field);
  if (!v.is_number_integer())
    throw std::invalid_argument(std::string("field \"") + field +
                                "\" must be an integer");
  return v.get<int>();
}

std::string need_string(const json& j, const char* field) {
  const json& v = need(j, field);
  if (!v.is_string())
    throw std::invalid_argument(std::string("field \"") + field +
                                "\" must be a string");
  return v.get<std::string>();
}

std::vector<VertexId> vertex_array(const json& v, const char* what) {
  if (!v.is_array())
    throw std::invalid_argument(std::string(what) +
                                " must be an array of vertex ids");
  std::vector<VertexId> out;
  for (const auto& e : v) {
    if (!e.is_number_integer())
      throw std::invalid_argument(std::string(what) +
                                  " holds a non-integer entry");
    out.push_back(e.get<int>());
  }
  return out;
}

NodeId parse_node_id(const json& v, const char* what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
      !v[1].is_number_integer())
    throw std::invalid_argument(std::string(what) + " must be an [i, j] pair");
  return NodeId{v[0].get<int>(), v[1].get<int>()};
}

json plan_object(const DecodingPlan& p) {
  json j;
  j["receiver"] = p.receiver;
  j["gamma"] = p.gamma;
  j["tau_hex"] = p.tau.to_hex();
  j["side_hex"] = p.side.to_hex();
  return j;
}

}  // namespace

SuicpInstance parse_instance(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object())
    throw std::invalid_argument("instance must be a JSON object");
  Digraph g(need_int(j, "K"));
  const json& edges = need(j, "edges");
  if (!edges.is_array())
    throw std::invalid_argument("field \"edges\" must be an array");
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      throw std::invalid_argument("every edge must be a [from, to] pair");
    g.add_edge(e[0].get<int>(), e[1].get<int>());
  }
  int t = j.contains("t") ? need_int(j, "t") : 1;
  return SuicpInstance(std::move(g), t);
}

std::string instance_json(const SuicpInstance& instance) {
  json j;
  j["K"] = instance.graph.vertex_count();
  json edges = json::array();
  for (auto [u, v] : instance.graph.edges())
    edges.push_back(json::array({u, v}));
  j["edges"] = std::move(edges);
  j["t"] = instance.t;
  return j.dump(2);
}

InnerVertexSet parse_inner(const std::string& text, int k) {
  json j = parse_text(text);
  if (!j.is_object())
    throw std::invalid_argument("inner set must be a JSON object");
  return InnerVertexSet(k, vertex_array(need(j, "V_I"), "field \"V_I\""));
}

std::string inner_json(const InnerVertexSet& inner) {
  json j;
  j["V_I"] = inner.vertices;
  return j.dump(2);
}

PolytreeDecomposition parse_decomposition(const std::string& text, int k) {
  json j = parse_text(text);
  if (!j.is_object())
    throw std::invalid_argument("decomposition must be a JSON object");
  const json& jnodes = need(j, "nodes");
  if (!jnodes.is_array())
    throw std::invalid_argument("field \"nodes\" must be an array");
  std::vector<PolytreeNode> nodes;
  for (const auto& n : jnodes) {
    PolytreeNode node;
    node.id = NodeId{need_int(n, "i"), need_int(n, "j")};
    node.vertices = vertex_array(need(n, "vertices"), "field \"vertices\"");
    nodes.push_back(std::move(node));
  }
  std::vector<PolytreeEdge> edges;
  if (j.contains("edges")) {
    const json& jedges = j["edges"];
    if (!jedges.is_array())
      throw std::invalid_argument("field \"edges\" must be an array");
    for (const auto& e : jedges)
      edges.push_back(PolytreeEdge{parse_node_id(need(e, "parent"), "parent"),
                                   parse_node_id(need(e, "child"), "child"),
                                   need_int(e, "shared")});
  }
  return PolytreeDecomposition(k, std::move(nodes), std::move(edges));
}

std::string decomposition_json(const PolytreeDecomposition& decomp) {
  json j;
  json jnodes = json::array();
  for (const auto& n : decomp.nodes()) {
    json e;
    e["i"] = n.id.depth;
    e["j"] = n.id.index;
    e["vertices"] = n.vertices;
    jnodes.push_back(std::move(e));
  }
  j["nodes"] = std::move(jnodes);
  json jedges = json::array();
  for (const auto& e : decomp.edges()) {
    json o;
    o["parent"] = json::array({e.parent.depth, e.parent.index});
    o["child"] = json::array({e.child.depth, e.child.index});
    o["shared"] = e.shared;
    jedges.push_back(std::move(o));
  }
  j["edges"] = std::move(jedges);
  return j.dump(2);
}

bool inner_payload(const std::string& text) {
  json j = parse_text(text);
  return j.is_object() && j.contains("V_I");
}

LinearCode parse_code(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object()) throw std::invalid_argument("code must be a JSON object");
  int k = need_int(j, "K");
  const json& jsyms = need(j, "symbols");
  if (!jsyms.is_array())
    throw std::invalid_argument("field \"symbols\" must be an array");
  std::vector<CodeSymbol> symbols;
  for (const auto& s : jsyms)
    symbols.push_back(
        {need_string(s, "label"), BitVec::from_hex(k, need_string(s, "mask_hex"))});
  return LinearCode(k, std::move(symbols));
}

std::string code_json(const LinearCode& code) {
  json j;
  j["K"] = code.message_count();
  json syms = json::array();
  for (const auto& s : code.symbols()) {
    json e;
    e["label"] = s.label;
    e["mask_hex"] = s.mask.to_hex();
    syms.push_back(std::move(e));
  }
  j["symbols"] = std::move(syms);
  return j.dump(2);
}

std::string plan_json(const DecodingPlan& plan) {
  return plan_object(plan).dump(2);
}

std::string plans_json(const std::vector<DecodingPlan>& plans) {
  json arr = json::array();
  for (const auto& p : plans) arr.push_back(plan_object(p));
  return arr.dump(2);
}

std::string report_json(const VerificationReport& report) {
  json j;
  j["ok"] = report.ok();
  json results = json::array();
  for (const auto& r : report.results) {
    json e;
    e["condition"] = r.condition;
    e["passed"] = r.passed;
    if (!r.detail.empty()) e["detail"] = r.detail;
    if (!r.witness.empty()) e["witness"] = r.witness;
    results.push_back(std::move(e));
  }
  j["results"] = std::move(results);
  return j.dump(2);
}

std::string bounds_json(const BoundsReport& report) {
  json j;
  j["code_length"] = report.code_length;
  if (report.mais) j["mais"] = *report.mais;
  j["mais_witness"] = report.mais_witness;
  j["capacity"] = {{"num", report.capacity.num}, {"den", report.capacity.den}};
  if (report.beta) j["beta"] = *report.beta;
  if (!report.notes.empty()) j["notes"] = report.notes;
  return j.dump(2);
}

}  // namespace interlace
