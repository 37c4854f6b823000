#pragma once

#include <string>
#include <vector>

#include "interlace/bounds.hpp"
#include "interlace/codec.hpp"
#include "interlace/graph.hpp"
#include "interlace/ic.hpp"
#include "interlace/oic.hpp"
#include "interlace/verify.hpp"

namespace interlace {

// Wire formats (0-based vertex ids throughout):
//   instance       {"K": int, "edges": [[from, to], ...], "t": int?}
//   inner set      {"V_I": [ids]}
//   decomposition  {"nodes": [{"i": int, "j": int, "vertices": [ids]}],
//                   "edges": [{"parent": [i,j], "child": [i,j],
//                              "shared": id}]}
//   code           {"K": int, "symbols": [{"label": str, "mask_hex": str}]}
// Parsers throw std::invalid_argument naming the offending field or pair.

SuicpInstance parse_instance(const std::string& text);
std::string instance_json(const SuicpInstance& instance);

InnerVertexSet parse_inner(const std::string& text, int k);
std::string inner_json(const InnerVertexSet& inner);

PolytreeDecomposition parse_decomposition(const std::string& text, int k);
std::string decomposition_json(const PolytreeDecomposition& decomp);

// True when the payload carries {"V_I": ...} rather than nodes and edges.
bool inner_payload(const std::string& text);

LinearCode parse_code(const std::string& text);
std::string code_json(const LinearCode& code);

std::string plan_json(const DecodingPlan& plan);
std::string plans_json(const std::vector<DecodingPlan>& plans);

std::string report_json(const VerificationReport& report);
std::string bounds_json(const BoundsReport& report);

}  // namespace interlace
