#include "interlace/codec.hpp"

#include <stdexcept>
#include <utility>

#include "interlace/ic.hpp"
#include "interlace/oic.hpp"

namespace interlace {
namespace {

std::uint64_t width_mask(int t) {
  return t >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << t) - 1;
}

std::string vertex_symbol(VertexId v) {
  return "y_" + std::to_string(v + 1);
}

std::string node_symbol(const PolytreeDecomposition& decomp, int pos) {
  if (decomp.node_count() == 1) return "y_I";
  return "y_I^" + decomp.nodes()[pos].id.label();
}

// Combines the named symbols into tau, splits off the side mask and checks
// it against the receiver's side information.
DecodingPlan finish_plan(const Digraph& g, const LinearCode& code,
                         VertexId receiver, std::vector<std::string> gamma) {
  BitVec tau(code.message_count());
  for (const auto& label : gamma) {
    int idx = code.find_label(label);
    if (idx < 0)
      throw std::logic_error("plan for " + vertex_name(receiver) +
                             " names unknown symbol " + label);
    tau ^= code.symbol(idx).mask;
  }
  if (!tau.test(receiver))
    throw std::logic_error("combined symbols for " + vertex_name(receiver) +
                           " do not contain its message");
  BitVec side = tau;
  side.flip(receiver);
  for (int b : side.set_bits())
    if (!g.has_edge(receiver, b))
      throw std::logic_error("plan for " + vertex_name(receiver) + " needs " +
                             vertex_name(b) +
                             " outside its side information");
  DecodingPlan plan;
  plan.receiver = receiver;
  plan.gamma = std::move(gamma);
  plan.tau = std::move(tau);
  plan.side = std::move(side);
  return plan;
}

DecodingPlan plan_oic(const Digraph& g, const PolytreeDecomposition& decomp,
                      const DerivedSets& derived, const LinearCode& code,
                      VertexId receiver) {
  if (derived.home[receiver] < 0)
    return finish_plan(g, code, receiver, {vertex_symbol(receiver)});
  auto tree = build_tree_oic(g, decomp, derived, receiver);
  std::vector<std::string> gamma;
  for (int pos : tree.contributing) gamma.push_back(node_symbol(decomp, pos));
  for (VertexId v : tree.tree.vertices)
    if (derived.home[v] < 0) gamma.push_back(vertex_symbol(v));
  return finish_plan(g, code, receiver, std::move(gamma));
}

DecodingPlan plan_ic(const Digraph& g, const InnerVertexSet& inner,
                     const LinearCode& code, VertexId receiver) {
  if (!inner.contains(receiver))
    return finish_plan(g, code, receiver, {vertex_symbol(receiver)});
  auto tree = build_tree_ic(g, inner, receiver);
  std::vector<std::string> gamma = {"y_I"};
  for (VertexId v : tree.vertices)
    if (!inner.contains(v)) gamma.push_back(vertex_symbol(v));
  return finish_plan(g, code, receiver, std::move(gamma));
}

}  // namespace

LinearCode::LinearCode(int message_count, std::vector<CodeSymbol> symbols)
    : k_(message_count), symbols_(std::move(symbols)) {
  if (k_ < 1) throw std::invalid_argument("message count must be positive");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const auto& s = symbols_[i];
    if (s.label.empty())
      throw std::invalid_argument("code symbol without a label");
    if (s.mask.bit_count() != k_)
      throw std::invalid_argument("symbol " + s.label +
                                  " has the wrong mask width");
    if (s.mask.none())
      throw std::invalid_argument("symbol " + s.label +
                                  " selects no messages");
    for (std::size_t j = 0; j < i; ++j)
      if (symbols_[j].label == s.label)
        throw std::invalid_argument("duplicate symbol label " + s.label);
  }
}

int LinearCode::find_label(const std::string& label) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].label == label) return static_cast<int>(i);
  return -1;
}

std::vector<std::uint64_t> apply_code(const LinearCode& code,
                                      const MessageVector& messages) {
  if (messages.k != code.message_count())
    throw std::invalid_argument("message vector width mismatch");
  std::uint64_t keep = width_mask(messages.t);
  std::vector<std::uint64_t> words;
  words.reserve(code.length());
  for (const auto& s : code.symbols()) {
    std::uint64_t w = 0;
    for (int v : s.mask.set_bits()) w ^= messages.values[v] & keep;
    words.push_back(w);
  }
  return words;
}

std::uint64_t decode_receiver(const DecodingPlan& plan, const LinearCode& code,
                              const std::vector<std::uint64_t>& words,
                              const MessageVector& messages) {
  if (static_cast<int>(words.size()) != code.length())
    throw std::invalid_argument("word count differs from code length");
  if (messages.k != code.message_count())
    throw std::invalid_argument("message vector width mismatch");
  std::uint64_t keep = width_mask(messages.t);
  std::uint64_t acc = 0;
  for (const auto& label : plan.gamma) {
    int idx = code.find_label(label);
    if (idx < 0)
      throw std::invalid_argument("plan names unknown symbol " + label);
    acc ^= words[idx];
  }
  // only side-information bits are read from the messages
  for (int v : plan.side.set_bits()) acc ^= messages.values[v] & keep;
  return acc & keep;
}

DecodabilityResult check_linear_decodability(const Digraph& g,
                                             const LinearCode& code) {
  int k = g.vertex_count();
  if (k != code.message_count())
    throw std::invalid_argument("graph and code disagree on message count");
  Gf2Basis base(k);
  for (const auto& s : code.symbols()) base.insert(s.mask);
  DecodabilityResult out;
  for (VertexId r = 0; r < k; ++r) {
    Gf2Basis span = base;
    for (VertexId j : g.out_neighbors(r)) span.insert(BitVec::unit(k, j));
    bool ok = span.contains(BitVec::unit(k, r));
    out.receiver_ok.push_back(ok);
    out.all = out.all && ok;
  }
  return out;
}

LinearCode encode_oic(const Digraph& g, const PolytreeDecomposition& decomp,
                      const DerivedSets& derived) {
  int k = g.vertex_count();
  if (k != decomp.message_count())
    throw std::invalid_argument("graph and decomposition disagree on K");
  auto report = verify_oic(g, decomp);
  for (const auto& r : report.results)
    if (!r.passed)
      throw std::invalid_argument("decomposition fails verification (" +
                                  r.condition + "): " + r.detail);
  std::vector<CodeSymbol> symbols;
  for (int pos = 0; pos < decomp.node_count(); ++pos) {
    BitVec m(k);
    for (VertexId v : decomp.nodes()[pos].vertices) m.set(v);
    symbols.push_back({node_symbol(decomp, pos), std::move(m)});
  }
  for (VertexId j : derived.non_inner) {
    BitVec m(k);
    m.set(j);
    for (VertexId w : g.out_neighbors(j)) m.flip(w);
    symbols.push_back({vertex_symbol(j), std::move(m)});
  }
  return LinearCode(k, std::move(symbols));
}

DecodingPlan make_decoding_plan(const Digraph& g,
                                const PolytreeDecomposition& decomp,
                                const DerivedSets& derived,
                                VertexId receiver) {
  if (receiver < 0 || receiver >= g.vertex_count())
    throw std::invalid_argument("receiver out of range");
  auto code = encode_oic(g, decomp, derived);
  return plan_oic(g, decomp, derived, code, receiver);
}

DecodingPlan make_decoding_plan(const Digraph& g, const InnerVertexSet& inner,
                                VertexId receiver) {
  if (receiver < 0 || receiver >= g.vertex_count())
    throw std::invalid_argument("receiver out of range");
  auto code = encode_ic(g, inner);
  return plan_ic(g, inner, code, receiver);
}

std::vector<DecodingPlan> make_all_plans(const Digraph& g,
                                         const PolytreeDecomposition& decomp,
                                         const DerivedSets& derived) {
  auto code = encode_oic(g, decomp, derived);
  std::vector<DecodingPlan> plans;
  for (VertexId r = 0; r < g.vertex_count(); ++r)
    plans.push_back(plan_oic(g, decomp, derived, code, r));
  return plans;
}

std::vector<DecodingPlan> make_all_plans(const Digraph& g,
                                         const InnerVertexSet& inner) {
  auto code = encode_ic(g, inner);
  std::vector<DecodingPlan> plans;
  for (VertexId r = 0; r < g.vertex_count(); ++r)
    plans.push_back(plan_ic(g, inner, code, r));
  return plans;
}

}  // namespace interlace
