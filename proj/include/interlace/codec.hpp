#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "interlace/gf2.hpp"
#include "interlace/graph.hpp"

namespace interlace {

struct InnerVertexSet;
class PolytreeDecomposition;
struct DerivedSets;

struct CodeSymbol {
  std::string label;
  BitVec mask;  // K wide; bit v means message v participates

  bool operator==(const CodeSymbol&) const = default;
};

// Scalar linear XOR code: each broadcast symbol is the XOR of the messages
// selected by its mask. Masks are nonzero and labels unique.
class LinearCode {
 public:
  LinearCode(int message_count, std::vector<CodeSymbol> symbols);

  int message_count() const { return k_; }
  int length() const { return static_cast<int>(symbols_.size()); }
  const std::vector<CodeSymbol>& symbols() const { return symbols_; }
  const CodeSymbol& symbol(int i) const { return symbols_.at(i); }

  // Index of the symbol with this label, -1 when absent.
  int find_label(const std::string& label) const;

  bool operator==(const LinearCode& other) const = default;

 private:
  int k_;
  std::vector<CodeSymbol> symbols_;
};

// K messages of t bits each; values[v] holds message v in its low t bits.
struct MessageVector {
  int k = 0;
  int t = 1;
  std::vector<std::uint64_t> values;

  MessageVector(int message_count, int t_bits)
      : k(message_count), t(t_bits), values(message_count, 0) {
    if (t < 1 || t > 64) throw std::invalid_argument("t must be in [1, 64]");
  }
};

// Receiver k recovers its message by XOR-ing the named code words with the
// side messages selected by `side`. tau = XOR of the gamma symbol masks;
// it always has bit `receiver` set and side = tau minus that bit.
struct DecodingPlan {
  VertexId receiver = -1;
  std::vector<std::string> gamma;  // labels, in code order
  BitVec tau;
  BitVec side;
};

// Broadcast words, one per code symbol, each carrying t bits.
std::vector<std::uint64_t> apply_code(const LinearCode& code,
                                      const MessageVector& messages);

// XOR of the plan's code words and side messages; equals message `receiver`
// whenever the plan is valid for the code.
std::uint64_t decode_receiver(const DecodingPlan& plan, const LinearCode& code,
                              const std::vector<std::uint64_t>& words,
                              const MessageVector& messages);

struct DecodabilityResult {
  bool all = true;
  std::vector<bool> receiver_ok;
};

// Linear-algebra route: receiver k can decode iff e_k lies in the span of
// the code masks together with {e_j : j in out_neighbors(k)}.
DecodabilityResult check_linear_decodability(const Digraph& g,
                                             const LinearCode& code);

// Cycle-structure code: one XOR symbol per decomposition node in
// (depth, index) order, then one symbol per non-inner vertex ascending.
// Node symbols are labeled y_I^(i,j), or y_I for a single node; vertex
// symbols are labeled y_<display index>. Pre: verify_oic accepts.
LinearCode encode_oic(const Digraph& g, const PolytreeDecomposition& decomp,
                      const DerivedSets& derived);

// Per-receiver plans against the code produced by encode_oic / encode_ic.
// Non-inner receivers use their own symbol; inner receivers combine the
// contributing node symbols with the symbols of the interior vertices of
// their decoding tree. Throws std::logic_error when the resulting side bits
// are not inside the receiver's side information.
DecodingPlan make_decoding_plan(const Digraph& g,
                                const PolytreeDecomposition& decomp,
                                const DerivedSets& derived, VertexId receiver);
DecodingPlan make_decoding_plan(const Digraph& g, const InnerVertexSet& inner,
                                VertexId receiver);
std::vector<DecodingPlan> make_all_plans(const Digraph& g,
                                         const PolytreeDecomposition& decomp,
                                         const DerivedSets& derived);
std::vector<DecodingPlan> make_all_plans(const Digraph& g,
                                         const InnerVertexSet& inner);

}  // namespace interlace
