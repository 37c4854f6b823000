#pragma once

#include <string>
#include <vector>

#include "interlace/graph.hpp"

namespace interlace {

// One checked condition. Failures carry a human-readable detail plus the
// offending vertices (a path, a cycle, or a single vertex, as appropriate).
struct ConditionResult {
  std::string condition;
  bool passed = true;
  std::string detail;
  std::vector<VertexId> witness;
};

struct VerificationReport {
  std::vector<ConditionResult> results;

  bool ok() const {
    for (const auto& r : results)
      if (!r.passed) return false;
    return true;
  }

  const ConditionResult* find(const std::string& condition) const {
    for (const auto& r : results)
      if (r.condition == condition) return &r;
    return nullptr;
  }

  void add_pass(std::string condition, std::string detail = "") {
    results.push_back({std::move(condition), true, std::move(detail), {}});
  }

  void add_fail(std::string condition, std::string detail,
                std::vector<VertexId> witness = {}) {
    results.push_back(
        {std::move(condition), false, std::move(detail), std::move(witness)});
  }

  // One line per condition: "PASS name" or "FAIL name: detail [witness]".
  std::string summary() const {
    std::string out;
    for (const auto& r : results) {
      out += r.passed ? "PASS " : "FAIL ";
      out += r.condition;
      if (!r.passed) {
        out += ": " + r.detail;
        if (!r.witness.empty()) out += " [" + vertex_list(r.witness) + "]";
      } else if (!r.detail.empty()) {
        out += ": " + r.detail;
      }
      out += "\n";
    }
    return out;
  }
};

}  // namespace interlace
