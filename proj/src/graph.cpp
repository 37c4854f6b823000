#include "interlace/graph.hpp"

#include <algorithm>

namespace interlace {

std::string vertex_name(VertexId v) { return "x" + std::to_string(v + 1); }

std::string vertex_list(const std::vector<VertexId>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ",";
    out += vertex_name(vs[i]);
  }
  return out;
}

Digraph::Digraph(int vertex_count) {
  if (vertex_count < 1) throw std::invalid_argument("vertex count must be >= 1");
  out_.resize(vertex_count);
  in_.resize(vertex_count);
}

Digraph::Digraph(int vertex_count,
                 const std::vector<std::pair<VertexId, VertexId>>& edges)
    : Digraph(vertex_count) {
  for (const auto& [u, v] : edges) add_edge(u, v);
}

void Digraph::check_vertex(VertexId v) const {
  if (v < 0 || v >= vertex_count())
    throw std::invalid_argument("vertex id " + std::to_string(v) +
                                " out of range [0, " +
                                std::to_string(vertex_count()) + ")");
}

void Digraph::add_edge(VertexId from, VertexId to) {
  check_vertex(from);
  check_vertex(to);
  if (from == to)
    throw std::invalid_argument("self-loop (" + std::to_string(from) + ", " +
                                std::to_string(to) + ") rejected");
  auto& outs = out_[from];
  auto it = std::lower_bound(outs.begin(), outs.end(), to);
  if (it != outs.end() && *it == to)
    throw std::invalid_argument("duplicate edge (" + std::to_string(from) +
                                ", " + std::to_string(to) + ") rejected");
  outs.insert(it, to);
  auto& ins = in_[to];
  ins.insert(std::lower_bound(ins.begin(), ins.end(), from), from);
  ++edge_count_;
}

bool Digraph::has_edge(VertexId from, VertexId to) const {
  check_vertex(from);
  check_vertex(to);
  const auto& outs = out_[from];
  return std::binary_search(outs.begin(), outs.end(), to);
}

const std::vector<VertexId>& Digraph::out_neighbors(VertexId v) const {
  check_vertex(v);
  return out_[v];
}

const std::vector<VertexId>& Digraph::in_neighbors(VertexId v) const {
  check_vertex(v);
  return in_[v];
}

std::vector<std::pair<VertexId, VertexId>> Digraph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> result;
  result.reserve(edge_count_);
  for (VertexId u = 0; u < vertex_count(); ++u)
    for (VertexId v : out_[u]) result.emplace_back(u, v);
  return result;
}

PathEnumeration enumerate_paths(const Digraph& g, VertexId from, VertexId to,
                                const std::vector<bool>& forbidden_interior,
                                std::size_t max_count) {
  if (static_cast<int>(forbidden_interior.size()) != g.vertex_count())
    throw std::invalid_argument("forbidden_interior mask size mismatch");
  PathEnumeration result;
  std::vector<bool> on_path(g.vertex_count(), false);
  std::vector<VertexId> path{from};
  // frames hold the index of the next out-neighbor to try
  std::vector<std::size_t> frame{0};
  on_path[from] = true;
  while (!frame.empty()) {
    VertexId v = path.back();
    const auto& outs = g.out_neighbors(v);
    bool advanced = false;
    while (frame.back() < outs.size()) {
      VertexId w = outs[frame.back()++];
      if (w == to) {
        // complete path; `to` may coincide with `from` (cycle case)
        if (result.paths.size() == max_count) {
          result.truncated = true;
          return result;
        }
        auto full = path;
        full.push_back(to);
        result.paths.push_back(std::move(full));
        continue;
      }
      if (on_path[w] || forbidden_interior[w]) continue;
      on_path[w] = true;
      path.push_back(w);
      frame.push_back(0);
      advanced = true;
      break;
    }
    if (!advanced) {
      frame.pop_back();
      on_path[path.back()] = false;
      path.pop_back();
    }
  }
  return result;
}

AcyclicityResult is_acyclic(const Digraph& g) {
  const int n = g.vertex_count();
  // 0 = white, 1 = on stack, 2 = done
  std::vector<int> color(n, 0);
  std::vector<VertexId> stack;
  std::vector<std::size_t> frame;
  for (VertexId start = 0; start < n; ++start) {
    if (color[start] != 0) continue;
    stack.push_back(start);
    frame.push_back(0);
    color[start] = 1;
    while (!stack.empty()) {
      VertexId v = stack.back();
      const auto& outs = g.out_neighbors(v);
      if (frame.back() < outs.size()) {
        VertexId w = outs[frame.back()++];
        if (color[w] == 1) {
          AcyclicityResult res;
          res.acyclic = false;
          auto it = std::find(stack.begin(), stack.end(), w);
          res.cycle.assign(it, stack.end());
          return res;
        }
        if (color[w] == 0) {
          color[w] = 1;
          stack.push_back(w);
          frame.push_back(0);
        }
      } else {
        color[v] = 2;
        stack.pop_back();
        frame.pop_back();
      }
    }
  }
  return {};
}

InducedSubgraph induced_subgraph(const Digraph& g,
                                 const std::vector<VertexId>& keep) {
  std::vector<VertexId> kept = keep;
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.empty())
    throw std::invalid_argument("induced subgraph needs at least one vertex");
  std::vector<int> remap(g.vertex_count(), -1);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (kept[i] < 0 || kept[i] >= g.vertex_count())
      throw std::invalid_argument("induced subgraph vertex out of range");
    remap[kept[i]] = static_cast<int>(i);
  }
  Digraph sub(static_cast<int>(kept.size()));
  for (VertexId u : kept)
    for (VertexId v : g.out_neighbors(u))
      if (remap[v] >= 0) sub.add_edge(remap[u], remap[v]);
  return {std::move(sub), std::move(kept), std::move(remap)};
}

namespace {

struct TarjanState {
  const Digraph& g;
  std::vector<int> index, lowlink;
  std::vector<bool> on_stack;
  std::vector<VertexId> stack;
  int next_index = 0;
  std::vector<std::vector<VertexId>> components;

  explicit TarjanState(const Digraph& graph)
      : g(graph),
        index(graph.vertex_count(), -1),
        lowlink(graph.vertex_count(), 0),
        on_stack(graph.vertex_count(), false) {}

  void run(VertexId root) {
    // iterative Tarjan; frames carry (vertex, next neighbor position)
    std::vector<std::pair<VertexId, std::size_t>> frames{{root, 0}};
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos == 0) {
        index[v] = lowlink[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      const auto& outs = g.out_neighbors(v);
      if (pos < outs.size()) {
        VertexId w = outs[pos++];
        if (index[w] == -1) {
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      if (lowlink[v] == index[v]) {
        std::vector<VertexId> comp;
        VertexId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
      frames.pop_back();
      if (!frames.empty()) {
        VertexId parent = frames.back().first;
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
    }
  }
};

}  // namespace

std::vector<std::vector<VertexId>> strongly_connected_components(
    const Digraph& g) {
  TarjanState state(g);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (state.index[v] == -1) state.run(v);
  std::sort(state.components.begin(), state.components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return state.components;
}

}  // namespace interlace
