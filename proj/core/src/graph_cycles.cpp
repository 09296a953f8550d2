// Cycle enumeration and biconnected decomposition.

#include <algorithm>
#include <string>

#include "wmsf/error.hpp"
#include "wmsf/graph.hpp"

namespace wmsf {

std::vector<SimpleCycle> simple_cycles(const Graph& g, std::size_t limit) {
  std::vector<SimpleCycle> out;
  const Index n = static_cast<Index>(g.num_vertices());
  std::vector<char> on_path(n, 0);
  std::vector<Index> path;
  // (vertex, next neighbour position)
  std::vector<std::pair<Index, std::size_t>> frames;

  for (Index s = 0; s < n; ++s) {
    // Cycles whose least vertex is s only use vertices above s.
    path.assign(1, s);
    on_path[s] = 1;
    frames.assign(1, {s, 0});
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto nbrs = g.neighbors(v);
      if (pos == nbrs.size()) {
        on_path[v] = 0;
        path.pop_back();
        frames.pop_back();
        continue;
      }
      const Index w = nbrs[pos++];
      if (w == s && path.size() >= 3 && path[1] < path.back()) {
        if (out.size() == limit) {
          fail(ErrorCode::CycleLimitExceeded,
               "more than " + std::to_string(limit) + " simple cycles");
        }
        SimpleCycle cycle;
        for (Index x : path) cycle.vertices.push_back(g.id(x));
        for (std::size_t i = 0; i < path.size(); ++i) {
          cycle.edges.push_back(Edge::canonical(g.id(path[i]), g.id(path[(i + 1) % path.size()])));
        }
        std::sort(cycle.edges.begin(), cycle.edges.end());
        out.push_back(std::move(cycle));
        continue;
      }
      if (w <= s || on_path[w]) continue;
      on_path[w] = 1;
      path.push_back(w);
      frames.emplace_back(w, 0);
    }
  }
  return out;
}

bool is_cycle_invariant(const Graph& g, const VertexSet& y, std::size_t cycle_limit) {
  const auto in_y = vertex_mask(g, y);
  for (const auto& cycle : simple_cycles(g, cycle_limit)) {
    bool touches = false;
    for (const auto& e : cycle.edges) {
      if (in_y[g.index_of(e.u)] && in_y[g.index_of(e.v)]) {
        touches = true;
        break;
      }
    }
    if (!touches) continue;
    for (VertexId x : cycle.vertices) {
      if (!in_y[g.index_of(x)]) return false;
    }
  }
  return true;
}

namespace {

struct BlockScan {
  std::vector<Block> blocks;
  std::vector<char> articulation;
};

// Iterative Hopcroft-Tarjan over every component.
BlockScan scan_blocks(const Graph& g) {
  constexpr Index unset = static_cast<Index>(-1);
  const Index n = static_cast<Index>(g.num_vertices());
  BlockScan scan;
  scan.articulation.assign(n, 0);
  std::vector<Index> disc(n, unset), low(n, 0), parent_edge(n, unset);
  std::vector<Index> edge_stack;
  std::vector<std::pair<Index, std::size_t>> frames;
  Index clock = 0;

  auto emit_block = [&](Index tree_edge) {
    Block block;
    std::vector<Index> verts;
    while (true) {
      const Index e = edge_stack.back();
      edge_stack.pop_back();
      block.edges.push_back(e);
      verts.push_back(g.edge_source(e));
      verts.push_back(g.edge_target(e));
      if (e == tree_edge) break;
    }
    std::sort(block.edges.begin(), block.edges.end());
    block.vertices = to_vertex_set(g, verts);
    scan.blocks.push_back(std::move(block));
  };

  for (Index root = 0; root < n; ++root) {
    if (disc[root] != unset) continue;
    disc[root] = low[root] = clock++;
    frames.assign(1, {root, 0});
    std::size_t root_children = 0;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto nbrs = g.neighbors(v);
      const auto inc = g.incident_edges(v);
      if (pos < nbrs.size()) {
        const Index w = nbrs[pos];
        const Index e = inc[pos];
        ++pos;
        if (e == parent_edge[v]) continue;
        if (disc[w] == unset) {
          parent_edge[w] = e;
          disc[w] = low[w] = clock++;
          edge_stack.push_back(e);
          if (v == root) ++root_children;
          frames.emplace_back(w, 0);
        } else if (disc[w] < disc[v]) {
          edge_stack.push_back(e);
          low[v] = std::min(low[v], disc[w]);
        }
        continue;
      }
      const Index child = v;
      frames.pop_back();
      if (frames.empty()) break;
      const Index u = frames.back().first;
      low[u] = std::min(low[u], low[child]);
      if (low[child] >= disc[u]) {
        if (u != root) scan.articulation[u] = 1;
        emit_block(parent_edge[child]);
      }
    }
    if (root_children >= 2) scan.articulation[root] = 1;
  }
  std::sort(scan.blocks.begin(), scan.blocks.end(),
            [](const Block& a, const Block& b) { return a.edges < b.edges; });
  return scan;
}

}  // namespace

std::vector<Block> biconnected_blocks(const Graph& g) { return scan_blocks(g).blocks; }

VertexSet articulation_points(const Graph& g) {
  const auto scan = scan_blocks(g);
  VertexSet out;
  for (Index v = 0; v < g.num_vertices(); ++v) {
    if (scan.articulation[v]) out.push_back(g.id(v));
  }
  return out;
}

bool is_cycle_invariant_by_blocks(const Graph& g, const VertexSet& y) {
  const auto in_y = vertex_mask(g, y);
  for (const auto& block : biconnected_blocks(g)) {
    if (block.edges.size() < 2) continue;  // bridge
    bool touches = false;
    for (Index e : block.edges) {
      if (in_y[g.edge_source(e)] && in_y[g.edge_target(e)]) {
        touches = true;
        break;
      }
    }
    if (!touches) continue;
    for (VertexId x : block.vertices) {
      if (!in_y[g.index_of(x)]) return false;
    }
  }
  return true;
}

}  // namespace wmsf
