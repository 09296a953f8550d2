#include "wmsf/forest.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "wmsf/error.hpp"
#include "wmsf/union_find.hpp"

namespace wmsf {

namespace {

constexpr Index kUnset = static_cast<Index>(-1);

std::string edge_str(const Edge& e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

std::vector<char> fixed_mask(const Graph& g, const EdgeSet& fixed) {
  auto mask = edge_mask(g, fixed);
  DisjointSets ds(g.num_vertices());
  for (Index e = 0; e < g.num_edges(); ++e) {
    if (mask[e] && !ds.unite(g.edge_source(e), g.edge_target(e))) {
      fail(ErrorCode::FixedSetCyclic, "fixed edge " + edge_str(g.edge(e)) + " closes a cycle in H");
    }
  }
  return mask;
}

ForestResult from_kept_mask(const Graph& g, const std::vector<char>& kept, const EdgeSet& fixed) {
  ForestResult r;
  for (Index e = 0; e < g.num_edges(); ++e) (kept[e] ? r.kept : r.deleted).push_back(g.edge(e));
  r.fixed = fixed;
  std::sort(r.fixed.begin(), r.fixed.end());
  r.fixed.erase(std::unique(r.fixed.begin(), r.fixed.end()), r.fixed.end());
  return r;
}

// Rooted view of a forest given by an edge mask.
struct RootedForest {
  std::vector<Index> parent;       // vertex index, kUnset at roots
  std::vector<Index> parent_edge;  // edge index, kUnset at roots
  std::vector<Index> depth;
  std::vector<Index> tree;         // tree label per vertex

  RootedForest(const Graph& g, const std::vector<char>& mask) {
    const Index n = static_cast<Index>(g.num_vertices());
    parent.assign(n, kUnset);
    parent_edge.assign(n, kUnset);
    depth.assign(n, 0);
    tree.assign(n, kUnset);
    std::vector<Index> queue;
    Index label = 0;
    for (Index s = 0; s < n; ++s) {
      if (tree[s] != kUnset) continue;
      tree[s] = label;
      queue.assign(1, s);
      for (std::size_t i = 0; i < queue.size(); ++i) {
        const Index v = queue[i];
        const auto nbrs = g.neighbors(v);
        const auto inc = g.incident_edges(v);
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
          if (!mask[inc[k]] || tree[nbrs[k]] != kUnset) continue;
          tree[nbrs[k]] = label;
          parent[nbrs[k]] = v;
          parent_edge[nbrs[k]] = inc[k];
          depth[nbrs[k]] = depth[v] + 1;
          queue.push_back(nbrs[k]);
        }
      }
      ++label;
    }
  }

  // Vertices from a to b along the tree, plus the edges used.
  void path(Index a, Index b, std::vector<Index>& verts, std::vector<Index>& edges) const {
    std::vector<Index> left{a}, right{b};
    std::vector<Index> left_e, right_e;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        left_e.push_back(parent_edge[a]);
        a = parent[a];
        left.push_back(a);
      } else {
        right_e.push_back(parent_edge[b]);
        b = parent[b];
        right.push_back(b);
      }
    }
    right.pop_back();
    verts = left;
    verts.insert(verts.end(), right.rbegin(), right.rend());
    edges = left_e;
    edges.insert(edges.end(), right_e.rbegin(), right_e.rend());
  }
};

}  // namespace

bool is_acyclic(const Graph& g, const EdgeSet& edges) {
  DisjointSets ds(g.num_vertices());
  for (const auto& e : edges) {
    if (!ds.unite(g.index_of(e.u), g.index_of(e.v))) return false;
  }
  return true;
}

ForestResult maximal_subforest(const Graph& g, const EdgeOrder& o, const EdgeSet& fixed,
                               bool with_witnesses) {
  if (o.size() != g.num_edges()) fail(ErrorCode::BadParams, "edge order does not match graph");
  const auto in_h = fixed_mask(g, fixed);
  DisjointSets ds(g.num_vertices());
  std::vector<char> kept(g.num_edges(), 0);
  for (Index e = 0; e < g.num_edges(); ++e) {
    if (in_h[e]) {
      ds.unite(g.edge_source(e), g.edge_target(e));
      kept[e] = 1;
    }
  }
  auto order = o.ascending();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Index e = *it;
    if (in_h[e]) continue;
    kept[e] = ds.unite(g.edge_source(e), g.edge_target(e)) ? 1 : 0;
  }
  auto r = from_kept_mask(g, kept, fixed);
  if (with_witnesses) {
    const RootedForest forest(g, kept);
    std::vector<Index> verts, edges;
    for (Index e = 0; e < g.num_edges(); ++e) {
      if (kept[e]) continue;
      forest.path(g.edge_source(e), g.edge_target(e), verts, edges);
      std::vector<VertexId> cycle;
      for (Index v : verts) cycle.push_back(g.id(v));
      r.witness.emplace(g.edge(e), std::move(cycle));
    }
  }
  return r;
}

ForestResult maximal_subforest_oracle(const Graph& g, const EdgeOrder& o, const EdgeSet& fixed,
                                      std::size_t cycle_limit) {
  if (o.size() != g.num_edges()) fail(ErrorCode::BadParams, "edge order does not match graph");
  const auto in_h = fixed_mask(g, fixed);
  std::vector<char> kept(g.num_edges(), 1);
  std::map<Edge, std::vector<VertexId>> witness;
  for (const auto& cycle : simple_cycles(g, cycle_limit)) {
    Index least = kUnset;
    for (const auto& edge : cycle.edges) {
      const Index e = *g.find_edge(edge);
      if (in_h[e]) continue;
      if (least == kUnset || o.less(e, least)) least = e;
    }
    // H is acyclic, so every cycle has a non-fixed edge.
    kept[least] = 0;
    witness.try_emplace(g.edge(least), cycle.vertices);
  }
  auto r = from_kept_mask(g, kept, fixed);
  r.witness = std::move(witness);
  return r;
}

EdgeSet fmsf(const Graph& g, const std::vector<std::uint64_t>& labels) {
  if (labels.size() != g.num_edges()) fail(ErrorCode::BadParams, "one label per edge required");
  std::vector<Index> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return labels[a] < labels[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (labels[order[i]] == labels[order[i - 1]]) {
      fail(ErrorCode::DuplicateLabel, "edges " + edge_str(g.edge(order[i - 1])) + " and " +
                                          edge_str(g.edge(order[i])) + " share a label");
    }
  }
  DisjointSets ds(g.num_vertices());
  std::vector<Index> kept;
  for (Index e : order) {
    if (ds.unite(g.edge_source(e), g.edge_target(e))) kept.push_back(e);
  }
  return to_edge_set(g, kept);
}

WitnessReport check_cut_witnesses(const Graph& g, const ForestResult& r, const EdgeOrder& o) {
  WitnessReport report;
  auto violation = [&](const Edge& e, std::string msg) {
    report.violations.push_back(e);
    report.messages.push_back(edge_str(e) + ": " + std::move(msg));
  };
  const auto kept = edge_mask(g, r.kept);
  const auto in_h = edge_mask(g, r.fixed);
  for (Index e = 0; e < g.num_edges(); ++e) {
    if (in_h[e] && !kept[e]) violation(g.edge(e), "fixed edge was deleted");
  }
  if (!is_acyclic(g, r.kept)) violation(Edge{}, "kept edges contain a cycle");

  const RootedForest forest(g, kept);
  std::vector<Index> verts, path;
  for (const auto& edge : r.deleted) {
    const Index e = g.edge_index(edge);
    if (kept[e]) {
      violation(edge, "edge is both kept and deleted");
      continue;
    }
    const Index a = g.edge_source(e);
    const Index b = g.edge_target(e);
    if (forest.tree[a] == forest.tree[b]) {
      ++report.cycle_checked;
      forest.path(a, b, verts, path);
      for (Index f : path) {
        if (!in_h[f] && o.less(f, e)) {
          violation(edge, "tree edge " + edge_str(g.edge(f)) + " on its cycle is smaller");
          break;
        }
      }
      continue;
    }
    ++report.cut_checked;
    const Index t = forest.tree[a];
    bool partner = false;
    for (Index f = 0; f < g.num_edges() && !partner; ++f) {
      if (f == e || in_h[f]) continue;
      const bool crosses = (forest.tree[g.edge_source(f)] == t) != (forest.tree[g.edge_target(f)] == t);
      partner = crosses && o.less(e, f);
    }
    if (!partner) violation(edge, "no greater edge leaves its kept tree");
  }
  return report;
}

ForestResult restrict_forest(const Graph& g, const ForestResult& r, const EdgeOrder& o,
                             const VertexSet& y) {
  if (!is_connected_set(g, y)) fail(ErrorCode::NotConnected, "restriction set is not connected");
  if (!is_cycle_invariant_by_blocks(g, y)) {
    fail(ErrorCode::NotCycleInvariant, "restriction set is not cycle-invariant");
  }
  const auto in_y = vertex_mask(g, y);
  auto inside = [&](const Edge& e) { return in_y[g.index_of(e.u)] && in_y[g.index_of(e.v)]; };
  ForestResult out;
  for (const auto& e : r.kept) {
    if (inside(e)) out.kept.push_back(e);
  }
  for (const auto& e : r.deleted) {
    if (inside(e)) out.deleted.push_back(e);
  }
  for (const auto& e : r.fixed) {
    if (inside(e)) out.fixed.push_back(e);
  }
  const Graph sub = induced_subgraph(g, y);
  const auto recomputed = maximal_subforest(sub, o.restricted(g, sub), out.fixed);
  if (!recomputed.same_edges(out)) {
    fail(ErrorCode::InvariantViolation, "restricted forest differs from recomputation");
  }
  return out;
}

}  // namespace wmsf
