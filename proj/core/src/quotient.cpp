// Collapsing a disjoint family of finite connected sets.

#include <algorithm>
#include <string>

#include "wmsf/ends.hpp"
#include "wmsf/error.hpp"

namespace wmsf {

VertexId QuotientGraph::block_id(VertexId host) const {
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (std::binary_search(blocks[b].begin(), blocks[b].end(), host)) return qgraph.id(static_cast<Index>(b));
  }
  fail(ErrorCode::UnknownId, "vertex " + std::to_string(host) + " is in no block");
}

QuotientGraph quotient(const Graph& g, const Potential& p, const std::vector<VertexSet>& family) {
  constexpr Index unset = static_cast<Index>(-1);
  const Index n = static_cast<Index>(g.num_vertices());
  std::vector<Index> owner(n, unset);
  for (std::size_t b = 0; b < family.size(); ++b) {
    if (family[b].empty()) fail(ErrorCode::BadParams, "empty block in family");
    for (VertexId id : family[b]) {
      const Index v = g.index_of(id);
      if (owner[v] != unset) {
        fail(ErrorCode::OverlappingBlocks, "vertex " + std::to_string(id) + " is in two blocks");
      }
      owner[v] = static_cast<Index>(b);
    }
    if (!is_connected_set(g, family[b])) {
      fail(ErrorCode::NotConnected, "block containing " + std::to_string(family[b].front()) +
                                        " is not connected");
    }
  }

  // Every block is named by its least id, so quotient indices follow the
  // order of least members.
  std::vector<VertexSet> blocks;
  std::vector<char> done(family.size(), 0);
  for (Index v = 0; v < n; ++v) {
    if (owner[v] == unset) {
      blocks.push_back({g.id(v)});
    } else if (!done[owner[v]]) {
      done[owner[v]] = 1;
      auto set = family[owner[v]];
      std::sort(set.begin(), set.end());
      blocks.push_back(std::move(set));
    }
  }

  QuotientGraph q;
  q.block_of.assign(n, 0);
  std::vector<VertexId> ids;
  std::vector<Rational> qvalues;
  GraphMeta meta;
  meta.annotations = g.meta().annotations;
  for (Index b = 0; b < blocks.size(); ++b) {
    const VertexId name = blocks[b].front();
    ids.push_back(name);
    Rational best = 0;
    bool boundary = false;
    for (VertexId id : blocks[b]) {
      const Index v = g.index_of(id);
      q.block_of[v] = b;
      best = std::max(best, p.value(v));
      boundary = boundary || g.is_boundary(v);
    }
    qvalues.push_back(best);
    if (boundary) meta.boundary.insert(name);
    if (blocks[b].size() == 1) {
      if (auto level = g.level(g.index_of(name))) meta.levels[name] = *level;
    }
  }

  // Choose one host edge per pair of adjacent blocks.
  std::map<Edge, Index> chosen;
  for (Index e = 0; e < g.num_edges(); ++e) {
    const Index a = q.block_of[g.edge_source(e)];
    const Index b = q.block_of[g.edge_target(e)];
    if (a == b) continue;
    const Edge qe = Edge::canonical(ids[a], ids[b]);
    auto [it, fresh] = chosen.emplace(qe, e);
    if (fresh) continue;
    const Index cur = it->second;
    const auto& wa = std::min(p.value(g.edge_source(e)), p.value(g.edge_target(e)));
    const auto& wc = std::min(p.value(g.edge_source(cur)), p.value(g.edge_target(cur)));
    // Edges are scanned in canonical order, so only a strictly heavier
    // edge replaces the current choice.
    if (wa > wc) it->second = e;
  }
  std::vector<Edge> qedges;
  for (const auto& [qe, e] : chosen) {
    qedges.push_back(qe);
    q.lift.emplace(qe, g.edge(e));
  }
  q.qgraph = Graph::build(ids, std::move(qedges), std::move(meta));
  q.qpotential = Potential::from_values(q.qgraph, std::move(qvalues));

  for (const auto& block : blocks) {
    if (block.size() < 2) continue;
    std::vector<char> in_block(n, 0);
    for (VertexId id : block) in_block[g.index_of(id)] = 1;
    std::vector<char> seen(n, 0);
    std::vector<Index> queue{g.index_of(block.front())};
    seen[queue[0]] = 1;
    EdgeSet tree;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const Index v = queue[i];
      const auto nbrs = g.neighbors(v);
      const auto inc = g.incident_edges(v);
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        if (!in_block[nbrs[k]] || seen[nbrs[k]]) continue;
        seen[nbrs[k]] = 1;
        tree.push_back(g.edge(inc[k]));
        queue.push_back(nbrs[k]);
      }
    }
    std::sort(tree.begin(), tree.end());
    q.inner_trees.emplace(block.front(), std::move(tree));
  }
  q.blocks = std::move(blocks);
  return q;
}

EdgeOrder quotient_order(const Graph& g, const QuotientGraph& q, const Tiebreak& host_tiebreak) {
  std::vector<std::uint64_t> keys(q.qgraph.num_edges());
  for (Index e = 0; e < q.qgraph.num_edges(); ++e) {
    keys[e] = host_tiebreak.key(g.edge_index(q.lift.at(q.qgraph.edge(e))));
  }
  return EdgeOrder(q.qgraph, q.qpotential, Tiebreak::from_keys(std::move(keys)));
}

EdgeSet collapse_edges(const Graph& g, const QuotientGraph& q, const EdgeSet& host_edges) {
  EdgeSet out;
  for (const auto& e : host_edges) {
    const Index a = q.block_of[g.index_of(e.u)];
    const Index b = q.block_of[g.index_of(e.v)];
    if (a != b) out.push_back(Edge::canonical(q.qgraph.id(a), q.qgraph.id(b)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CollapseResult collapsed_maximal_subforest(const Graph& g, const Potential& p,
                                           const Tiebreak& tiebreak, const ProxyParams& params,
                                           const EdgeSet& fixed_q,
                                           std::optional<FurcationFamily> family) {
  CollapseResult out;
  out.family = family ? std::move(*family) : maximal_disjoint_furcations(g, p, params);
  out.q = quotient(g, p, out.family.sets());
  const auto order = quotient_order(g, out.q, tiebreak);
  out.quotient_forest = maximal_subforest(out.q.qgraph, order, fixed_q);

  std::vector<char> kept(g.num_edges(), 0);
  for (const auto& [_, tree] : out.q.inner_trees) {
    for (const auto& e : tree) kept[g.edge_index(e)] = 1;
  }
  for (const auto& qe : out.quotient_forest.kept) kept[g.edge_index(out.q.lift.at(qe))] = 1;
  for (Index e = 0; e < g.num_edges(); ++e) {
    (kept[e] ? out.forest.kept : out.forest.deleted).push_back(g.edge(e));
  }
  for (const auto& qe : fixed_q) out.forest.fixed.push_back(out.q.lift.at(qe));
  std::sort(out.forest.fixed.begin(), out.forest.fixed.end());
  return out;
}

}  // namespace wmsf
