#include "wmsf/graph.hpp"

#include <algorithm>
#include <string>

#include "wmsf/error.hpp"

namespace wmsf {

namespace {

std::string id_str(VertexId id) { return std::to_string(id); }

std::string edge_str(const Edge& e) {
  return "(" + id_str(e.u) + "," + id_str(e.v) + ")";
}

}  // namespace

Graph Graph::build(std::vector<VertexId> vertices, std::vector<Edge> edges, GraphMeta meta) {
  Graph g;
  std::sort(vertices.begin(), vertices.end());
  if (auto dup = std::adjacent_find(vertices.begin(), vertices.end()); dup != vertices.end()) {
    fail(ErrorCode::DuplicateVertexId, "duplicate vertex id " + id_str(*dup));
  }
  g.ids_ = std::move(vertices);

  for (auto& e : edges) {
    if (e.u == e.v) fail(ErrorCode::SelfLoop, "self-loop at vertex " + id_str(e.u));
    e = Edge::canonical(e.u, e.v);
    if (!std::binary_search(g.ids_.begin(), g.ids_.end(), e.u) ||
        !std::binary_search(g.ids_.begin(), g.ids_.end(), e.v)) {
      fail(ErrorCode::DanglingEndpoint, "edge " + edge_str(e) + " has an unknown endpoint");
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges_ = std::move(edges);

  const std::size_t n = g.ids_.size();
  const std::size_t m = g.edges_.size();
  g.ends_.resize(m);
  std::vector<std::size_t> deg(n, 0);
  for (std::size_t e = 0; e < m; ++e) {
    const Index a = *g.find(g.edges_[e].u);
    const Index b = *g.find(g.edges_[e].v);
    g.ends_[e] = {a, b};
    ++deg[a];
    ++deg[b];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.adj_.resize(2 * m);
  g.adj_edge_.resize(2 * m);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (std::size_t e = 0; e < m; ++e) {
    const auto [a, b] = g.ends_[e];
    g.adj_[fill[a]] = b;
    g.adj_edge_[fill[a]++] = static_cast<Index>(e);
    g.adj_[fill[b]] = a;
    g.adj_edge_[fill[b]++] = static_cast<Index>(e);
  }
  for (std::size_t v = 0; v < n; ++v) {
    const auto lo = g.offsets_[v];
    const auto hi = g.offsets_[v + 1];
    std::vector<std::pair<Index, Index>> tmp;
    tmp.reserve(hi - lo);
    for (auto i = lo; i < hi; ++i) tmp.emplace_back(g.adj_[i], g.adj_edge_[i]);
    std::sort(tmp.begin(), tmp.end());
    for (auto i = lo; i < hi; ++i) {
      g.adj_[i] = tmp[i - lo].first;
      g.adj_edge_[i] = tmp[i - lo].second;
    }
  }

  // Drop annotations for vertices that are not present.
  for (auto it = meta.levels.begin(); it != meta.levels.end();) {
    it = g.contains(it->first) ? std::next(it) : meta.levels.erase(it);
  }
  for (auto it = meta.boundary.begin(); it != meta.boundary.end();) {
    it = g.contains(*it) ? std::next(it) : meta.boundary.erase(it);
  }
  g.boundary_.assign(n, 0);
  g.levels_.assign(n, std::nullopt);
  for (auto id : meta.boundary) g.boundary_[*g.find(id)] = 1;
  for (const auto& [id, level] : meta.levels) g.levels_[*g.find(id)] = level;
  g.meta_ = std::move(meta);
  return g;
}

std::optional<Index> Graph::find(VertexId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<Index>(it - ids_.begin());
}

Index Graph::index_of(VertexId id) const {
  if (auto v = find(id)) return *v;
  fail(ErrorCode::UnknownId, "unknown vertex id " + id_str(id));
}

std::optional<Index> Graph::find_edge(VertexId a, VertexId b) const {
  const Edge key = Edge::canonical(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return static_cast<Index>(it - edges_.begin());
}

Index Graph::edge_index(const Edge& e) const {
  if (auto i = find_edge(e)) return *i;
  fail(ErrorCode::UnknownEdge, "unknown edge " + edge_str(e));
}

ComponentLabels component_labels(const Graph& g) {
  constexpr Index unset = static_cast<Index>(-1);
  ComponentLabels out;
  out.label.assign(g.num_vertices(), unset);
  std::vector<Index> stack;
  for (Index s = 0; s < g.num_vertices(); ++s) {
    if (out.label[s] != unset) continue;
    out.label[s] = out.count;
    stack.push_back(s);
    while (!stack.empty()) {
      const Index v = stack.back();
      stack.pop_back();
      for (Index w : g.neighbors(v)) {
        if (out.label[w] == unset) {
          out.label[w] = out.count;
          stack.push_back(w);
        }
      }
    }
    ++out.count;
  }
  return out;
}

std::vector<VertexSet> components(const Graph& g) {
  const auto labels = component_labels(g);
  std::vector<VertexSet> out(labels.count);
  for (Index v = 0; v < g.num_vertices(); ++v) out[labels.label[v]].push_back(g.id(v));
  return out;
}

std::vector<char> vertex_mask(const Graph& g, const VertexSet& set) {
  std::vector<char> mask(g.num_vertices(), 0);
  for (auto id : set) mask[g.index_of(id)] = 1;
  return mask;
}

std::vector<char> edge_mask(const Graph& g, const EdgeSet& set) {
  std::vector<char> mask(g.num_edges(), 0);
  for (const auto& e : set) mask[g.edge_index(e)] = 1;
  return mask;
}

namespace {

// Flood fill restricted to vertices where allowed[v] != 0; marks into seen.
std::vector<Index> flood(const Graph& g, Index start, const std::vector<char>& allowed,
                         std::vector<char>& seen) {
  std::vector<Index> out{start};
  seen[start] = 1;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Index w : g.neighbors(out[i])) {
      if (allowed[w] && !seen[w]) {
        seen[w] = 1;
        out.push_back(w);
      }
    }
  }
  return out;
}

}  // namespace

bool is_connected_set(const Graph& g, const VertexSet& set) {
  if (set.empty()) return false;
  const auto allowed = vertex_mask(g, set);
  std::vector<char> seen(g.num_vertices(), 0);
  std::size_t members = 0;
  for (char c : allowed) members += c != 0;
  return flood(g, g.index_of(set.front()), allowed, seen).size() == members;
}

std::vector<Side> sides(const Graph& g, const VertexSet& f) {
  if (f.empty()) fail(ErrorCode::BadParams, "sides: F must be nonempty");
  const auto in_f = vertex_mask(g, f);
  const std::vector<char> everywhere(g.num_vertices(), 1);
  std::vector<char> seen(g.num_vertices(), 0);
  const auto component = flood(g, g.index_of(f.front()), everywhere, seen);
  for (auto id : f) {
    if (!seen[g.index_of(id)]) {
      fail(ErrorCode::SpansComponents, "sides: F meets more than one component");
    }
  }
  if (!is_connected_set(g, f)) fail(ErrorCode::NotConnected, "sides: F is not connected");

  std::vector<char> allowed(g.num_vertices(), 0);
  for (Index v : component) allowed[v] = !in_f[v];
  std::vector<Index> order(component);
  std::sort(order.begin(), order.end());
  std::fill(seen.begin(), seen.end(), 0);

  std::vector<Side> out;
  for (Index s : order) {
    if (!allowed[s] || seen[s]) continue;
    auto members = flood(g, s, allowed, seen);
    std::sort(members.begin(), members.end());
    Side side;
    for (Index v : members) {
      side.vertices.push_back(g.id(v));
      for (Index w : g.neighbors(v)) {
        if (in_f[w]) {
          side.inner_boundary.push_back(g.id(v));
          break;
        }
      }
    }
    out.push_back(std::move(side));
  }
  return out;
}

EdgeSet edge_boundary(const Graph& g, const VertexSet& a) {
  const auto in_a = vertex_mask(g, a);
  EdgeSet out;
  for (Index e = 0; e < g.num_edges(); ++e) {
    if (in_a[g.edge_source(e)] != in_a[g.edge_target(e)]) out.push_back(g.edge(e));
  }
  return out;
}

VertexSet inner_boundary(const Graph& g, const VertexSet& a) {
  const auto in_a = vertex_mask(g, a);
  VertexSet out;
  for (Index v = 0; v < g.num_vertices(); ++v) {
    if (!in_a[v]) continue;
    for (Index w : g.neighbors(v)) {
      if (!in_a[w]) {
        out.push_back(g.id(v));
        break;
      }
    }
  }
  return out;
}

VertexSet outer_boundary(const Graph& g, const VertexSet& a) {
  const auto in_a = vertex_mask(g, a);
  VertexSet complement;
  for (Index v = 0; v < g.num_vertices(); ++v) {
    if (!in_a[v]) complement.push_back(g.id(v));
  }
  return inner_boundary(g, complement);
}

Graph induced_subgraph(const Graph& g, const VertexSet& a) {
  const auto keep = vertex_mask(g, a);
  std::vector<VertexId> ids;
  for (Index v = 0; v < g.num_vertices(); ++v) {
    if (keep[v]) ids.push_back(g.id(v));
  }
  std::vector<Edge> edges;
  for (Index e = 0; e < g.num_edges(); ++e) {
    if (keep[g.edge_source(e)] && keep[g.edge_target(e)]) edges.push_back(g.edge(e));
  }
  return Graph::build(std::move(ids), std::move(edges), g.meta());
}

Graph spanned_subgraph(const Graph& g, const EdgeSet& e) {
  for (const auto& edge : e) g.edge_index(edge);
  return Graph::build(g.vertices(), e, g.meta());
}

VertexSet to_vertex_set(const Graph& g, std::span<const Index> indices) {
  VertexSet out;
  out.reserve(indices.size());
  for (Index v : indices) out.push_back(g.id(v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

EdgeSet to_edge_set(const Graph& g, std::span<const Index> indices) {
  EdgeSet out;
  out.reserve(indices.size());
  for (Index e : indices) out.push_back(g.edge(e));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

EdgeSet edges_from_mask(const Graph& g, const std::vector<char>& mask) {
  EdgeSet out;
  for (Index e = 0; e < g.num_edges(); ++e) {
    if (mask[e]) out.push_back(g.edge(e));
  }
  return out;
}

}  // namespace wmsf
