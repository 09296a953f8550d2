#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>

namespace oracle {

std::vector<EdgeSet> brute_cycles(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& e : g.edges()) {
    const Index a = g.index_of(e.u), b = g.index_of(e.v);
    adj[a][b] = adj[b][a] = true;
  }
  std::vector<EdgeSet> out;
  std::vector<Index> path;
  std::vector<bool> on(n, false);
  // Cycles are rooted at their least index and read in the direction whose
  // second vertex is smaller than the last.
  std::function<void(Index)> extend = [&](Index s) {
    const Index cur = path.back();
    for (Index nb = s + 1; nb < n; ++nb) {
      if (!adj[cur][nb] || on[nb]) continue;
      on[nb] = true;
      path.push_back(nb);
      extend(s);
      path.pop_back();
      on[nb] = false;
    }
    if (path.size() >= 3 && adj[cur][s] && path[1] < path.back()) {
      EdgeSet c;
      for (std::size_t i = 0; i < path.size(); ++i) {
        c.push_back(Edge::canonical(g.id(path[i]), g.id(path[(i + 1) % path.size()])));
      }
      std::sort(c.begin(), c.end());
      out.push_back(std::move(c));
    }
  };
  for (Index s = 0; s < n; ++s) {
    path = {s};
    on.assign(n, false);
    on[s] = true;
    extend(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational DirectOrder::weight(Index e) const {
  const Edge& ed = g->edge(e);
  const Rational& a = values[g->index_of(ed.u)];
  const Rational& b = values[g->index_of(ed.v)];
  return a < b ? a : b;
}

bool DirectOrder::less(Index a, Index b) const {
  const Rational wa = weight(a), wb = weight(b);
  if (wa != wb) return wa < wb;
  if (keys[a] != keys[b]) return keys[a] < keys[b];
  return a < b;
}

EdgeSet cycle_deleted(const DirectOrder& o, const EdgeSet& fixed) {
  const Graph& g = *o.g;
  std::set<Edge> out;
  for (const auto& c : brute_cycles(g)) {
    std::optional<Index> least;
    for (const auto& e : c) {
      if (std::binary_search(fixed.begin(), fixed.end(), e)) continue;
      const Index i = g.edge_index(e);
      if (!least || o.less(i, *least)) least = i;
    }
    if (least) out.insert(g.edge(*least));
  }
  return {out.begin(), out.end()};
}

EdgeSet prim_max_forest(const DirectOrder& o) {
  const Graph& g = *o.g;
  const std::size_t n = g.num_vertices();
  std::vector<bool> in(n, false);
  EdgeSet out;
  for (Index start = 0; start < n; ++start) {
    if (in[start]) continue;
    in[start] = true;
    for (;;) {
      std::optional<Index> best;
      for (Index e = 0; e < g.num_edges(); ++e) {
        const bool a = in[g.index_of(g.edge(e).u)], b = in[g.index_of(g.edge(e).v)];
        if (a == b) continue;
        if (!best || o.less(*best, e)) best = e;
      }
      if (!best) break;
      in[g.index_of(g.edge(*best).u)] = true;
      in[g.index_of(g.edge(*best).v)] = true;
      out.push_back(g.edge(*best));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

VertexSet brute_visibility(const Graph& g, const std::vector<Rational>& values, VertexId x) {
  const Index xi = g.index_of(x);
  const std::size_t n = g.num_vertices();
  std::vector<bool> reached(n, false), on(n, false);
  std::function<void(Index)> walk = [&](Index v) {
    reached[v] = true;
    for (Index nb : g.neighbors(v)) {
      if (on[nb] || values[nb] > values[xi]) continue;
      on[nb] = true;
      walk(nb);
      on[nb] = false;
    }
  };
  on[xi] = true;
  walk(xi);
  VertexSet out;
  for (Index v = 0; v < n; ++v) {
    if (reached[v]) out.push_back(g.id(v));
  }
  return out;
}

std::vector<VertexSet> brute_sides(const Graph& g, const VertexSet& f) {
  const std::size_t n = g.num_vertices();
  std::vector<bool> in_f(n, false);
  for (VertexId v : f) in_f[g.index_of(v)] = true;
  // Label propagation: every vertex starts with its own label and takes the
  // least label among neighbours until nothing changes.
  std::vector<Index> label(n);
  std::iota(label.begin(), label.end(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : g.edges()) {
      const Index a = g.index_of(e.u), b = g.index_of(e.v);
      if (in_f[a] || in_f[b]) continue;
      const Index m = std::min(label[a], label[b]);
      if (label[a] != m || label[b] != m) {
        label[a] = label[b] = m;
        changed = true;
      }
    }
  }
  std::vector<bool> touches(n, false);
  for (const auto& e : g.edges()) {
    const Index a = g.index_of(e.u), b = g.index_of(e.v);
    if (in_f[a] && !in_f[b]) touches[label[b]] = true;
    if (in_f[b] && !in_f[a]) touches[label[a]] = true;
  }
  std::map<Index, VertexSet> groups;
  for (Index v = 0; v < n; ++v) {
    if (!in_f[v] && touches[label[v]]) groups[label[v]].push_back(g.id(v));
  }
  std::vector<VertexSet> out;
  for (auto& [l, vs] : groups) out.push_back(std::move(vs));
  std::sort(out.begin(), out.end());
  return out;
}

bool brute_cycle_invariant(const Graph& g, const VertexSet& y) {
  auto in = [&](VertexId v) { return std::binary_search(y.begin(), y.end(), v); };
  for (const auto& c : brute_cycles(g)) {
    bool meets = false, inside = true;
    for (const auto& e : c) {
      meets = meets || (in(e.u) && in(e.v));
      inside = inside && in(e.u) && in(e.v);
    }
    if (meets && !inside) return false;
  }
  return true;
}

namespace {

using Adj = std::vector<std::uint32_t>;  // bitmask rows

std::uint64_t edge_code(const Adj& adj, const std::vector<int>& perm) {
  const int n = static_cast<int>(adj.size());
  std::uint64_t code = 0;
  int bit = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++bit) {
      if (adj[perm[i]] >> perm[j] & 1u) code |= std::uint64_t{1} << bit;
    }
  }
  return code;
}

// Least edge code over all vertex orders sorted by degree; permutations only
// shuffle vertices of equal degree.
std::uint64_t canonical_code(const Adj& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> deg(n);
  for (int i = 0; i < n; ++i) deg[i] = __builtin_popcount(adj[i]);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return deg[a] > deg[b]; });
  std::vector<std::pair<int, int>> classes;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && deg[order[j]] == deg[order[i]]) ++j;
    classes.push_back({i, j});
    i = j;
  }
  std::uint64_t best = ~std::uint64_t{0};
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == classes.size()) {
      best = std::min(best, edge_code(adj, order));
      return;
    }
    auto first = order.begin() + classes[c].first, last = order.begin() + classes[c].second;
    std::sort(first, last);
    do {
      rec(c + 1);
    } while (std::next_permutation(first, last));
  };
  rec(0);
  return best;
}

}  // namespace

std::vector<Graph> connected_graphs(int n) {
  // Every connected graph has a vertex whose removal leaves it connected,
  // so all of them arise by attaching a vertex to a smaller connected graph.
  std::vector<Adj> level = {Adj{0u}};
  for (int size = 2; size <= n; ++size) {
    std::map<std::uint64_t, Adj> next;
    for (const auto& adj : level) {
      for (std::uint32_t mask = 1; mask < (1u << (size - 1)); ++mask) {
        Adj grown = adj;
        grown.push_back(mask);
        for (int i = 0; i < size - 1; ++i) {
          if (mask >> i & 1u) grown[i] |= 1u << (size - 1);
        }
        next.emplace(canonical_code(grown), std::move(grown));
      }
    }
    level.clear();
    for (auto& [code, adj] : next) level.push_back(std::move(adj));
  }
  std::vector<Graph> out;
  for (const auto& adj : level) {
    std::vector<VertexId> ids(adj.size());
    std::iota(ids.begin(), ids.end(), VertexId{0});
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < adj.size(); ++i) {
      for (std::size_t j = i + 1; j < adj.size(); ++j) {
        if (adj[i] >> j & 1u) edges.push_back({i, j});
      }
    }
    out.push_back(Graph::build(std::move(ids), std::move(edges)));
  }
  return out;
}

Graph random_connected(std::mt19937_64& rng, int n, int extra_edges) {
  std::vector<VertexId> ids(n);
  std::iota(ids.begin(), ids.end(), VertexId{0});
  std::set<Edge> edges;
  for (int v = 1; v < n; ++v) {
    const VertexId parent = std::uniform_int_distribution<int>(0, v - 1)(rng);
    edges.insert(Edge::canonical(parent, v));
  }
  const std::size_t cap = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t target = std::min(cap, edges.size() + static_cast<std::size_t>(extra_edges));
  std::uniform_int_distribution<int> pick(0, n - 1);
  while (edges.size() < target) {
    const int a = pick(rng), b = pick(rng);
    if (a != b) edges.insert(Edge::canonical(a, b));
  }
  return Graph::build(std::move(ids), {edges.begin(), edges.end()});
}

Graph random_graph(std::mt19937_64& rng, int n, int m) {
  std::vector<VertexId> ids(n);
  std::iota(ids.begin(), ids.end(), VertexId{0});
  std::set<Edge> edges;
  const std::size_t target = std::min<std::size_t>(m, static_cast<std::size_t>(n) * (n - 1) / 2);
  std::uniform_int_distribution<int> pick(0, n - 1);
  while (edges.size() < target) {
    const int a = pick(rng), b = pick(rng);
    if (a != b) edges.insert(Edge::canonical(a, b));
  }
  return Graph::build(std::move(ids), {edges.begin(), edges.end()});
}

std::vector<Rational> random_values(std::mt19937_64& rng, const Graph& g, int spread) {
  std::uniform_int_distribution<int> num(1, spread), den(1, 3);
  std::vector<Rational> out;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) out.push_back(Rational(num(rng), den(rng)));
  return out;
}

std::vector<std::uint64_t> random_keys(std::mt19937_64& rng, const Graph& g) {
  std::vector<std::uint64_t> keys(g.num_edges());
  for (auto& k : keys) k = rng();
  return keys;
}

}  // namespace oracle
