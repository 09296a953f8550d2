#include "wmsf/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "wmsf/error.hpp"

namespace wmsf {

namespace {

void require_edges(const Graph& g, std::size_t n, const char* what) {
  if (n != g.num_edges()) {
    fail(ErrorCode::BadParams, std::string(what) + ": expected " + std::to_string(g.num_edges()) +
                                   " edge values, got " + std::to_string(n));
  }
}

// BFS forest: parent edge per vertex (unset for roots) plus visiting order.
struct BfsForest {
  std::vector<Index> parent_edge;
  std::vector<Index> order;
  std::vector<Index> depth;
};

constexpr Index kUnset = static_cast<Index>(-1);

BfsForest bfs_forest(const Graph& g, std::vector<Index> roots) {
  const Index n = static_cast<Index>(g.num_vertices());
  BfsForest f;
  f.parent_edge.assign(n, kUnset);
  f.depth.assign(n, 0);
  std::vector<char> seen(n, 0);
  for (Index s = 0; s < n; ++s) roots.push_back(s);
  for (Index r : roots) {
    if (seen[r]) continue;
    seen[r] = 1;
    std::size_t head = f.order.size();
    f.order.push_back(r);
    for (; head < f.order.size(); ++head) {
      const Index v = f.order[head];
      const auto nbrs = g.neighbors(v);
      const auto inc = g.incident_edges(v);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        if (seen[nbrs[i]]) continue;
        seen[nbrs[i]] = 1;
        f.parent_edge[nbrs[i]] = inc[i];
        f.depth[nbrs[i]] = f.depth[v] + 1;
        f.order.push_back(nbrs[i]);
      }
    }
  }
  return f;
}

Index tree_parent(const Graph& g, const BfsForest& f, Index v) {
  const Index e = f.parent_edge[v];
  return g.edge_source(e) == v ? g.edge_target(e) : g.edge_source(e);
}

// Vertex sequence of the fundamental cycle closed by non-tree edge e.
std::vector<Index> fundamental_cycle(const Graph& g, const BfsForest& f, Index e) {
  Index a = g.edge_source(e);
  Index b = g.edge_target(e);
  std::vector<Index> left{a}, right{b};
  while (a != b) {
    if (f.depth[a] >= f.depth[b]) {
      a = tree_parent(g, f, a);
      left.push_back(a);
    } else {
      b = tree_parent(g, f, b);
      right.push_back(b);
    }
  }
  right.pop_back();
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

}  // namespace

Cocycle Cocycle::exact(const Graph& g, std::vector<Rational> forward) {
  require_edges(g, forward.size(), "cocycle");
  for (std::size_t e = 0; e < forward.size(); ++e) {
    if (forward[e] <= 0) {
      const auto& edge = g.edge(static_cast<Index>(e));
      fail(ErrorCode::NonPositiveWeight, "non-positive ratio on edge (" + std::to_string(edge.u) +
                                             "," + std::to_string(edge.v) + ")");
    }
  }
  Cocycle c;
  c.mode_ = CocycleMode::ExactRational;
  c.size_ = forward.size();
  c.log_.reserve(forward.size());
  for (const auto& r : forward) c.log_.push_back(log_of(r));
  c.exact_ = std::move(forward);
  return c;
}

Cocycle Cocycle::log_float(const Graph& g, std::vector<double> forward_log) {
  require_edges(g, forward_log.size(), "cocycle");
  for (double x : forward_log) {
    if (!std::isfinite(x)) fail(ErrorCode::NonPositiveWeight, "non-finite log ratio");
  }
  Cocycle c;
  c.mode_ = CocycleMode::LogFloat;
  c.size_ = forward_log.size();
  c.log_ = std::move(forward_log);
  return c;
}

Rational Cocycle::ratio_along(const Graph& g, Index e, Index from) const {
  if (mode_ != CocycleMode::ExactRational) {
    fail(ErrorCode::BadParams, "exact ratio requested from a log-mode cocycle");
  }
  return g.edge_source(e) == from ? exact_[e] : Rational(1) / exact_[e];
}

double Cocycle::log_ratio_along(const Graph& g, Index e, Index from) const {
  return g.edge_source(e) == from ? log_[e] : -log_[e];
}

Rational Cocycle::ratio(const Graph& g, VertexId x, VertexId y) const {
  const Index e = g.edge_index(Edge::canonical(x, y));
  return ratio_along(g, e, g.index_of(x));
}

double Cocycle::log_ratio(const Graph& g, VertexId x, VertexId y) const {
  const Index e = g.edge_index(Edge::canonical(x, y));
  return log_ratio_along(g, e, g.index_of(x));
}

Potential Potential::from_values(const Graph& g, std::vector<Rational> values) {
  if (values.size() != g.num_vertices()) {
    fail(ErrorCode::MissingVertex, "potential must cover every vertex");
  }
  for (Index v = 0; v < values.size(); ++v) {
    if (values[v] <= 0) {
      fail(ErrorCode::NonPositiveWeight, "non-positive potential at vertex " + std::to_string(g.id(v)));
    }
  }
  const auto labels = component_labels(g);
  Potential p;
  p.component_ = labels.label;
  std::vector<Index> base(labels.count, kUnset);
  std::vector<Index> least(labels.count, kUnset);
  for (Index v = 0; v < values.size(); ++v) {
    const Index c = labels.label[v];
    if (least[c] == kUnset) least[c] = v;
    if (base[c] == kUnset && values[v] == 1) base[c] = v;
  }
  std::vector<Rational> scale(labels.count, Rational(1));
  for (Index c = 0; c < labels.count; ++c) {
    if (base[c] == kUnset) {
      base[c] = least[c];
      scale[c] = values[least[c]];
    }
    p.bases_.push_back(g.id(base[c]));
  }
  for (Index v = 0; v < values.size(); ++v) {
    if (scale[labels.label[v]] != 1) values[v] /= scale[labels.label[v]];
  }
  p.values_ = std::move(values);
  return p;
}

Potential Potential::from_map(const Graph& g, const std::map<VertexId, Rational>& values) {
  std::vector<Rational> v(g.num_vertices());
  for (Index i = 0; i < g.num_vertices(); ++i) {
    auto it = values.find(g.id(i));
    if (it == values.end()) {
      fail(ErrorCode::MissingVertex, "no potential for vertex " + std::to_string(g.id(i)));
    }
    v[i] = it->second;
  }
  for (const auto& [id, _] : values) {
    if (!g.contains(id)) fail(ErrorCode::UnknownId, "potential for unknown vertex " + std::to_string(id));
  }
  return from_values(g, std::move(v));
}

Potential Potential::constant(const Graph& g) {
  return from_values(g, std::vector<Rational>(g.num_vertices(), Rational(1)));
}

Potential Potential::from_levels(const Graph& g, const Rational& base_ratio) {
  if (base_ratio <= 0) fail(ErrorCode::NonPositiveWeight, "base ratio must be positive");
  std::vector<Rational> v(g.num_vertices());
  for (Index i = 0; i < g.num_vertices(); ++i) {
    const auto level = g.level(i);
    if (!level) fail(ErrorCode::MissingVertex, "vertex " + std::to_string(g.id(i)) + " has no level");
    v[i] = pow(base_ratio, *level);
  }
  return from_values(g, std::move(v));
}

Potential Potential::restricted(const Graph& host, const Graph& sub) const {
  std::vector<Rational> v(sub.num_vertices());
  for (Index i = 0; i < sub.num_vertices(); ++i) v[i] = values_[host.index_of(sub.id(i))];
  return from_values(sub, std::move(v));
}

Potential Potential::rescaled(Index component, const Rational& factor) const {
  if (factor <= 0) fail(ErrorCode::NonPositiveWeight, "rescale factor must be positive");
  Potential p = *this;
  for (Index v = 0; v < p.values_.size(); ++v) {
    if (p.component_[v] == component) p.values_[v] *= factor;
  }
  return p;
}

Cocycle cocycle_from_potential(const Graph& g, const Potential& p) {
  std::vector<Rational> forward(g.num_edges());
  for (Index e = 0; e < g.num_edges(); ++e) {
    forward[e] = p.value(g.edge_source(e)) / p.value(g.edge_target(e));
  }
  return Cocycle::exact(g, std::move(forward));
}

Cocycle cocycle_from_potential(const Graph& g, const std::map<VertexId, Rational>& potential) {
  return cocycle_from_potential(g, Potential::from_map(g, potential));
}

CocycleReport validate_cocycle(const Graph& g, const Cocycle& c, double log_tolerance) {
  require_edges(g, c.num_edges(), "validate_cocycle");
  const auto forest = bfs_forest(g, {});
  CocycleReport report;
  const bool exact = c.mode() == CocycleMode::ExactRational;
  for (Index e = 0; e < g.num_edges(); ++e) {
    const Index a = g.edge_source(e);
    const Index b = g.edge_target(e);
    if (forest.parent_edge[a] == e || forest.parent_edge[b] == e) continue;
    ++report.cycles_checked;
    const auto cycle = fundamental_cycle(g, forest, e);
    bool bad = false;
    double defect = 0.0;
    if (exact) {
      Rational product = 1;
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        const Index x = cycle[i];
        const Index y = cycle[(i + 1) % cycle.size()];
        product *= c.ratio_along(g, *g.find_edge(g.id(x), g.id(y)), x);
      }
      bad = product != 1;
      defect = std::abs(log_of(product));
      // An exact defect too small for a double still counts.
      if (bad && defect == 0.0) defect = std::numeric_limits<double>::min();
    } else {
      double sum = 0.0;
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        const Index x = cycle[i];
        const Index y = cycle[(i + 1) % cycle.size()];
        sum += c.log_ratio_along(g, *g.find_edge(g.id(x), g.id(y)), x);
      }
      defect = std::abs(sum);
      bad = defect > log_tolerance;
    }
    if (bad) report.valid = false;
    if (defect > report.worst_log_defect || (bad && !report.worst_edge)) {
      report.worst_log_defect = defect;
      report.worst_edge = g.edge(e);
      report.worst_cycle.clear();
      for (Index x : cycle) report.worst_cycle.push_back(g.id(x));
    }
  }
  return report;
}

namespace {

Potential potential_from_cocycle_impl(const Graph& g, const Cocycle& c,
                                      std::optional<Index> base, double tol) {
  require_edges(g, c.num_edges(), "potential_from_cocycle");
  const auto report = validate_cocycle(g, c, tol);
  if (!report.valid) {
    std::string msg = "cocycle identity fails around cycle through edge (" +
                      std::to_string(report.worst_edge->u) + "," +
                      std::to_string(report.worst_edge->v) + ")";
    fail(ErrorCode::InvalidCocycle, msg);
  }
  std::vector<Index> roots;
  if (base) roots.push_back(*base);
  const auto forest = bfs_forest(g, roots);
  const Index n = static_cast<Index>(g.num_vertices());

  if (c.mode() == CocycleMode::ExactRational) {
    std::vector<Rational> values(n, Rational(1));
    for (Index v : forest.order) {
      if (forest.parent_edge[v] == kUnset) continue;
      const Index u = tree_parent(g, forest, v);
      // w^b(v) = w^b(u) * w(v, u)
      values[v] = values[u] * c.ratio_along(g, forest.parent_edge[v], v);
    }
    auto p = Potential::from_values(g, std::move(values));
    return p;
  }

  std::vector<double> logs(n, 0.0);
  std::vector<char> is_root(n, 0);
  for (Index v : forest.order) {
    if (forest.parent_edge[v] == kUnset) {
      is_root[v] = 1;
      continue;
    }
    const Index u = tree_parent(g, forest, v);
    logs[v] = logs[u] + c.log_ratio_along(g, forest.parent_edge[v], v);
  }
  // Merge values that agree within tolerance so that float noise cannot
  // split a genuine tie; a group holding a root is pinned to exactly 1.
  const auto labels = component_labels(g);
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (labels.label[a] != labels.label[b]) return labels.label[a] < labels.label[b];
    return logs[a] < logs[b];
  });
  std::vector<Rational> values(n);
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && labels.label[order[j]] == labels.label[order[i]] &&
           logs[order[j]] - logs[order[j - 1]] <= tol) {
      ++j;
    }
    double rep = logs[order[i]];
    for (std::size_t k = i; k < j; ++k) {
      if (is_root[order[k]]) rep = 0.0;
    }
    if (std::abs(rep) > 700.0) fail(ErrorCode::BadParams, "log potential out of double range");
    const Rational value = rep == 0.0 ? Rational(1) : rational_from_double(std::exp(rep));
    for (std::size_t k = i; k < j; ++k) values[order[k]] = value;
    i = j;
  }
  return Potential::from_values(g, std::move(values));
}

}  // namespace

Potential potential_from_cocycle(const Graph& g, const Cocycle& c, VertexId base,
                                 double log_tolerance) {
  return potential_from_cocycle_impl(g, c, g.index_of(base), log_tolerance);
}

Potential potential_from_cocycle(const Graph& g, const Cocycle& c, double log_tolerance) {
  return potential_from_cocycle_impl(g, c, std::nullopt, log_tolerance);
}

Tiebreak Tiebreak::canonical(const Graph& g) {
  Tiebreak t;
  t.keys_.resize(g.num_edges());
  std::iota(t.keys_.begin(), t.keys_.end(), std::uint64_t{0});
  return t;
}

Tiebreak Tiebreak::from_keys(std::vector<std::uint64_t> keys) {
  Tiebreak t;
  t.keys_ = std::move(keys);
  return t;
}

Tiebreak Tiebreak::from_ranks(const Graph& g, const std::map<Edge, std::uint64_t>& ranks) {
  Tiebreak t;
  t.keys_.resize(g.num_edges());
  for (Index e = 0; e < g.num_edges(); ++e) {
    auto it = ranks.find(g.edge(e));
    if (it == ranks.end()) {
      fail(ErrorCode::BadParams, "order has no rank for edge (" + std::to_string(g.edge(e).u) +
                                     "," + std::to_string(g.edge(e).v) + ")");
    }
    t.keys_[e] = it->second;
  }
  for (const auto& [edge, _] : ranks) g.edge_index(edge);
  return t;
}

Tiebreak Tiebreak::from_labels(const std::vector<std::uint64_t>& labels) {
  Tiebreak t;
  t.keys_.reserve(labels.size());
  for (auto u : labels) t.keys_.push_back(~u);
  return t;
}

std::size_t Tiebreak::collisions() const {
  auto sorted = keys_;
  std::sort(sorted.begin(), sorted.end());
  std::size_t n = 0;
  for (std::size_t i = 1; i < sorted.size(); ++i) n += sorted[i] == sorted[i - 1];
  return n;
}

Tiebreak Tiebreak::restricted(const Graph& host, const Graph& sub) const {
  Tiebreak t;
  t.keys_.resize(sub.num_edges());
  for (Index e = 0; e < sub.num_edges(); ++e) t.keys_[e] = keys_[host.edge_index(sub.edge(e))];
  return t;
}

EdgeOrder::EdgeOrder(const Graph& g, const Potential& p, Tiebreak tiebreak)
    : tiebreak_(std::move(tiebreak)) {
  if (p.size() != g.num_vertices()) fail(ErrorCode::BadParams, "potential does not match graph");
  require_edges(g, tiebreak_.size(), "tiebreak");
  // Dense ranks of the vertex values; only their order matters.
  const Index n = static_cast<Index>(g.num_vertices());
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return p.value(a) < p.value(b); });
  std::vector<std::uint32_t> vrank(n, 0);
  for (Index i = 1; i < n; ++i) {
    vrank[order[i]] = vrank[order[i - 1]] + (p.value(order[i - 1]) < p.value(order[i]) ? 1 : 0);
  }
  const std::size_t m = g.num_edges();
  weight_.resize(m);
  rank_.resize(m);
  component_.resize(m);
  for (Index e = 0; e < m; ++e) {
    const Index a = g.edge_source(e);
    const Index b = g.edge_target(e);
    const Index lo = vrank[a] <= vrank[b] ? a : b;
    weight_[e] = p.value(lo);
    rank_[e] = vrank[lo];
    component_[e] = p.component(a);
  }
}

std::vector<Index> EdgeOrder::ascending() const {
  std::vector<Index> out(weight_.size());
  std::iota(out.begin(), out.end(), 0);
  std::sort(out.begin(), out.end(), [this](Index a, Index b) { return less(a, b); });
  return out;
}

EdgeCmp EdgeOrder::compare(Index a, Index b) const {
  if (component_[a] != component_[b]) {
    fail(ErrorCode::CrossComponent, "edges lie in different components");
  }
  return less(a, b) ? EdgeCmp::Less : EdgeCmp::Greater;
}

EdgeOrder EdgeOrder::restricted(const Graph& host, const Graph& sub) const {
  EdgeOrder o;
  o.tiebreak_ = tiebreak_.restricted(host, sub);
  const auto labels = component_labels(sub);
  const std::size_t m = sub.num_edges();
  o.weight_.resize(m);
  o.rank_.resize(m);
  o.component_.resize(m);
  for (Index e = 0; e < m; ++e) {
    const Index h = host.edge_index(sub.edge(e));
    o.weight_[e] = weight_[h];
    o.rank_[e] = rank_[h];
    o.component_[e] = labels.label[sub.edge_source(e)];
  }
  return o;
}

EdgeCmp compare_edges(const Graph& g, const EdgeOrder& o, const Edge& e1, const Edge& e2) {
  const Index a = g.edge_index(e1);
  const Index b = g.edge_index(e2);
  if (a == b) fail(ErrorCode::BadParams, "compare_edges needs two distinct edges");
  return o.compare(a, b);
}

}  // namespace wmsf
