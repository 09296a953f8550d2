// Side classification, furcations and visibility.

#include <algorithm>
#include <bit>
#include <set>
#include <string>

#include "wmsf/ends.hpp"
#include "wmsf/error.hpp"

namespace wmsf {

void ProxyParams::validate() const {
  if (nonvanish_delta <= 0) fail(ErrorCode::BadParams, "nonvanish_delta must be positive");
  if (heavy_tau <= 0) fail(ErrorCode::BadParams, "heavy_tau must be positive");
  if (s_max < 1) fail(ErrorCode::BadParams, "s_max must be at least 1");
}

const char* to_string(SideClass c) {
  switch (c) {
    case SideClass::Finite: return "finite";
    case SideClass::InfiniteProxy: return "infinite-proxy";
    case SideClass::NonvanishingProxy: return "nonvanishing-proxy";
  }
  return "?";
}

SideClass classify_side(const Graph& g, const Potential& p, const Side& side,
                        const ProxyParams& params, const Rational& anchor) {
  const Rational threshold = params.nonvanish_delta * anchor;
  bool touches = false;
  for (VertexId id : side.vertices) {
    const Index v = g.index_of(id);
    if (!g.is_boundary(v)) continue;
    if (p.value(v) >= threshold) return SideClass::NonvanishingProxy;
    touches = true;
  }
  return touches && params.infinite_proxy ? SideClass::InfiniteProxy : SideClass::Finite;
}

Furcation analyze_furcation(const Graph& g, const Potential& p, const VertexSet& f,
                            const ProxyParams& params) {
  Furcation out;
  out.f = f;
  Rational anchor = 0;
  for (VertexId id : f) anchor = std::max(anchor, p.value(g.index_of(id)));
  for (auto& side : sides(g, f)) {
    const SideClass cls = classify_side(g, p, side, params, anchor);
    out.infinite += cls != SideClass::Finite;
    out.nonvanishing += cls == SideClass::NonvanishingProxy;
    out.sides.push_back({std::move(side), cls});
  }
  return out;
}

namespace {

constexpr Index kUnset = static_cast<Index>(-1);

class RangeMax {
 public:
  explicit RangeMax(std::vector<int> values) {
    const std::size_t n = values.size();
    table_.push_back(std::move(values));
    for (std::size_t w = 1; 2 * w <= n; w *= 2) {
      const auto& prev = table_.back();
      std::vector<int> next(n - 2 * w + 1);
      for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::max(prev[i], prev[i + w]);
      table_.push_back(std::move(next));
    }
  }

  // Max over [lo, hi); -1 when empty.
  int query(std::size_t lo, std::size_t hi) const {
    if (lo >= hi) return -1;
    const std::size_t k = std::bit_width(hi - lo) - 1;
    return std::max(table_[k][lo], table_[k][hi - (std::size_t{1} << k)]);
  }

 private:
  std::vector<std::vector<int>> table_;
};

}  // namespace

std::vector<SideProfile> vertex_side_profiles(const Graph& g, const Potential& p,
                                              const ProxyParams& params) {
  const Index n = static_cast<Index>(g.num_vertices());
  // Ranks of boundary weights.
  std::vector<Rational> levels;
  for (Index v = 0; v < n; ++v) {
    if (g.is_boundary(v)) levels.push_back(p.value(v));
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<Index> pre(n, kUnset), size(n, 1), low(n, 0), parent(n, kUnset), comp_lo(n, 0);
  std::vector<Index> by_pre;
  by_pre.reserve(n);
  std::vector<std::pair<Index, std::size_t>> frames;
  std::vector<std::size_t> comp_start;
  for (Index root = 0; root < n; ++root) {
    if (pre[root] != kUnset) continue;
    const Index start = static_cast<Index>(by_pre.size());
    pre[root] = low[root] = start;
    by_pre.push_back(root);
    frames.assign(1, {root, 0});
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto nbrs = g.neighbors(v);
      if (pos < nbrs.size()) {
        const Index w = nbrs[pos++];
        if (pre[w] == kUnset) {
          parent[w] = v;
          pre[w] = low[w] = static_cast<Index>(by_pre.size());
          by_pre.push_back(w);
          frames.emplace_back(w, 0);
        } else if (w != parent[v]) {
          low[v] = std::min(low[v], pre[w]);
        }
        continue;
      }
      const Index child = v;
      frames.pop_back();
      if (!frames.empty()) {
        const Index u = frames.back().first;
        low[u] = std::min(low[u], low[child]);
        size[u] += size[child];
      }
    }
    for (Index i = start; i < by_pre.size(); ++i) comp_lo[by_pre[i]] = start;
  }

  std::vector<int> rank_at(n, -1);
  for (Index i = 0; i < n; ++i) {
    const Index v = by_pre[i];
    if (g.is_boundary(v)) {
      rank_at[i] = static_cast<int>(
          std::lower_bound(levels.begin(), levels.end(), p.value(v)) - levels.begin());
    }
  }
  const RangeMax rmq(std::move(rank_at));

  std::vector<SideProfile> out(n);
  std::vector<Index> separated;
  for (Index x = 0; x < n; ++x) {
    const Rational threshold = params.nonvanish_delta * p.value(x);
    const int need = static_cast<int>(
        std::lower_bound(levels.begin(), levels.end(), threshold) - levels.begin());
    auto& prof = out[x];
    auto tally = [&](int best) {
      ++prof.sides;
      const bool nonvanishing = best >= need;
      prof.nonvanishing += nonvanishing;
      prof.infinite += nonvanishing || (best >= 0 && params.infinite_proxy);
    };
    separated.clear();
    for (Index c : g.neighbors(x)) {
      if (parent[c] == x && low[c] >= pre[x]) separated.push_back(c);
    }
    std::sort(separated.begin(), separated.end(),
              [&](Index a, Index b) { return pre[a] < pre[b]; });
    for (Index c : separated) tally(rmq.query(pre[c], pre[c] + size[c]));
    if (parent[x] == kUnset) continue;  // a DFS root has no further side
    const Index lo = comp_lo[x];
    const Index hi = lo + size[by_pre[lo]];
    int best = std::max(rmq.query(lo, pre[x]), rmq.query(pre[x] + size[x], hi));
    Index cursor = pre[x] + 1;
    for (Index c : separated) {
      best = std::max(best, rmq.query(cursor, pre[c]));
      cursor = pre[c] + size[c];
    }
    best = std::max(best, rmq.query(cursor, pre[x] + size[x]));
    tally(best);
  }
  return out;
}

VertexSet find_furcation_vertices(const Graph& g, const Potential& p, std::size_t n,
                                  const ProxyParams& params, bool weighted) {
  params.validate();
  const auto profiles = vertex_side_profiles(g, p, params);
  VertexSet out;
  for (Index v = 0; v < g.num_vertices(); ++v) {
    const auto count = weighted ? profiles[v].nonvanishing : profiles[v].infinite;
    if (count >= n) out.push_back(g.id(v));
  }
  return out;
}

std::vector<VertexSet> FurcationFamily::sets() const {
  std::vector<VertexSet> out;
  for (const auto& b : blocks) out.push_back(b.f);
  return out;
}

namespace {

// Connected vertex sets of each size 1..s_max, each level in lexicographic
// index order (which is id order).
std::vector<std::vector<std::vector<Index>>> connected_candidates(const Graph& g, std::size_t s_max) {
  std::vector<std::vector<std::vector<Index>>> levels;
  std::vector<std::vector<Index>> current;
  for (Index v = 0; v < g.num_vertices(); ++v) current.push_back({v});
  levels.push_back(current);
  for (std::size_t k = 2; k <= s_max; ++k) {
    std::set<std::vector<Index>> next;
    for (const auto& s : levels.back()) {
      for (Index v : s) {
        for (Index w : g.neighbors(v)) {
          if (std::binary_search(s.begin(), s.end(), w)) continue;
          auto t = s;
          t.insert(std::upper_bound(t.begin(), t.end(), w), w);
          next.insert(std::move(t));
        }
      }
    }
    if (next.empty()) break;
    levels.emplace_back(next.begin(), next.end());
  }
  return levels;
}

}  // namespace

FurcationFamily maximal_disjoint_furcations(const Graph& g, const Potential& p,
                                            const ProxyParams& params) {
  params.validate();
  FurcationFamily family;
  const auto profiles = vertex_side_profiles(g, p, params);
  const auto levels = connected_candidates(g, params.s_max);

  struct Counts {
    std::size_t infinite = 0;
    std::size_t nonvanishing = 0;
  };
  std::vector<std::vector<std::optional<Counts>>> cache(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) cache[k].resize(levels[k].size());

  std::vector<char> used(g.num_vertices(), 0);
  for (int phase = 1; phase <= 3; ++phase) {
    for (std::size_t k = 0; k < levels.size(); ++k) {
      for (std::size_t i = 0; i < levels[k].size(); ++i) {
        const auto& cand = levels[k][i];
        if (std::any_of(cand.begin(), cand.end(), [&](Index v) { return used[v] != 0; })) continue;
        auto& counts = cache[k][i];
        if (!counts) {
          ++family.candidates_scanned;
          if (k == 0) {
            counts = Counts{profiles[cand[0]].infinite, profiles[cand[0]].nonvanishing};
          } else {
            const auto f = analyze_furcation(g, p, to_vertex_set(g, cand), params);
            counts = Counts{f.infinite, f.nonvanishing};
          }
        }
        const bool take = phase == 1   ? counts->nonvanishing >= 3
                          : phase == 2 ? counts->nonvanishing >= 2
                                       : counts->infinite >= 2;
        if (!take) continue;
        for (Index v : cand) used[v] = 1;
        auto block = analyze_furcation(g, p, to_vertex_set(g, cand), params);
        block.phase = phase;
        family.blocks.push_back(std::move(block));
      }
    }
  }
  return family;
}

VertexSet visibility_set(const Graph& g, const Potential& p, VertexId x) {
  const Index s = g.index_of(x);
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<Index> queue{s};
  seen[s] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Index w : g.neighbors(queue[i])) {
      if (!seen[w] && p.value(w) <= p.value(s)) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return to_vertex_set(g, queue);
}

VertexSet visibility_set(const Graph& g, const Cocycle& c, VertexId x) {
  return visibility_set(g, potential_from_cocycle(g, c, x), x);
}

Visibility visibility_mass(const Graph& g, const Potential& p, VertexId x,
                           const ProxyParams& params) {
  Visibility out;
  out.set = visibility_set(g, p, x);
  const Rational& wx = p.value(g.index_of(x));
  bool heavy_boundary = false;
  for (VertexId id : out.set) {
    const Index v = g.index_of(id);
    const Rational rel = p.value(v) / wx;
    out.mass += rel;
    if (g.is_boundary(v)) {
      out.touches_boundary = true;
      heavy_boundary = heavy_boundary || rel >= params.nonvanish_delta;
    }
  }
  out.heavy = out.mass >= params.heavy_tau || heavy_boundary;
  return out;
}

}  // namespace wmsf
