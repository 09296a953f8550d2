#ifndef WMSF_WEIGHTS_HPP
#define WMSF_WEIGHTS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "wmsf/graph.hpp"
#include "wmsf/rational.hpp"

namespace wmsf {

enum class CocycleMode { ExactRational, LogFloat };

/// Relative weight function on the edges of a graph. For the canonical edge
/// e = (u, v) the stored forward ratio is w(u, v) = w^v(u); the reverse
/// direction is its reciprocal, so w(x, y) w(y, x) = 1 holds by construction.
class Cocycle {
 public:
  Cocycle() = default;

  /// forward[e] = w(u, v) for edge index e. Throws NonPositiveWeight.
  static Cocycle exact(const Graph& g, std::vector<Rational> forward);
  /// forward_log[e] = log w(u, v).
  static Cocycle log_float(const Graph& g, std::vector<double> forward_log);

  CocycleMode mode() const noexcept { return mode_; }
  std::size_t num_edges() const noexcept { return size_; }

  /// w(x, y) for an edge {x, y}; exact mode only. Throws UnknownEdge.
  Rational ratio(const Graph& g, VertexId x, VertexId y) const;
  double log_ratio(const Graph& g, VertexId x, VertexId y) const;

  /// w(from, to) along edge index e, where `from` is an endpoint index.
  Rational ratio_along(const Graph& g, Index e, Index from) const;
  double log_ratio_along(const Graph& g, Index e, Index from) const;

 private:
  CocycleMode mode_ = CocycleMode::ExactRational;
  std::size_t size_ = 0;
  std::vector<Rational> exact_;
  std::vector<double> log_;
};

/// Positive vertex weights with one base per component at which the value
/// is 1. Values are only meaningful up to a per-component constant.
class Potential {
 public:
  Potential() = default;

  /// Values by vertex index. A component that already contains a vertex of
  /// value 1 keeps its values (base = least such id); otherwise the
  /// component is rescaled so that its least-id vertex becomes the base.
  /// Throws NonPositiveWeight, MissingVertex (size mismatch).
  static Potential from_values(const Graph& g, std::vector<Rational> values);
  static Potential from_map(const Graph& g, const std::map<VertexId, Rational>& values);
  static Potential constant(const Graph& g);
  /// value(x) = base_ratio^level(x). Throws MissingVertex if a vertex has no
  /// level annotation.
  static Potential from_levels(const Graph& g, const Rational& base_ratio);

  const Rational& value(Index v) const { return values_[v]; }
  const std::vector<Rational>& values() const noexcept { return values_; }
  const std::vector<VertexId>& bases() const noexcept { return bases_; }
  Index component(Index v) const { return component_[v]; }
  std::size_t size() const noexcept { return values_.size(); }

  /// w^y(x) = value(x) / value(y).
  Rational relative(Index x, Index y) const { return values_[x] / values_[y]; }

  /// Same vertex weights viewed on a graph whose vertex ids are a subset.
  Potential restricted(const Graph& host, const Graph& sub) const;
  /// Multiplies one component by a positive constant (base is kept).
  Potential rescaled(Index component, const Rational& factor) const;

 private:
  std::vector<Rational> values_;
  std::vector<VertexId> bases_;
  std::vector<Index> component_;
};

/// ratio(x, y) := potential(x) / potential(y) on every edge.
Cocycle cocycle_from_potential(const Graph& g, const Potential& p);
/// Throws NonPositiveWeight, MissingVertex.
Cocycle cocycle_from_potential(const Graph& g, const std::map<VertexId, Rational>& potential);

struct CocycleReport {
  bool valid = true;
  std::size_t cycles_checked = 0;
  // |log(product)| of the worst fundamental cycle; 0 when exact and valid.
  double worst_log_defect = 0.0;
  std::optional<Edge> worst_edge;       // non-tree edge closing the worst cycle
  std::vector<VertexId> worst_cycle;    // its vertex sequence
};

/// Checks the product around every fundamental cycle of a BFS forest;
/// every cycle is a symmetric difference of those. Exact mode demands a
/// product of exactly 1, log mode |log product| <= log_tolerance.
CocycleReport validate_cocycle(const Graph& g, const Cocycle& c, double log_tolerance = 1e-9);

/// value(x) = product of ratios along any path from `base` to x, so
/// value(base) = 1. Other components use their least id as base. In log
/// mode, values within log_tolerance of each other are merged before being
/// converted to exact rationals. Throws InvalidCocycle, UnknownId.
Potential potential_from_cocycle(const Graph& g, const Cocycle& c, VertexId base,
                                 double log_tolerance = 1e-9);
Potential potential_from_cocycle(const Graph& g, const Cocycle& c, double log_tolerance = 1e-9);

/// Arbitrary linear order on undirected edges: a smaller key is smaller;
/// equal keys fall back to canonical edge order and count as collisions.
class Tiebreak {
 public:
  Tiebreak() = default;

  static Tiebreak canonical(const Graph& g);
  static Tiebreak from_keys(std::vector<std::uint64_t> keys);
  /// Throws BadParams if an edge is missing from `ranks`.
  static Tiebreak from_ranks(const Graph& g, const std::map<Edge, std::uint64_t>& ranks);
  /// e < e' iff label(e) > label(e').
  static Tiebreak from_labels(const std::vector<std::uint64_t>& labels);

  std::uint64_t key(Index e) const { return keys_[e]; }
  const std::vector<std::uint64_t>& keys() const noexcept { return keys_; }
  std::size_t size() const noexcept { return keys_.size(); }
  std::size_t collisions() const;

  /// Keys carried over to a subgraph by edge identity.
  Tiebreak restricted(const Graph& host, const Graph& sub) const;

 private:
  std::vector<std::uint64_t> keys_;
};

enum class EdgeCmp { Less, Greater };

/// The strict total order: first by edge weight min{w(x), w(y)}, then by
/// the tiebreak. Comparisons only use the order of vertex weights, so they
/// do not depend on the choice of base.
class EdgeOrder {
 public:
  EdgeOrder() = default;
  /// Throws BadParams when sizes do not match the graph.
  EdgeOrder(const Graph& g, const Potential& p, Tiebreak tiebreak);

  const Rational& weight(Index e) const { return weight_[e]; }
  Index component(Index e) const { return component_[e]; }
  const Tiebreak& tiebreak() const noexcept { return tiebreak_; }
  std::size_t size() const noexcept { return weight_.size(); }

  /// Strict order on distinct edge indices; never compares components.
  bool less(Index a, Index b) const {
    if (rank_[a] != rank_[b]) return rank_[a] < rank_[b];
    if (tiebreak_.key(a) != tiebreak_.key(b)) return tiebreak_.key(a) < tiebreak_.key(b);
    return a < b;
  }

  /// All edges, least first.
  std::vector<Index> ascending() const;

  /// Throws CrossComponent when the edges lie in different components.
  EdgeCmp compare(Index a, Index b) const;

  /// The same order on the edges of a subgraph (edge ids must be host edges).
  EdgeOrder restricted(const Graph& host, const Graph& sub) const;

 private:
  std::vector<Rational> weight_;
  std::vector<std::uint32_t> rank_;
  std::vector<Index> component_;
  Tiebreak tiebreak_;
};

/// Throws CrossComponent, UnknownEdge, BadParams (e1 == e2).
EdgeCmp compare_edges(const Graph& g, const EdgeOrder& o, const Edge& e1, const Edge& e2);

}  // namespace wmsf

#endif
