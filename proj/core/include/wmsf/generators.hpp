#ifndef WMSF_GENERATORS_HPP
#define WMSF_GENERATORS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wmsf/graph.hpp"

namespace wmsf {

/// Truncated grandparent graph GP(k). Vertex levels grow away from the
/// distinguished end; the root sits at level 0 with `up` ancestors above it
/// and descendants down to level `down`. Side branches of the ancestors stop
/// at level 0. Vertices missing any of their k + 1 + k^2 + 1 neighbours are
/// flagged boundary. Annotation "root" holds the root id. Throws BadParams.
Graph gp_graph(int k, int up, int down);

/// w x h grid, id = y * w + x, perimeter flagged.
Graph lattice_box(int w, int h);
/// Ball of the given radius in the d-regular tree, root id 0, leaves
/// flagged.
Graph regular_tree(int d, int radius);
/// Cycle on ids 0..n-1; n >= 3.
Graph cycle_graph(int n);
/// Uniform simple graph with n vertices and m edges.
Graph random_gnm(int n, int m, std::uint64_t seed);

struct FamilySpec {
  std::string family;
  std::map<std::string, std::int64_t> params;
  std::vector<FamilySpec> factors;  // free_product only
};

struct ProductCopy {
  std::size_t factor = 0;
  int depth = 0;
  VertexId root = 0;       // host vertex the copy is glued at
  VertexSet vertices;      // including root
};

struct FreeProduct {
  Graph graph;
  std::vector<ProductCopy> copies;  // copies[0] is the base copy
};

/// Tree of copies: factor 0 at the root, then at every vertex of a copy of
/// factor i a copy of each factor j != i glued at its root, up to
/// `max_word` nested attachments. Each factor is rooted at its "root"
/// annotation, else at its central vertex. Levels add up along
/// attachments; factor-boundary vertices and the non-root vertices of the
/// last generation are flagged. Throws BadParams.
FreeProduct free_product_detailed(const std::vector<FamilySpec>& factors, int max_word);
Graph free_product(const std::vector<FamilySpec>& factors, int max_word);

struct Windmill {
  Graph graph;
  // Tiebreak ranks: the hub cycle, then the dotted rows in increasing
  // order, then every solid edge.
  std::map<Edge, std::uint64_t> ranks;
};

/// `blades` hubs on a cycle; each hub is the shared corner of two
/// quadrant wings {0..radius}^2 whose far rows and columns are flagged.
/// Throws BadParams.
Windmill windmill(int blades, int radius);
/// The automorphism moving every hub (and its wings) one step along the
/// hub cycle.
std::map<VertexId, VertexId> windmill_rotation(int blades, int radius);

/// Dispatch on spec.family: gp, lattice_box, regular_tree, cycle,
/// random_gnm, free_product, windmill. Throws BadParams.
Graph generate(const FamilySpec& spec);

}  // namespace wmsf

#endif
