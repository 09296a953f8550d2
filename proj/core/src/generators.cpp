#include "wmsf/generators.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>
#include <unordered_map>

#include "wmsf/error.hpp"
#include "wmsf/rng.hpp"

namespace wmsf {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) fail(ErrorCode::BadParams, msg);
}

std::vector<VertexId> iota_ids(std::size_t n) {
  std::vector<VertexId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  return ids;
}

}  // namespace

Graph gp_graph(int k, int up, int down) {
  require(k >= 2, "gp: k must be at least 2");
  require(up >= 1 && down >= 1, "gp: up and down must be at least 1");
  require(k <= 16 && up + down <= 40, "gp: truncation too large");

  struct Node {
    std::int64_t level;
    VertexId parent;
    bool chain;      // on the ancestor chain above the root (root excluded)
    bool under_root; // root or one of its descendants
  };
  const VertexId none = ~VertexId{0};
  std::vector<Node> nodes;
  nodes.push_back({-up, none, up > 0, false});
  std::vector<Edge> edges;
  VertexId root = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node cur = nodes[i];
    const bool is_root = cur.chain && cur.level == 0;
    if (is_root) root = i;
    const bool below = cur.under_root || is_root;
    const std::int64_t limit = below ? down : 0;
    if (cur.level + 1 > limit) continue;
    for (int c = 0; c < k; ++c) {
      Node child{cur.level + 1, i, false, below};
      // The first child of a chain vertex continues the chain.
      if (cur.chain && !is_root && c == 0) child.chain = true;
      const VertexId id = nodes.size();
      nodes.push_back(child);
      edges.push_back(Edge::canonical(i, id));
      if (cur.parent != none) edges.push_back(Edge::canonical(cur.parent, id));
    }
  }

  GraphMeta meta;
  meta.annotations = {{"generator", "gp"},
                      {"k", std::to_string(k)},
                      {"up", std::to_string(up)},
                      {"down", std::to_string(down)},
                      {"root", std::to_string(root)}};
  for (std::size_t i = 0; i < nodes.size(); ++i) meta.levels[i] = nodes[i].level;
  Graph g = Graph::build(iota_ids(nodes.size()), std::move(edges), meta);
  const std::size_t full = static_cast<std::size_t>(k + 1 + k * k + 1);
  for (Index v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) < full) meta.boundary.insert(g.id(v));
  }
  return Graph::build(g.vertices(), g.edges(), std::move(meta));
}

Graph lattice_box(int w, int h) {
  require(w >= 1 && h >= 1, "lattice_box: sides must be at least 1");
  std::vector<Edge> edges;
  GraphMeta meta;
  auto id = [w](int x, int y) { return static_cast<VertexId>(y) * w + x; };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w) edges.push_back({id(x, y), id(x + 1, y)});
      if (y + 1 < h) edges.push_back({id(x, y), id(x, y + 1)});
      if (x == 0 || y == 0 || x == w - 1 || y == h - 1) meta.boundary.insert(id(x, y));
    }
  }
  meta.annotations = {{"generator", "lattice_box"},
                      {"w", std::to_string(w)},
                      {"h", std::to_string(h)},
                      {"root", std::to_string(id(w / 2, h / 2))}};
  return Graph::build(iota_ids(static_cast<std::size_t>(w) * h), std::move(edges), std::move(meta));
}

Graph regular_tree(int d, int radius) {
  require(d >= 1 && radius >= 1, "regular_tree: degree and radius must be at least 1");
  std::vector<Edge> edges;
  GraphMeta meta;
  std::vector<int> depth{0};
  for (std::size_t i = 0; i < depth.size(); ++i) {
    if (depth[i] == radius) {
      meta.boundary.insert(i);
      continue;
    }
    const int children = i == 0 ? d : d - 1;
    for (int c = 0; c < children; ++c) {
      edges.push_back({i, depth.size()});
      depth.push_back(depth[i] + 1);
    }
    require(depth.size() <= 5'000'000, "regular_tree: too large");
  }
  meta.annotations = {{"generator", "regular_tree"},
                      {"d", std::to_string(d)},
                      {"radius", std::to_string(radius)},
                      {"root", "0"}};
  return Graph::build(iota_ids(depth.size()), std::move(edges), std::move(meta));
}

Graph cycle_graph(int n) {
  require(n >= 3, "cycle: n must be at least 3");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back(Edge::canonical(i, (i + 1) % n));
  GraphMeta meta;
  meta.annotations = {{"generator", "cycle"}, {"n", std::to_string(n)}, {"root", "0"}};
  return Graph::build(iota_ids(n), std::move(edges), std::move(meta));
}

Graph random_gnm(int n, int m, std::uint64_t seed) {
  require(n >= 1, "random_gnm: n must be at least 1");
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  require(m >= 0 && static_cast<std::uint64_t>(m) <= pairs, "random_gnm: too many edges");
  // Floyd's sampling of m distinct pair indices.
  rng::Stream stream(seed, rng::kGnm);
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = pairs - m; j < pairs; ++j) {
    const std::uint64_t t = stream.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<Edge> edges;
  // Pair index t enumerates (u, v), u < v, row by row.
  std::uint64_t row_start = 0;
  VertexId u = 0;
  for (std::uint64_t t : chosen) {
    while (t >= row_start + (n - 1 - u)) {
      row_start += n - 1 - u;
      ++u;
    }
    edges.push_back({u, u + 1 + (t - row_start)});
  }
  GraphMeta meta;
  meta.annotations = {{"generator", "random_gnm"},
                      {"n", std::to_string(n)},
                      {"m", std::to_string(m)},
                      {"seed", std::to_string(seed)}};
  return Graph::build(iota_ids(n), std::move(edges), std::move(meta));
}

namespace {

VertexId factor_root(const Graph& g) {
  if (auto it = g.meta().annotations.find("root"); it != g.meta().annotations.end()) {
    return std::stoull(it->second);
  }
  return g.vertices().front();
}

}  // namespace

FreeProduct free_product_detailed(const std::vector<FamilySpec>& factors, int max_word) {
  require(factors.size() >= 2, "free_product: needs at least two factors");
  require(max_word >= 1, "free_product: max_word must be at least 1");
  std::vector<Graph> parts;
  for (const auto& f : factors) {
    require(f.family != "free_product", "free_product: factors must be plain families");
    parts.push_back(generate(f));
    require(parts.back().num_vertices() >= 1, "free_product: empty factor");
  }

  FreeProduct out;
  std::vector<Edge> edges;
  GraphMeta meta;
  VertexId next_id = 0;
  std::vector<std::int64_t> level;  // by host id

  struct Pending {
    std::size_t factor;
    int depth;
    std::optional<VertexId> glue;  // host vertex identified with the factor root
  };
  std::deque<Pending> queue{{0, 0, std::nullopt}};
  std::size_t budget = 2'000'000;
  while (!queue.empty()) {
    const Pending job = queue.front();
    queue.pop_front();
    const Graph& part = parts[job.factor];
    const VertexId froot = factor_root(part);
    const Index froot_index = part.index_of(froot);
    const std::int64_t root_level = part.level(froot_index).value_or(0);
    const std::int64_t offset = job.glue ? level[*job.glue] : 0;

    std::vector<VertexId> host(part.num_vertices());
    ProductCopy copy{job.factor, job.depth, 0, {}};
    for (Index v = 0; v < part.num_vertices(); ++v) {
      if (job.glue && v == froot_index) {
        host[v] = *job.glue;
      } else {
        require(next_id < budget, "free_product: truncation too large");
        host[v] = next_id++;
        level.push_back(offset + part.level(v).value_or(0) - root_level);
        const bool frontier = job.depth == max_word;
        if (part.is_boundary(v) || frontier) meta.boundary.insert(host[v]);
      }
      copy.vertices.push_back(host[v]);
    }
    copy.root = host[froot_index];
    std::sort(copy.vertices.begin(), copy.vertices.end());
    for (const auto& e : part.edges()) {
      edges.push_back(Edge::canonical(host[part.index_of(e.u)], host[part.index_of(e.v)]));
    }
    if (job.depth < max_word) {
      for (Index v = 0; v < part.num_vertices(); ++v) {
        if (job.glue && v == froot_index) continue;
        for (std::size_t j = 0; j < parts.size(); ++j) {
          if (j != job.factor) queue.push_back({j, job.depth + 1, host[v]});
        }
      }
    }
    out.copies.push_back(std::move(copy));
  }
  for (VertexId id = 0; id < next_id; ++id) meta.levels[id] = level[id];
  meta.annotations = {{"generator", "free_product"},
                      {"max_word", std::to_string(max_word)},
                      {"factors", std::to_string(factors.size())},
                      {"root", std::to_string(out.copies.front().root)}};
  out.graph = Graph::build(iota_ids(next_id), std::move(edges), std::move(meta));
  return out;
}

Graph free_product(const std::vector<FamilySpec>& factors, int max_word) {
  return free_product_detailed(factors, max_word).graph;
}

namespace {

struct WindmillIds {
  int blades;
  int radius;
  VertexId hub(int i) const { return static_cast<VertexId>(i); }
  // Wing s of hub i, coordinates (x, y) != (0, 0).
  VertexId at(int i, int s, int x, int y) const {
    if (x == 0 && y == 0) return hub(i);
    const VertexId per = static_cast<VertexId>((radius + 1) * (radius + 1) - 1);
    return blades + (2 * i + s) * per + (y * (radius + 1) + x - 1);
  }
};

}  // namespace

Windmill windmill(int blades, int radius) {
  require(blades >= 3, "windmill: at least 3 blades");
  require(radius >= 2 && radius <= 200, "windmill: radius must be in 2..200");
  const WindmillIds ids{blades, radius};
  Windmill out;
  std::vector<Edge> edges;
  GraphMeta meta;
  std::uint64_t rank = 0;
  auto add = [&](VertexId a, VertexId b) {
    const Edge e = Edge::canonical(a, b);
    edges.push_back(e);
    out.ranks[e] = rank++;
  };
  for (int i = 0; i < blades; ++i) add(ids.hub(i), ids.hub((i + 1) % blades));
  // Dotted: rows y >= 1, increasing away from the hub axis.
  for (int i = 0; i < blades; ++i) {
    for (int s = 0; s < 2; ++s) {
      for (int y = 1; y <= radius; ++y) {
        for (int x = 0; x < radius; ++x) add(ids.at(i, s, x, y), ids.at(i, s, x + 1, y));
      }
    }
  }
  // Solid: the bottom row and every column.
  for (int i = 0; i < blades; ++i) {
    for (int s = 0; s < 2; ++s) {
      for (int x = 0; x < radius; ++x) add(ids.at(i, s, x, 0), ids.at(i, s, x + 1, 0));
      for (int x = 0; x <= radius; ++x) {
        for (int y = 0; y < radius; ++y) add(ids.at(i, s, x, y), ids.at(i, s, x, y + 1));
      }
      for (int x = 0; x <= radius; ++x) {
        for (int y = 0; y <= radius; ++y) {
          if (x == radius || y == radius) meta.boundary.insert(ids.at(i, s, x, y));
        }
      }
    }
  }
  const std::size_t n = blades + static_cast<std::size_t>(2 * blades) * ((radius + 1) * (radius + 1) - 1);
  meta.annotations = {{"generator", "windmill"},
                      {"blades", std::to_string(blades)},
                      {"radius", std::to_string(radius)}};
  out.graph = Graph::build(iota_ids(n), std::move(edges), std::move(meta));
  return out;
}

std::map<VertexId, VertexId> windmill_rotation(int blades, int radius) {
  require(blades >= 3 && radius >= 2, "windmill: bad parameters");
  const WindmillIds ids{blades, radius};
  std::map<VertexId, VertexId> sigma;
  for (int i = 0; i < blades; ++i) {
    const int j = (i + 1) % blades;
    for (int s = 0; s < 2; ++s) {
      for (int x = 0; x <= radius; ++x) {
        for (int y = 0; y <= radius; ++y) sigma[ids.at(i, s, x, y)] = ids.at(j, s, x, y);
      }
    }
  }
  return sigma;
}

namespace {

std::int64_t param(const FamilySpec& spec, const std::string& name) {
  auto it = spec.params.find(name);
  require(it != spec.params.end(), spec.family + ": missing parameter '" + name + "'");
  require((it->second >= INT32_MIN && it->second <= INT32_MAX) || name == "seed",
          spec.family + ": parameter '" + name + "' out of range");
  return it->second;
}

int iparam(const FamilySpec& spec, const std::string& name) {
  return static_cast<int>(param(spec, name));
}

}  // namespace

Graph generate(const FamilySpec& spec) {
  const auto& f = spec.family;
  if (f == "gp") return gp_graph(iparam(spec, "k"), iparam(spec, "up"), iparam(spec, "down"));
  if (f == "lattice_box") return lattice_box(iparam(spec, "w"), iparam(spec, "h"));
  if (f == "regular_tree") return regular_tree(iparam(spec, "d"), iparam(spec, "radius"));
  if (f == "cycle") return cycle_graph(iparam(spec, "n"));
  if (f == "random_gnm") {
    return random_gnm(iparam(spec, "n"), iparam(spec, "m"),
                      static_cast<std::uint64_t>(param(spec, "seed")));
  }
  if (f == "windmill") return windmill(iparam(spec, "blades"), iparam(spec, "radius")).graph;
  if (f == "free_product") return free_product(spec.factors, iparam(spec, "max_word"));
  fail(ErrorCode::BadParams, "unknown family '" + f + "'");
}

}  // namespace wmsf
