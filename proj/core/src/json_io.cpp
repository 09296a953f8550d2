#include "wmsf/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wmsf/error.hpp"

namespace wmsf {

namespace {

[[noreturn]] void bad(const std::string& msg) { fail(ErrorCode::ParseError, msg); }

VertexId as_id(const Json& j) {
  if (j.is_number_unsigned()) return j.get<VertexId>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return j.get<VertexId>();
  bad("vertex id must be a non-negative integer");
}

Edge as_edge(const Json& j) {
  if (!j.is_array() || j.size() < 2) bad("edge must be a pair [u, v]");
  return Edge{as_id(j[0]), as_id(j[1])};
}

Rational as_rational(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float()) return rational_from_double(j.get<double>());
  bad("expected a rational as string or number");
}

}  // namespace

Json graph_to_json(const Graph& g) {
  Json vertices = Json::array();
  for (Index v = 0; v < g.num_vertices(); ++v) {
    Json entry = {{"id", g.id(v)}};
    if (auto level = g.level(v)) entry["level"] = *level;
    if (g.is_boundary(v)) entry["boundary"] = true;
    vertices.push_back(std::move(entry));
  }
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  Json meta = Json::object();
  for (const auto& [k, v] : g.meta().annotations) meta[k] = v;
  return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}, {"meta", std::move(meta)}};
}

Graph graph_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array()) {
    bad("graph needs a \"vertices\" array");
  }
  std::vector<VertexId> ids;
  GraphMeta meta;
  for (const auto& v : j["vertices"]) {
    VertexId id = 0;
    if (v.is_object()) {
      if (!v.contains("id")) bad("vertex entry without id");
      id = as_id(v["id"]);
      if (v.contains("level")) {
        if (!v["level"].is_number_integer()) bad("level must be an integer");
        meta.levels[id] = v["level"].get<std::int64_t>();
      }
      if (v.contains("boundary")) {
        if (!v["boundary"].is_boolean()) bad("boundary must be a boolean");
        if (v["boundary"].get<bool>()) meta.boundary.insert(id);
      }
    } else {
      id = as_id(v);
    }
    ids.push_back(id);
  }
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) bad("\"edges\" must be an array");
    for (const auto& e : j["edges"]) edges.push_back(as_edge(e));
  }
  if (j.contains("meta")) {
    if (!j["meta"].is_object()) bad("\"meta\" must be an object");
    for (const auto& [k, v] : j["meta"].items()) {
      meta.annotations[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  return Graph::build(std::move(ids), std::move(edges), std::move(meta));
}

Json edges_to_json(const EdgeSet& edges) {
  Json out = Json::array();
  for (const auto& e : edges) out.push_back({e.u, e.v});
  return out;
}

EdgeSet edges_from_json(const Json& j) {
  const Json* list = &j;
  if (j.is_object()) {
    if (!j.contains("edges")) bad("expected an \"edges\" array");
    list = &j["edges"];
  }
  if (!list->is_array()) bad("expected an edge list");
  EdgeSet out;
  for (const auto& e : *list) {
    const Edge raw = as_edge(e);
    if (raw.u == raw.v) fail(ErrorCode::SelfLoop, "self-loop in edge list");
    out.push_back(Edge::canonical(raw.u, raw.v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Potential potential_from_json(const Graph& g, const Json& j, double log_tolerance) {
  if (!j.is_object()) bad("weights must be a JSON object");
  if (j.contains("potential")) {
    if (!j["potential"].is_object()) bad("\"potential\" must map ids to values");
    std::map<VertexId, Rational> values;
    for (const auto& [k, v] : j["potential"].items()) {
      VertexId id = 0;
      try {
        std::size_t pos = 0;
        id = std::stoull(k, &pos);
        if (pos != k.size()) bad("bad vertex id '" + k + "'");
      } catch (const std::logic_error&) {
        bad("bad vertex id '" + k + "'");
      }
      values[id] = as_rational(v);
    }
    return Potential::from_map(g, values);
  }
  if (j.value("levels_from_meta", false)) {
    const Rational ratio = j.contains("base_ratio") ? as_rational(j["base_ratio"]) : Rational(1, 2);
    return Potential::from_levels(g, ratio);
  }
  if (j.contains("cocycle")) {
    const std::string mode = j.value("mode", std::string("exact"));
    if (!j["cocycle"].is_array()) bad("\"cocycle\" must be a list of [x, y, w(x,y)]");
    std::vector<std::optional<Rational>> exact(g.num_edges());
    std::vector<std::optional<double>> logs(g.num_edges());
    for (const auto& item : j["cocycle"]) {
      if (!item.is_array() || item.size() != 3) bad("cocycle entries are [x, y, w(x,y)]");
      const VertexId x = as_id(item[0]);
      const VertexId y = as_id(item[1]);
      const Index e = g.edge_index(Edge::canonical(x, y));
      const bool forward = x < y;
      if (mode == "exact") {
        const Rational r = as_rational(item[2]);
        if (r <= 0) fail(ErrorCode::NonPositiveWeight, "cocycle ratios must be positive");
        exact[e] = forward ? r : Rational(1) / r;
      } else if (mode == "log") {
        const double r = item[2].is_string() ? to_double(parse_rational(item[2].get<std::string>()))
                                             : item[2].get<double>();
        if (!(r > 0)) fail(ErrorCode::NonPositiveWeight, "cocycle ratios must be positive");
        logs[e] = forward ? std::log(r) : -std::log(r);
      } else {
        bad("cocycle mode must be \"exact\" or \"log\"");
      }
    }
    Cocycle c;
    if (mode == "exact") {
      std::vector<Rational> forward(g.num_edges());
      for (Index e = 0; e < g.num_edges(); ++e) {
        if (!exact[e]) fail(ErrorCode::MissingVertex, "cocycle misses an edge");
        forward[e] = *exact[e];
      }
      c = Cocycle::exact(g, std::move(forward));
    } else {
      std::vector<double> forward(g.num_edges());
      for (Index e = 0; e < g.num_edges(); ++e) {
        if (!logs[e]) fail(ErrorCode::MissingVertex, "cocycle misses an edge");
        forward[e] = *logs[e];
      }
      c = Cocycle::log_float(g, std::move(forward));
    }
    return potential_from_cocycle(g, c, log_tolerance);
  }
  bad("weights need \"potential\", \"levels_from_meta\" or \"cocycle\"");
}

Json potential_to_json(const Graph& g, const Potential& p) {
  Json values = Json::object();
  for (Index v = 0; v < g.num_vertices(); ++v) {
    values[std::to_string(g.id(v))] = format_rational(p.value(v));
  }
  return {{"potential", std::move(values)}};
}

Json forest_to_json(const ForestResult& r) {
  return {{"kept", edges_to_json(r.kept)},
          {"deleted", edges_to_json(r.deleted)},
          {"fixed", edges_to_json(r.fixed)}};
}

ForestResult forest_from_json(const Json& j) {
  if (!j.is_object()) bad("forest must be a JSON object");
  ForestResult r;
  if (j.contains("kept")) r.kept = edges_from_json(j["kept"]);
  if (j.contains("deleted")) r.deleted = edges_from_json(j["deleted"]);
  if (j.contains("fixed")) r.fixed = edges_from_json(j["fixed"]);
  return r;
}

std::map<Edge, std::uint64_t> ranks_from_json(const Json& j) {
  const Json* list = &j;
  if (j.is_object()) {
    if (!j.contains("ranks")) bad("order needs a \"ranks\" list");
    list = &j["ranks"];
  }
  if (!list->is_array()) bad("ranks must be a list of [u, v, rank]");
  std::map<Edge, std::uint64_t> out;
  for (const auto& item : *list) {
    if (!item.is_array() || item.size() != 3 || !item[2].is_number_integer()) {
      bad("ranks entries are [u, v, rank]");
    }
    const Edge e = as_edge(item);
    if (!out.emplace(Edge::canonical(e.u, e.v), item[2].get<std::uint64_t>()).second) {
      bad("edge ranked twice");
    }
  }
  return out;
}

Json ranks_to_json(const std::map<Edge, std::uint64_t>& ranks) {
  Json list = Json::array();
  for (const auto& [e, r] : ranks) list.push_back({e.u, e.v, r});
  return {{"ranks", std::move(list)}};
}

Json family_to_json(const FurcationFamily& f) {
  Json blocks = Json::array();
  for (const auto& b : f.blocks) {
    Json sides = Json::array();
    for (const auto& s : b.sides) {
      sides.push_back({{"size", s.side.vertices.size()}, {"class", to_string(s.cls)}});
    }
    blocks.push_back({{"vertices", b.f},
                      {"phase", b.phase},
                      {"infinite", b.infinite},
                      {"nonvanishing", b.nonvanishing},
                      {"sides", std::move(sides)}});
  }
  return {{"blocks", std::move(blocks)}, {"candidates_scanned", f.candidates_scanned}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    bad("'" + path + "': " + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(1) + "\n"; }

}  // namespace wmsf
