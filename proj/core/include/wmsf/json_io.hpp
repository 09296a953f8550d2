#ifndef WMSF_JSON_IO_HPP
#define WMSF_JSON_IO_HPP

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "wmsf/ends.hpp"
#include "wmsf/forest.hpp"
#include "wmsf/graph.hpp"
#include "wmsf/weights.hpp"

namespace wmsf {

using Json = nlohmann::json;

/// {"vertices":[{"id":..,"level":..,"boundary":true}],"edges":[[u,v],..],"meta":{..}}
Json graph_to_json(const Graph& g);
/// Throws ParseError plus the build_graph errors.
Graph graph_from_json(const Json& j);

Json edges_to_json(const EdgeSet& edges);
/// Accepts [[u,v],..] or {"edges":[[u,v],..]}. Throws ParseError.
EdgeSet edges_from_json(const Json& j);

/// {"potential":{"<id>":"n/d"}}, {"levels_from_meta":true,"base_ratio":"1/k"}
/// or {"cocycle":[[x,y,"w(x,y)"],..],"mode":"exact"|"log"} (log mode takes
/// numbers or strings). Throws ParseError, MissingVertex, InvalidCocycle.
Potential potential_from_json(const Graph& g, const Json& j, double log_tolerance = 1e-9);
Json potential_to_json(const Graph& g, const Potential& p);

/// {"kept":[[u,v]..],"deleted":[..],"fixed":[..]}
Json forest_to_json(const ForestResult& r);
ForestResult forest_from_json(const Json& j);

/// {"ranks":[[u,v,rank],..]} -> edge ranks. Throws ParseError.
std::map<Edge, std::uint64_t> ranks_from_json(const Json& j);
Json ranks_to_json(const std::map<Edge, std::uint64_t>& ranks);

Json family_to_json(const FurcationFamily& f);

/// Reads and parses a whole file. Throws ParseError.
Json read_json_file(const std::string& path);
/// Canonical text form used for every output file.
std::string dump_json(const Json& j);

}  // namespace wmsf

#endif
