#ifndef WMSF_TOOLS_MANIFEST_HPP
#define WMSF_TOOLS_MANIFEST_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <wmsf/json_io.hpp>

namespace wmsf::cli {

std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_file(const std::string& path);

/// Writes through a temporary file and a rename.
void write_atomic(const std::string& path, const std::string& contents);

struct Manifest {
  std::string command;
  std::vector<std::string> args;         // argv without the program name
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::optional<std::uint64_t> seed;

  /// Hashes inputs and outputs as they are on disk now.
  Json to_json() const;
};

/// "<first output>.manifest.json"
std::string manifest_path(const std::string& primary_output);
void write_manifest(const Manifest& m);

}  // namespace wmsf::cli

#endif
