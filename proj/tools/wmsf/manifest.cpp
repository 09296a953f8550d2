#include "manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <wmsf/error.hpp>

namespace wmsf::cli {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(fnv1a64(buf.str())));
  return out;
}

void write_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::BadParams, "cannot write '" + path + "'");
    out << contents;
    if (!out.flush()) fail(ErrorCode::BadParams, "cannot write '" + path + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorCode::BadParams, "cannot move output into '" + path + "': " + ec.message());
}

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

Json Manifest::to_json() const {
  Json in = Json::object();
  for (const auto& p : inputs) in[p] = hash_file(p);
  Json out = Json::object();
  for (const auto& p : outputs) out[p] = hash_file(p);
  Json j = {{"command", command},
            {"args", args},
            {"inputs", std::move(in)},
            {"outputs", std::move(out)},
            {"tool_version", WMSF_VERSION},
            {"timestamp", utc_now()}};
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  return j;
}

std::string manifest_path(const std::string& primary_output) {
  return primary_output + ".manifest.json";
}

void write_manifest(const Manifest& m) {
  write_atomic(manifest_path(m.outputs.front()), dump_json(m.to_json()));
}

}  // namespace wmsf::cli
