#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace asz {

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

struct OutputDigest {
  std::string file;
  std::string sha256;
};

struct RunManifest {
  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::uint64_t seed = 0;
  int jobs = 1;
  double wall_seconds = 0;
  std::string version;
  int exit_code = 0;
  std::vector<OutputDigest> outputs;
};

nlohmann::ordered_json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::ordered_json& j);
void write_manifest(const std::filesystem::path& path, const RunManifest& m);

}  // namespace asz
