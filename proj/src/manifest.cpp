#include "asz/manifest.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace asz {

std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return sha256_hex(ss.str());
}

nlohmann::ordered_json to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["params"] = m.params;
  j["seed"] = m.seed;
  j["jobs"] = m.jobs;
  j["wall_seconds"] = m.wall_seconds;
  j["version"] = m.version;
  j["exit_code"] = m.exit_code;
  auto outs = nlohmann::ordered_json::array();
  for (const auto& o : m.outputs) outs.push_back({{"file", o.file}, {"sha256", o.sha256}});
  j["outputs"] = outs;
  return j;
}

RunManifest manifest_from_json(const nlohmann::ordered_json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.params = j.at("params");
  m.seed = j.at("seed").get<std::uint64_t>();
  m.jobs = j.at("jobs").get<int>();
  m.wall_seconds = j.at("wall_seconds").get<double>();
  m.version = j.at("version").get<std::string>();
  m.exit_code = j.value("exit_code", 0);
  for (const auto& o : j.at("outputs")) m.outputs.push_back({o.at("file"), o.at("sha256")});
  return m;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << to_json(m).dump(2) << '\n';
}

}  // namespace asz
