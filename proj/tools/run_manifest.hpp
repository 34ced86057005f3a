#pragma once

// Checksums, atomic file output and the per-run manifest written by the CLI.

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace hyperencap::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || !EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) ||
      !EVP_DigestUpdate(ctx.get(), data.data(), data.size()) || !EVP_DigestFinal_ex(ctx.get(), md, &len))
    throw std::runtime_error("sha256 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw OutputError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes next to the target and renames, so readers never see a partial file.
inline void write_atomic(const fs::path& path, std::string_view data) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot write " + tmp.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) throw OutputError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

struct RunManifest {
  std::string version;
  std::string command;
  std::vector<std::string> argv;
  Json params = Json::object();
  Json seed = nullptr;
  Json inputs = Json::array();
  Json outputs = Json::array();
  std::string stdout_sha256;

  void add_input(const fs::path& p) { inputs.push_back({{"path", p.string()}, {"sha256", sha256_hex(read_file(p))}}); }
  void add_output(const fs::path& p, std::string_view data) {
    outputs.push_back({{"path", p.string()}, {"sha256", sha256_hex(data)}});
  }

  Json to_json() const {
    return {{"tool", "hyperencap"}, {"version", version}, {"command", command}, {"argv", argv},
            {"params", params},     {"seed", seed},       {"inputs", inputs},   {"outputs", outputs},
            {"stdout_sha256", stdout_sha256}};
  }
};

}  // namespace hyperencap::cli
