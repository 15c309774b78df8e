#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "cselect/library_spec.hpp"

// Content-addressed report cache. Needs libcrypto.
namespace cselect {

inline constexpr const char* kCacheFormatVersion = "cselect-cache-1";

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

// Each field is length-prefixed so that moving bytes between fields changes
// the key.
class CacheKeyBuilder {
 public:
  CacheKeyBuilder& add(const std::string& label, const std::string& bytes) {
    buf_ += label + ":" + std::to_string(bytes.size()) + ":" + bytes + ";";
    return *this;
  }
  std::string digest() const { return sha256_hex(buf_); }

 private:
  std::string buf_;
};

// Every `.cts` file of the catalogue, by file name.
inline std::vector<std::pair<std::string, std::string>> catalogue_files(const std::filesystem::path& dir) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".cts") {
      out.emplace_back(e.path().filename().string(), read_file(e.path()));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string cache_key(const std::string& spec_bytes,
                             const std::vector<std::pair<std::string, std::string>>& catalogue,
                             int model_size, int domain_size, const std::string& extra = {}) {
  CacheKeyBuilder b;
  b.add("version", kCacheFormatVersion).add("spec", spec_bytes);
  for (const auto& [name, bytes] : catalogue) b.add("cts:" + name, bytes);
  b.add("k", std::to_string(model_size)).add("m", std::to_string(domain_size)).add("extra", extra);
  return b.digest();
}

// Writes to a sibling temporary file and renames it into place.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

class ReportCache {
 public:
  explicit ReportCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::optional<std::string> load(const std::string& key) const {
    auto p = path(key);
    if (!std::filesystem::exists(p)) return std::nullopt;
    return read_file(p);
  }
  void store(const std::string& key, const std::string& report) const { atomic_write(path(key), report); }
  std::filesystem::path path(const std::string& key) const { return dir_ / (key + ".json"); }

 private:
  std::filesystem::path dir_;
};

}  // namespace cselect
