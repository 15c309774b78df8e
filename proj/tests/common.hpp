#pragma once

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include <unistd.h>

#include "cselect/library_spec.hpp"
#include "cselect/selector.hpp"
#include "cselect/spec_lang.hpp"
#include "cselect/typecheck.hpp"

namespace testutil {

// Fresh directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("cselect-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

inline std::filesystem::path source_dir() { return CSELECT_SOURCE_DIR; }
inline std::filesystem::path catalogue_dir() { return CSELECT_DEFAULT_CATALOGUE; }
inline std::filesystem::path samples_dir() { return source_dir() / "samples"; }

inline const cselect::Catalogue& catalogue() {
  static const cselect::Catalogue cat = [] {
    auto r = cselect::load_catalogue(catalogue_dir());
    if (!r.ok()) throw std::runtime_error(cselect::format(r.errors.front()));
    return r.catalogue;
  }();
  return cat;
}

inline cselect::TypedSpec typed(const std::string& text, const cselect::Catalogue& cat = catalogue()) {
  auto parsed = cselect::parse_spec(text);
  if (!parsed.ok()) throw std::runtime_error(cselect::format(parsed.errors.front()));
  auto checked = cselect::typecheck(parsed.spec, cat.interfaces);
  if (!checked.ok()) throw std::runtime_error(cselect::format(checked.errors.front()));
  return checked.spec;
}

inline cselect::TypedSpec typed_file(const std::string& name, const cselect::Catalogue& cat = catalogue()) {
  return typed(cselect::read_file(samples_dir() / name), cat);
}

inline const cselect::TypeReport& only_type(const cselect::SelectionReport& r) {
  if (r.types.size() != 1) throw std::runtime_error("expected a single declared type");
  return r.types.front();
}

}  // namespace testutil
