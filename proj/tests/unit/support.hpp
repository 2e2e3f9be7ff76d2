#pragma once

#include <atomic>
#include <filesystem>
#include <optional>
#include <string>
#include <unistd.h>

#include "crossdiff/error.hpp"

namespace test_support {

inline std::string source_path(const std::string& rel) {
  return std::string(CROSSDIFF_SOURCE_DIR) + "/" + rel;
}

/// Kind of the crossdiff::Error thrown by f, or empty if it returned.
template <class F>
std::optional<crossdiff::ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const crossdiff::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("crossdiff_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace test_support
