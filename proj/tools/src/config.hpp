#pragma once

// Flat "key = value" run configuration. Every cap and budget the library
// exposes can be set here; unknown keys are rejected.

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

namespace weaktile::cli {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Config {
  std::map<std::string, std::uint64_t> values;  // every known key, defaults filled in
  unsigned workers = 1;                          // not part of the digest

  static Config defaults();
  void load(const std::filesystem::path& path);
  void set(const std::string& key, const std::string& value);
  [[nodiscard]] std::uint64_t get(const std::string& key) const;

  /// FNV-1a over the sorted "key=value" lines.
  [[nodiscard]] std::string digest() const;
  /// Pushes the values into the library's process-wide limits.
  void apply() const;
};

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 0xcbf29ce484222325ull);
std::string hex64(std::uint64_t v);
std::string file_digest(const std::filesystem::path& path);

}  // namespace weaktile::cli
