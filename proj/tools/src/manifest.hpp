#pragma once

// Run manifest (deterministic) plus a timings sidecar (not).

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace weaktile::cli {

using json = nlohmann::ordered_json;

class Run {
 public:
  Run(std::string command_line, const Config& config, std::filesystem::path out_dir, std::string name);

  json& parameters() { return parameters_; }
  void mode(const std::string& what, const std::string& mode);
  /// Writes `text` to out_dir/file and lists it with its digest.
  void certificate(const std::string& file, const std::string& text);
  /// Lists an already written file.
  void attach(const std::string& file);
  void citations(const std::vector<std::string>& c);

  /// Prints "PASS name: detail" / "FAIL ..." and records it.
  bool check(const std::string& name, bool ok, const std::string& detail = {});
  void note(const std::string& key, json value);

  void phase_begin(const std::string& name);
  void phase_end();

  [[nodiscard]] const std::filesystem::path& out_dir() const { return out_dir_; }
  [[nodiscard]] bool all_passed() const { return failures_ == 0; }

  /// Writes <name>.manifest.json and <name>.timings.json; returns exit_code.
  int finish(int exit_code);

 private:
  std::string command_, name_;
  const Config& config_;
  std::filesystem::path out_dir_;
  json parameters_ = json::object(), modes_ = json::object(), certificates_ = json::array(), checks_ = json::array(),
       notes_ = json::object(), citations_ = json::array(), phases_ = json::array();
  int failures_ = 0;
  std::string phase_;
  std::chrono::steady_clock::time_point phase_start_, start_;
};

}  // namespace weaktile::cli
