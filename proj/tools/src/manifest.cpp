#include "manifest.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

namespace weaktile::cli {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

}  // namespace

Run::Run(std::string command_line, const Config& config, std::filesystem::path out_dir, std::string name)
    : command_(std::move(command_line)),
      name_(std::move(name)),
      config_(config),
      out_dir_(std::move(out_dir)),
      start_(std::chrono::steady_clock::now()) {}

void Run::mode(const std::string& what, const std::string& mode) { modes_[what] = mode; }

void Run::certificate(const std::string& file, const std::string& text) {
  write_text(out_dir_ / file, text);
  attach(file);
}

void Run::attach(const std::string& file) {
  certificates_.push_back({{"file", file}, {"fnv1a", file_digest(out_dir_ / file)}});
}

void Run::citations(const std::vector<std::string>& c) {
  for (const auto& s : c)
    if (std::find(citations_.begin(), citations_.end(), s) == citations_.end()) citations_.push_back(s);
}

bool Run::check(const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name;
  if (!detail.empty()) std::cout << ": " << detail;
  std::cout << std::endl;
  checks_.push_back({{"name", name}, {"passed", ok}, {"detail", detail}});
  if (!ok) ++failures_;
  return ok;
}

void Run::note(const std::string& key, json value) { notes_[key] = std::move(value); }

void Run::phase_begin(const std::string& name) {
  phase_end();
  phase_ = name;
  phase_start_ = std::chrono::steady_clock::now();
}

void Run::phase_end() {
  if (phase_.empty()) return;
  const std::chrono::duration<double> d = std::chrono::steady_clock::now() - phase_start_;
  phases_.push_back({{"phase", phase_}, {"seconds", d.count()}});
  phase_.clear();
}

int Run::finish(int exit_code) {
  phase_end();
  json m;
  m["schema"] = "weaktile.manifest/1";
  m["command"] = command_;
  m["config_digest"] = config_.digest();
  m["config"] = config_.values;
  m["seed"] = config_.get("seed");
  m["parameters"] = parameters_;
  m["verification_modes"] = modes_;
  m["certificates"] = certificates_;
  m["checks"] = checks_;
  if (!notes_.empty()) m["results"] = notes_;
  m["trusted_citations"] = citations_;
  m["timings_file"] = name_ + ".timings.json";
  m["exit_code"] = exit_code;
  write_text(out_dir_ / (name_ + ".manifest.json"), m.dump(2));

  const std::chrono::duration<double> total = std::chrono::steady_clock::now() - start_;
  json t;
  t["command"] = command_;
  t["workers"] = config_.workers;
  t["phases"] = phases_;
  t["total_seconds"] = total.count();
  write_text(out_dir_ / (name_ + ".timings.json"), t.dump(2));
  return exit_code;
}

}  // namespace weaktile::cli
