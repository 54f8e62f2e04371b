#include "config.hpp"

#include <cstdio>
#include <fstream>

#include "weaktile/cyclo.hpp"
#include "weaktile/deciders.hpp"
#include "weaktile/fourier.hpp"
#include "weaktile/group.hpp"
#include "weaktile/lonely.hpp"

namespace weaktile::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::defaults() {
  Config c;
  const cyclo::Limits cl;
  const GroupLimits gl;
  const FourierLimits fl;
  const DeciderLimits dl;
  const lonely::LonelyLimits ll;
  c.values = {
      {"seed", 0},
      {"cyclo.max_modulus", cl.max_modulus},
      {"cyclo.max_sign_refinements", static_cast<std::uint64_t>(cl.max_sign_refinements)},
      {"group.enumeration_cap", gl.enumeration_cap},
      {"group.materialize_cap", gl.materialize_cap},
      {"fourier.convolution_cap", fl.convolution_cap},
      {"fourier.exhaustive_dual_cap", fl.exhaustive_dual_cap},
      {"deciders.lp_group_cap", dl.lp_group_cap},
      {"deciders.rational_denominator_cap", static_cast<std::uint64_t>(dl.rational_denominator_cap)},
      {"deciders.spectral_vertex_cap", dl.spectral_vertex_cap},
      {"lonely.materialize_pt", ll.materialize_pt},
      {"lonely.direct_eval_modulus", ll.direct_eval_modulus},
      {"search.budget", 50'000'000},
      {"spectrum.pair_budget", 2'000'000},
  };
  return c;
}

void Config::set(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  std::size_t used = 0;
  try {
    v = std::stoull(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw ConfigError("config: '" + key + "' needs a nonnegative integer");
  if (key == "workers") {
    workers = v == 0 ? 1u : static_cast<unsigned>(v);
    return;
  }
  auto it = values.find(key);
  if (it == values.end()) throw ConfigError("config: unknown key '" + key + "'");
  it->second = v;
}

void Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(n) + ": expected key = value");
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

std::uint64_t Config::get(const std::string& key) const { return values.at(key); }

std::string Config::digest() const {
  std::string text;
  for (const auto& [k, v] : values) text += k + "=" + std::to_string(v) + "\n";
  return hex64(fnv1a(text));
}

void Config::apply() const {
  cyclo::limits().max_modulus = get("cyclo.max_modulus");
  cyclo::limits().max_sign_refinements = static_cast<int>(get("cyclo.max_sign_refinements"));
  group_limits().enumeration_cap = get("group.enumeration_cap");
  group_limits().materialize_cap = get("group.materialize_cap");
  fourier_limits().convolution_cap = get("fourier.convolution_cap");
  fourier_limits().exhaustive_dual_cap = get("fourier.exhaustive_dual_cap");
  decider_limits().lp_group_cap = get("deciders.lp_group_cap");
  decider_limits().rational_denominator_cap = static_cast<std::int64_t>(get("deciders.rational_denominator_cap"));
  decider_limits().spectral_vertex_cap = get("deciders.spectral_vertex_cap");
  lonely::lonely_limits().materialize_pt = get("lonely.materialize_pt");
  lonely::lonely_limits().direct_eval_modulus = get("lonely.direct_eval_modulus");
  lonely::lonely_limits().workers = workers;
}

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "missing";
  std::uint64_t h = 0xcbf29ce484222325ull;
  std::string chunk(1 << 16, '\0');
  while (in) {
    in.read(chunk.data(), static_cast<std::streamsize>(chunk.size()));
    h = fnv1a(chunk.substr(0, static_cast<std::size_t>(in.gcount())), h);
  }
  return hex64(h);
}

}  // namespace weaktile::cli
