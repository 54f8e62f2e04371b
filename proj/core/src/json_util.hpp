#pragma once

#include <json.hpp>

#include "weaktile/fourier.hpp"
#include "weaktile/group.hpp"

namespace weaktile::detail {

using json = nlohmann::ordered_json;

inline constexpr const char* kCertificateSchema = "weaktile.certificate/1";

inline json coords_json(const GroupSpec& spec, std::uint64_t x) { return spec.coords(x); }

inline json set_json(const ElementSet& s) {
  json a = json::array();
  for (auto x : s) a.push_back(coords_json(s.spec(), x));
  return a;
}

inline std::string fraction(const Rational& r) { return std::to_string(r.num()) + "/" + std::to_string(r.den()); }

inline json weights_json(const GroupFunction& f) {
  json a = json::array();
  for (const auto& [x, w] : f.weights()) a.push_back({{"x", coords_json(f.spec(), x)}, {"w", fraction(w)}});
  return a;
}

inline json report_json(const std::string& mode, std::uint64_t checked, const std::vector<std::string>& failures) {
  return {{"mode", mode}, {"checked", checked}, {"failures", failures}};
}

}  // namespace weaktile::detail
