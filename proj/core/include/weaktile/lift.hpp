#pragma once

// From G x H to the box Z_{6p}^4 x Z_{6q} (coordinatewise CRT), and from
// there to periodic weak tilings of Z^r: P(k) = P + T(k), w(k) = w
// periodized by the lattice k * (box orders) Z^r.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "weaktile/deciders.hpp"
#include "weaktile/fourier.hpp"
#include "weaktile/group.hpp"
#include "weaktile/lonely.hpp"

namespace weaktile::lift {

/// Z_6 x Z_p -> Z_6p on the first four coordinates (u1[i] with h[i]), and
/// Z_6 x Z_q -> Z_6q for u1[4] with u2.
class CrtMap {
 public:
  CrtMap(std::uint32_t p, std::uint32_t q);

  [[nodiscard]] const GroupSpec& E() const { return E_; }
  [[nodiscard]] const GroupSpec& box() const { return F_; }
  [[nodiscard]] std::uint64_t flatten(std::uint64_t e) const;
  [[nodiscard]] std::uint64_t unflatten(std::uint64_t x) const;
  /// Character of the box with chi_F(flatten(z)) = chi_E(z).
  [[nodiscard]] std::uint64_t dual(std::uint64_t chi_E) const;

 private:
  std::uint32_t p_, q_;
  GroupSpec E_, F_;
};

ElementSet flatten(const CrtMap& m, const ElementSet& set_on_E);
GroupFunction flatten(const CrtMap& m, const GroupFunction& f_on_E);
/// Image of Pt (needs the materialized set).
ElementSet flatten(const lonely::LonelyInstance& inst);

struct LatticeLift {
  std::uint32_t p = 0, q = 0;  // 0 for boxes not coming from an instance
  std::uint32_t k = 1;
  GroupSpec box;     // one period of P
  GroupSpec domain;  // box orders times k: one period of w(k)
  ElementSet P;      // in box
  GroupFunction w;   // on box, verified

  [[nodiscard]] std::uint64_t pk_size() const;
  /// x in the domain lies in P(k) iff x reduced into the box lies in P.
  [[nodiscard]] bool in_Pk(std::uint64_t x) const;
  /// w placed at the same coordinates inside the domain.
  [[nodiscard]] GroupFunction wk() const;
  /// Points of P(k) in domain index order.
  [[nodiscard]] std::vector<std::uint64_t> anchors() const;
};

/// w must come with a passing verification report on the box.
LatticeLift periodize(const ElementSet& P, const GroupFunction& w, std::uint32_t k, const VerificationReport& w_report);

/// (1_{P(k)} * w(k))(x) = 1 at integer points x = offset + y, y in the
/// domain (exhaustive) or sampled from it; coordinates reduced by floor mod.
VerificationReport verify_lift(const LatticeLift& lift, const SweepMode& mode,
                               const std::vector<std::int64_t>& offset = {});

struct ComplementMeasure {
  GroupFunction mu;  // w(k) - delta_0 on the domain
  Rational origin_mass;
  bool nonnegative = false;
  VerificationReport identity;  // (1_{P(k)} * mu) = 1 - 1_{P(k)}
};

ComplementMeasure complement_measure(const LatticeLift& lift, const SweepMode& mode);

struct CubeFile {
  std::uint32_t p = 0, q = 0, k = 1;
  std::vector<std::uint32_t> box;      // domain orders, also the period of w(k)
  std::vector<std::uint32_t> anchors;  // flattened, box.size() per cube
  std::vector<std::pair<std::vector<std::uint32_t>, Rational>> weight;  // one period
  std::vector<std::string> trusted_citations;

  [[nodiscard]] std::size_t cube_count() const { return box.empty() ? 0 : anchors.size() / box.size(); }
};

CubeFile to_cube_file(const LatticeLift& lift, const std::vector<std::string>& citations);
/// Fixed layout, one anchor per line; deterministic bytes.
void export_cubes(const CubeFile& c, const std::filesystem::path& path);
void export_cubes(const LatticeLift& lift, const std::filesystem::path& path,
                  const std::vector<std::string>& citations);
/// Streamed SAX read; anchors are not held as a DOM.
CubeFile import_cubes(const std::filesystem::path& path);

}  // namespace weaktile::lift
