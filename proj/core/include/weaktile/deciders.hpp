#pragma once

// Deciders for tiling, spectrality and pd-tiling, with certificates that
// are re-verified in exact arithmetic before they are returned.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "weaktile/fourier.hpp"
#include "weaktile/group.hpp"
#include "weaktile/search.hpp"

namespace weaktile {

struct DeciderLimits {
  std::uint64_t lp_group_cap = 1000;
  std::int64_t rational_denominator_cap = 1'000'000;
  std::uint64_t spectral_vertex_cap = 20'000;
};

DeciderLimits& decider_limits();

struct TilingCertificate {
  ElementSet X;
  ElementSet translations;
  bool verified = false;
};

/// Spectrum characters share the group's coordinates (self-dual identification).
struct SpectrumCertificate {
  ElementSet X;
  ElementSet spectrum;
  bool verified = false;
};

enum class Provenance { FromTiling, FromSpectrum, Tensor, LP, External };
std::string to_string(Provenance p);

struct PdWitness {
  ElementSet X;
  GroupFunction h;
  Provenance provenance = Provenance::External;
};

struct ComplementWeakTiling {
  ElementSet X;
  GroupFunction mu;
};

struct VerificationReport {
  std::string mode;
  std::uint64_t checked = 0;
  std::vector<std::string> failures;
  [[nodiscard]] bool passed() const { return failures.empty(); }
};

bool verify_tiling(TilingCertificate& cert);
bool verify_spectrum(SpectrumCertificate& cert);

enum class TileVerdict { Tile, NonTile, Unknown };
std::string to_string(TileVerdict v);

struct TileDecision {
  TileVerdict verdict = TileVerdict::Unknown;
  std::optional<TilingCertificate> certificate;
  std::string reason;
  std::uint64_t nodes = 0;
};

TileDecision decide_tile(const ElementSet& X, const Budget& budget = {});

enum class SpectralVerdict { Spectral, NonSpectral, Unknown };
std::string to_string(SpectralVerdict v);

struct SpectralDecision {
  SpectralVerdict verdict = SpectralVerdict::Unknown;
  std::optional<SpectrumCertificate> certificate;
  bool exhaustive_proof = false;
  std::string reason;
  std::uint64_t nodes = 0;
};

SpectralDecision decide_spectral(const ElementSet& X, const Budget& budget = {});

/// h = (1_L * 1_{-L}) / |L|.
PdWitness pd_from_tiling(const TilingCertificate& cert);
/// Galois average of x -> |sum_s s(x)|^2 / |X|^2; rational, still a witness.
PdWitness pd_from_spectrum(const SpectrumCertificate& cert);

/// Exhaustive: every element and character. Sampled(n): n random points of
/// each plus 0 and the unit vectors.
VerificationReport verify_pd_witness(const ElementSet& X, const GroupFunction& h, const SweepMode& mode);
/// Same checks with X given by a membership test (for sets too large to list).
VerificationReport verify_pd_witness(const GroupSpec& spec, const std::function<bool(std::uint64_t)>& in_X,
                                     const GroupFunction& h, const SweepMode& mode);

/// Dual vector for the pd-tiling LP: multipliers y on the equalities
/// (1_X * h)(x) = 1 for each x, then h(0) = 1; z >= 0 on the transform rows.
/// Valid when y.b > 0 and every column of y.A + z.C is <= 0.
struct FarkasCertificate {
  std::vector<Rational> equality_multipliers;
  std::vector<std::pair<std::uint64_t, Rational>> transform_multipliers;  // (character, z)
  bool verified = false;
};

enum class PdVerdict { PdTile, NotPdTile, Inconclusive };
std::string to_string(PdVerdict v);

struct PdDecision {
  PdVerdict verdict = PdVerdict::Inconclusive;
  std::optional<PdWitness> witness;
  std::optional<FarkasCertificate> farkas;
  std::string reason;
};

PdDecision decide_pd_tiling(const ElementSet& X);
bool verify_farkas(const ElementSet& X, FarkasCertificate& cert);

/// mu = h - delta_0.
ComplementWeakTiling strip_origin(const PdWitness& w);
bool verify_complement(const ComplementWeakTiling& c);

// JSON documents, schema "weaktile.certificate/1", rationals as "num/den".
std::string certificate_json(const TilingCertificate& c, const VerificationReport& r);
std::string certificate_json(const SpectrumCertificate& c, const VerificationReport& r);
std::string certificate_json(const PdWitness& w, const VerificationReport& r);
std::string certificate_json(const ElementSet& X, const FarkasCertificate& f);
std::string non_tile_json(const ElementSet& X, const std::string& reason);
std::string non_spectral_json(const ElementSet& X, const SpectralDecision& d);

}  // namespace weaktile
