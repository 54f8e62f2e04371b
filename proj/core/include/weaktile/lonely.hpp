#pragma once

// The lonely weak tile: B in H = Z_p^4 (spectral, size 2p), the layered
// tile A in G = Z_6^5 x Z_q, the shift map t and
//   Pt = union over a in A of {a} x (t(a) + B)   inside E = G x H,
// together with the structural certificates for it.
//
// Index conventions: G has orders (6,6,6,6,6,q), H has (p,p,p,p), E is the
// concatenation, so index_E(g, h) = index_G(g) * |H| + index_H(h).

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weaktile/deciders.hpp"
#include "weaktile/fourier.hpp"
#include "weaktile/group.hpp"
#include "weaktile/search.hpp"

namespace weaktile::lonely {

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class FiberMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class VerificationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class HypothesisViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LonelyLimits {
  /// Pt is kept as an explicit sorted list up to this many points.
  std::uint64_t materialize_pt = 5'000'000;
  /// Sampled sweeps evaluate the closed form directly while exp(E) <= this,
  /// and otherwise rely on the coefficient test for relative vanishing sums.
  std::uint64_t direct_eval_modulus = 20'000;
  unsigned workers = 1;
};

LonelyLimits& lonely_limits();

// ---------------------------------------------------------------------------
// B

struct BSource {
  enum class Kind { Search, File } kind = Kind::Search;
  std::string path;
  Budget budget{50'000'000};

  static BSource search(Budget b = {50'000'000}) { return {Kind::Search, {}, b}; }
  static BSource file(std::string path) { return {Kind::File, std::move(path), {}}; }
};

struct BConstruction {
  SpectrumCertificate certificate;  // X = B, spectrum S_B
  std::string origin;               // "search" or the file path
  std::uint64_t nodes = 0;
};

/// Spectral set of size 2p in Z_p^dim. File mode reads `path` and, when it
/// exists, `path + ".spectrum"`; without it the spectrum is searched for.
BConstruction construct_B(std::uint32_t p, const BSource& source, std::size_t dim = 4);

// ---------------------------------------------------------------------------
// A

/// v = (1,2,3,4,5) in Z_6^5.
const Coords& base_vector();

class LayeredTile {
 public:
  LayeredTile() = default;
  explicit LayeredTile(std::uint32_t q);

  [[nodiscard]] std::uint32_t q() const { return q_; }
  [[nodiscard]] const GroupSpec& G() const { return G_; }
  [[nodiscard]] const GroupSpec& G1() const { return G1_; }
  /// Index into s5_enumeration() used on layer k (k for k < 120, else 0).
  [[nodiscard]] std::size_t perm_of_layer(std::uint32_t k) const { return k < 120 ? k : 0; }
  /// pi_k(v), the form whose kernel is layer k.
  [[nodiscard]] const Coords& form_of_layer(std::uint32_t k) const { return forms_[perm_of_layer(k)]; }
  [[nodiscard]] std::uint64_t size() const { return 1296ull * q_; }
  [[nodiscard]] bool contains(std::uint64_t g) const;
  [[nodiscard]] bool contains(const Coords& u1, std::uint32_t u2) const;
  /// Elements of G in index order.
  [[nodiscard]] ElementSet materialize() const;
  /// Layer k as a subgroup of G1 (kernel of its form).
  [[nodiscard]] Subgroup layer_subgroup(std::uint32_t k) const;

 private:
  std::uint32_t q_ = 0;
  GroupSpec G_, G1_;
  std::vector<Coords> forms_;  // one per permutation
};

/// q prime, q >= 15.
LayeredTile construct_A(std::uint32_t q);

/// Common transversal {0, e1..e5} x {0}: a tiling complement of A, found by
/// searching Z_6^5 for six points whose form values are distinct on every
/// layer.
TilingCertificate tiling_complement_A(const LayeredTile& A);

// ---------------------------------------------------------------------------
// t and Pt

struct ShiftMap {
  GroupSpec G, H;
  std::map<std::uint64_t, std::uint64_t> values;  // nonzero values only
  [[nodiscard]] std::uint64_t at(std::uint64_t g) const {
    auto it = values.find(g);
    return it == values.end() ? 0 : it->second;
  }
};

/// t(0, k) = v_k for k = 1..4, zero elsewhere. Rejects a dependent basis.
ShiftMap construct_t(const LayeredTile& A, const GroupSpec& H, const std::vector<Coords>& basis);
/// Uniformly random values on `support` random points of A (seeded).
ShiftMap random_shift_map(const LayeredTile& A, const GroupSpec& H, std::uint64_t support, std::uint64_t seed);

ElementSet build_Pt(const LayeredTile& A, const ElementSet& B, const ShiftMap& t);

struct LonelyInstance {
  std::uint32_t p = 0, q = 0;
  bool full_scale = false;
  GroupSpec G, H, E;
  std::vector<Coords> basis;
  LayeredTile A;
  SpectrumCertificate B;
  std::string b_origin;
  ShiftMap t;
  std::optional<ElementSet> Pt;  // absent above lonely_limits().materialize_pt

  [[nodiscard]] std::uint64_t pt_size() const { return A.size() * B.X.size(); }
  [[nodiscard]] std::uint64_t join(std::uint64_t g, std::uint64_t h) const { return g * H.size() + h; }
  [[nodiscard]] std::uint64_t g_of(std::uint64_t e) const { return e / H.size(); }
  [[nodiscard]] std::uint64_t h_of(std::uint64_t e) const { return e % H.size(); }
  [[nodiscard]] bool in_Pt(std::uint64_t e) const;
  /// Copy with another shift map (Pt rebuilt).
  [[nodiscard]] LonelyInstance with_shift(ShiftMap t2) const;
};

std::vector<Coords> standard_basis(std::uint32_t p);

/// p prime > 3, q prime, gcd(q, 6p) = 1; every invariant is checked.
LonelyInstance build_instance(std::uint32_t p, std::uint32_t q, const BSource& b_source,
                              std::optional<std::vector<Coords>> basis = std::nullopt);

// ---------------------------------------------------------------------------
// Transforms

enum class CaseClass { AllZero, AllFull, Mixed };
std::string to_string(CaseClass c);

/// Tag from the shape of gamma_1 alone: 0, a multiple c*pi(v) with c != 0, or other.
CaseClass classify(const Coords& gamma1);

/// pattern[k] = 1 iff gamma_1 annihilates layer k, i.e. lies in <pi_k(v)>.
std::vector<std::uint8_t> layer_pattern(const LayeredTile& A, const Coords& gamma1);

/// Distinct vectors c*pi(v), c = 1..5, pi in S_5, computed.
const std::vector<Coords>& mixed_class();

struct FtA {
  cyclo::CyclotomicNumber value;
  CaseClass tag = CaseClass::AllZero;
  std::vector<std::uint8_t> pattern;
};

/// 6^4 * sum over annihilated layers k of w_q^(gamma_2 k).
FtA ft_A(const LayeredTile& A, const Coords& gamma1, std::uint32_t gamma2);

/// Closed form 1_B^(rho) (1_A^(gamma) + sum_{a in supp t} gamma(a)(rho(t(a)) - 1)).
/// gamma indexes G, rho indexes H.
cyclo::CyclotomicNumber ft_Pt(const LonelyInstance& inst, std::uint64_t gamma, std::uint64_t rho);
/// Direct sum over Pt (needs the materialized set).
cyclo::CyclotomicNumber ft_Pt_direct(const LonelyInstance& inst, std::uint64_t gamma, std::uint64_t rho);

/// 1_B^ at every character of H, cached per instance by digest.
const std::vector<cyclo::CyclotomicNumber>& ft_B_table(const LonelyInstance& inst);

// ---------------------------------------------------------------------------
// Certificates

struct NonTileCertificate {
  bool fiber_check = false;
  std::uint64_t fibers_checked = 0;
  bool b_nontile = false;
  std::string b_nontile_reason;
  [[nodiscard]] bool valid() const { return fiber_check && b_nontile; }
};

/// Every nonempty G-fiber of Pt must equal t(a) + B for a in A; throws
/// FiberMismatch otherwise.
NonTileCertificate certify_non_tile(const LonelyInstance& inst);
NonTileCertificate certify_non_tile(const LonelyInstance& inst, const ElementSet& pt);

struct NonVanishingReport {
  SweepMode scope;
  std::string hypotheses = "rho != 0, 1_B^(rho) != 0, gamma_2 != 0";
  std::string zero_test;  // "direct+relative" or "relative"
  std::vector<std::pair<std::uint64_t, std::uint64_t>> counterexamples;  // (gamma in G, rho in H)
  std::array<std::uint64_t, 3> case_histogram{};  // indexed by CaseClass
  std::uint64_t evaluations = 0;     // exact evaluations performed
  std::uint64_t duals_covered = 0;   // duals represented by them
  std::uint64_t excluded = 0;        // sampled duals failing a hypothesis
  std::uint64_t pattern_classes = 0;
  std::uint64_t mixed_with_uniform_pattern = 0;  // gamma_1 values, not duals
  std::uint64_t cross_check_failures = 0;
  [[nodiscard]] bool passed() const { return counterexamples.empty() && cross_check_failures == 0; }
};

/// Exhaustive mode collapses gamma_1 to (layer pattern, pairings with the
/// G1-parts of supp t), on which the value depends; every class is evaluated
/// exactly for every gamma_2 != 0 and admissible rho.
NonVanishingReport verify_non_vanishing(const LonelyInstance& inst, const SweepMode& mode);

struct PdTilingResult {
  PdWitness witness;            // h = w_A (x) w_B on E
  std::uint64_t cosets_checked = 0;
  std::uint64_t coset_failures = 0;
  std::vector<std::uint64_t> failing_cosets;  // first few
  bool transform_nonnegative = false;  // from both factors
  [[nodiscard]] bool passed() const { return coset_failures == 0 && transform_nonnegative; }
};

struct FactorWitnesses {
  TilingCertificate A_tiling;
  PdWitness w_A;
  VerificationReport w_A_report;
  PdWitness w_B;
  VerificationReport w_B_report;
};

/// w_A from the tiling complement of A, w_B from the spectrum of B; both
/// verified exhaustively.
FactorWitnesses factor_witnesses(const LonelyInstance& inst);

/// Checks (1_Pt * h)(g, .) = 1_H on every coset g + H.
PdTilingResult certify_pd_tiling(const LonelyInstance& inst, const PdWitness& w_A, const PdWitness& w_B);

struct CountingCertificate {
  std::uint64_t p = 0, q = 0;
  std::string lhs, rhs, spectrum_size;  // exact decimal
  bool holds = false;
  bool full_scale = false;
};

CountingCertificate counting_certificate(std::uint64_t p, std::uint64_t q);

struct SpectrumAnalysis {
  std::uint64_t size = 0;
  std::uint64_t expected_size = 0;
  std::vector<std::uint64_t> V;  // rho-layers present
  std::vector<std::uint64_t> Y;  // isolated in the graph on V
  std::map<std::uint64_t, std::uint64_t> layer_counts;
  std::uint64_t edges = 0;
  std::string branch;  // "|V| <= 2p", "|Y| < 2p", "|Y| = 2p, |V| > 2p", "|Y| > 2p"
  std::vector<std::string> violations;  // structural bounds that fail
  std::optional<std::pair<std::uint64_t, std::uint64_t>> non_orthogonal_pair;  // indices in E
  std::optional<std::string> pair_value;
  std::vector<std::uint64_t> independent_set;  // size 2p + 1 when found
  bool counting_bound_applies = false;
  std::string refutation;  // empty if none was found
  [[nodiscard]] bool refuted() const { return !refutation.empty(); }
};

/// S is a set of characters of E. Locates an explicit non-orthogonal pair
/// where it can, and checks the structural bounds on the layer graph.
SpectrumAnalysis analyze_spectrum_candidate(const LonelyInstance& inst, const ElementSet& S,
                                            std::uint64_t pair_budget = 2'000'000);

// ---------------------------------------------------------------------------
// Output

/// Dependencies taken from prior work and not re-derived here.
const std::vector<std::string>& trusted_citations();

std::string instance_json(const LonelyInstance& inst, const std::map<std::string, std::string>& files);
std::string non_tile_json(const LonelyInstance& inst, const NonTileCertificate& c);
std::string non_vanishing_json(const LonelyInstance& inst, const NonVanishingReport& r);
std::string pd_tiling_json(const LonelyInstance& inst, const PdTilingResult& r, const FactorWitnesses& f);
std::string counting_json(const CountingCertificate& c);
std::string spectrum_analysis_json(const LonelyInstance& inst, const SpectrumAnalysis& a);

}  // namespace weaktile::lonely
