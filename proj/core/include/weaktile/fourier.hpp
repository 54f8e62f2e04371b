#pragma once

// Exact Fourier analysis of rational-weighted functions on finite abelian
// groups, with the convention f^(chi) = sum_x f(x) chi(x).

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "weaktile/cyclo.hpp"
#include "weaktile/group.hpp"
#include "weaktile/rational.hpp"

namespace weaktile {

struct FourierLimits {
  /// Upper bound on |supp f| * |supp g| for a convolution.
  std::uint64_t convolution_cap = 500'000'000;
  /// Upper bound on the dual size for exhaustive sweeps.
  std::uint64_t exhaustive_dual_cap = 10'000'000;
};

FourierLimits& fourier_limits();

/// Finitely supported function E -> Q, stored as a sorted sparse list.
class GroupFunction {
 public:
  using Entry = std::pair<std::uint64_t, Rational>;

  GroupFunction() = default;
  explicit GroupFunction(GroupSpec spec) : spec_(std::move(spec)) {}
  /// Sorts, merges duplicate keys and drops zero weights.
  GroupFunction(GroupSpec spec, std::vector<Entry> weights);

  static GroupFunction indicator(const ElementSet& set);
  static GroupFunction delta(const GroupSpec& spec, std::uint64_t x, const Rational& w = Rational(1));

  [[nodiscard]] const GroupSpec& spec() const { return spec_; }
  [[nodiscard]] const std::vector<Entry>& weights() const { return weights_; }
  [[nodiscard]] std::size_t support_size() const { return weights_.size(); }
  [[nodiscard]] Rational at(std::uint64_t x) const;
  [[nodiscard]] Rational total() const;

  [[nodiscard]] bool is_indicator() const;
  [[nodiscard]] bool is_nonnegative() const;
  [[nodiscard]] bool is_even() const;

  [[nodiscard]] GroupFunction scaled(const Rational& s) const;
  [[nodiscard]] GroupFunction translated(std::uint64_t by) const;
  /// x -> f(-x).
  [[nodiscard]] GroupFunction reflected() const;

  friend GroupFunction operator+(const GroupFunction& a, const GroupFunction& b);
  friend GroupFunction operator-(const GroupFunction& a, const GroupFunction& b);
  friend bool operator==(const GroupFunction&, const GroupFunction&) = default;

  /// Stable 64-bit FNV-1a digest of the group and weights.
  [[nodiscard]] std::uint64_t digest() const;

 private:
  GroupSpec spec_;
  std::vector<Entry> weights_;
};

enum class SweepKind { Exhaustive, Sampled };

struct SweepMode {
  SweepKind kind = SweepKind::Exhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static SweepMode exhaustive() { return {}; }
  static SweepMode sampled(std::uint64_t n, std::uint64_t seed = 0) { return {SweepKind::Sampled, n, seed}; }
  /// "exhaustive" or "sampled:<n>".
  [[nodiscard]] std::string str() const;
  static SweepMode parse(const std::string& text, std::uint64_t seed = 0);
};

cyclo::CyclotomicNumber dft(const GroupFunction& f, std::uint64_t chi);
cyclo::CyclotomicNumber dft(const GroupFunction& f, const Character& chi);
/// Transform at every character, in index order.
std::vector<cyclo::CyclotomicNumber> full_transform(const GroupFunction& f);
/// f(x) = |E|^-1 sum_chi f^(chi) conj(chi(x)); throws if the result is not rational.
GroupFunction inverse_transform(const GroupSpec& spec, const std::vector<cyclo::CyclotomicNumber>& values);

/// (f * g)(x) = sum_y f(y) g(x - y).
GroupFunction convolve(const GroupFunction& f, const GroupFunction& g);
/// Single value of f * g.
Rational convolve_at(const GroupFunction& f, const GroupFunction& g, std::uint64_t x);

/// (u (x) v)(g, h) = u(g) v(h) on the product group.
GroupFunction tensor(const GroupFunction& u, const GroupFunction& v);

struct ZeroSet {
  std::uint64_t function_digest = 0;
  std::vector<std::uint64_t> zeros;  // character indices, sorted
  bool complete = false;
  std::uint64_t checked = 0;
};

ZeroSet zero_set(const GroupFunction& f, const SweepMode& mode);

struct PositiveDefiniteReport {
  bool even = false;
  bool positive_definite = false;
  std::uint64_t checked = 0;
  std::vector<std::uint64_t> violations;  // characters with negative transform
};

/// Evenness first (real transform), then the exact sign of every f^(chi).
PositiveDefiniteReport is_positive_definite(const GroupFunction& f);

/// sum_chi |f^(chi)|^2 == |E| sum_x f(x)^2, exactly.
bool parseval_check(const GroupFunction& f);

}  // namespace weaktile
