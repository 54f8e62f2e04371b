#pragma once

// Exact arithmetic in cyclotomic fields Q(w_N), w_N = exp(2*pi*i/N).
//
// Q(w_N) is stored as the tensor product of the prime-power subfields
// Q(w_{p^k}) for p^k || N, each with its power basis {w_{p^k}^e : e < phi(p^k)}.
// Every value is kept in canonical form: reduced coordinates, no zero
// coefficients, and the smallest modulus whose field contains the value.
// Two numbers are equal iff their (modulus, coordinates) are identical.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "weaktile/rational.hpp"

namespace weaktile::cyclo {

class CapacityExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotReal : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when interval refinement cannot separate a value from zero within
/// the configured number of precision doublings.
class Indeterminate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Limits {
  std::uint64_t max_modulus = 1'000'000;
  int max_sign_refinements = 8;  // 64 * 2^8 bits at the last attempt
};

/// Process-wide limits. Set once at startup; read concurrently afterwards.
Limits& limits();

struct PrimePower {
  std::uint32_t prime = 0;
  std::uint32_t power = 0;
  std::uint32_t order = 0;  // prime^power
  std::uint32_t phi = 0;    // (prime - 1) * prime^(power - 1)
  std::uint32_t block = 0;  // prime^(power - 1)
};

/// Immutable description of Q(w_N). Obtained through Field::get, which caches
/// one instance per modulus for the lifetime of the process.
class Field {
 public:
  static const Field& get(std::uint64_t modulus);

  [[nodiscard]] std::uint64_t modulus() const { return modulus_; }
  [[nodiscard]] const std::vector<PrimePower>& factors() const { return factors_; }
  /// Degree over Q, phi(N); also the number of canonical basis elements.
  [[nodiscard]] std::uint64_t degree() const { return degree_; }

  /// Per-factor exponents of w_N^j: w_N^j = prod_i w_{n_i}^{e_i}.
  void split_exponent(std::uint64_t j, std::vector<std::uint32_t>& exps) const;
  /// Inverse of split_exponent: sum_i e_i * N / n_i mod N.
  [[nodiscard]] std::uint64_t join_exponent(const std::vector<std::uint32_t>& exps) const;

  [[nodiscard]] std::uint64_t pack_canonical(const std::vector<std::uint32_t>& exps) const;
  void unpack_canonical(std::uint64_t index, std::vector<std::uint32_t>& exps) const;
  [[nodiscard]] std::uint64_t pack_raw(const std::vector<std::uint32_t>& exps) const;
  void unpack_raw(std::uint64_t index, std::vector<std::uint32_t>& exps) const;

 private:
  explicit Field(std::uint64_t modulus);

  std::uint64_t modulus_;
  std::uint64_t degree_ = 1;
  std::vector<PrimePower> factors_;
  std::vector<std::uint64_t> canon_stride_;
  std::vector<std::uint64_t> raw_stride_;
  std::vector<std::uint64_t> cofactor_;   // N / n_i
  std::vector<std::uint32_t> crt_mult_;   // (N / n_i)^{-1} mod n_i
};

enum class Sign { Negative, Zero, Positive };

std::string to_string(Sign s);

struct Term {
  std::uint64_t index;  // canonical packed multi-index within the field
  Rational coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

class CyclotomicNumber {
 public:
  /// Zero.
  CyclotomicNumber();
  CyclotomicNumber(const Rational& r);  // NOLINT(implicit)
  CyclotomicNumber(std::int64_t r) : CyclotomicNumber(Rational(r)) {}  // NOLINT(implicit)

  /// w_N^j with j reduced mod N.
  static CyclotomicNumber root_of_unity(std::int64_t j, std::uint64_t modulus);

  [[nodiscard]] std::uint64_t modulus() const { return field_->modulus(); }
  [[nodiscard]] const Field& field() const { return *field_; }
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_rational() const { return field_->modulus() == 1; }
  /// Throws std::domain_error unless is_rational().
  [[nodiscard]] Rational as_rational() const;

  CyclotomicNumber operator-() const;
  CyclotomicNumber& operator+=(const CyclotomicNumber& o);
  CyclotomicNumber& operator-=(const CyclotomicNumber& o);
  CyclotomicNumber& operator*=(const CyclotomicNumber& o);
  friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
  friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
  friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);

  [[nodiscard]] CyclotomicNumber scaled(const Rational& s) const;
  /// Complex conjugation, w_N^j -> w_N^{-j}.
  [[nodiscard]] CyclotomicNumber conj() const;
  [[nodiscard]] bool is_real() const { return *this == conj(); }

  /// Coordinates of this value in the tensor basis of Q(w_M), M a multiple
  /// of modulus(). Returned terms are canonical for Field::get(M).
  [[nodiscard]] std::vector<Term> coordinates_in(std::uint64_t target_modulus) const;

  /// Floating-point value, for cross-checks only.
  [[nodiscard]] std::complex<double> approx() const;
  /// Exact sign of a real value: symbolic zero test, then interval evaluation
  /// with doubling precision. Throws NotReal, Indeterminate.
  [[nodiscard]] Sign sign_of_real() const;
  /// Tr_{Q(w_N)/Q}(x) / [Q(w_N):Q]; independent of the ambient N.
  [[nodiscard]] Rational galois_average() const;

  /// "cyclo:<N>:{j=c,...}", keys are w_N exponents of the basis elements.
  [[nodiscard]] std::string str() const;
  static CyclotomicNumber parse(std::string_view text);

 private:
  friend class Accumulator;
  CyclotomicNumber(const Field* f, std::vector<Term> terms);
  void minimize_modulus();

  const Field* field_;
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const CyclotomicNumber& x);

/// Collects c * w_N^j monomials (and whole numbers of Q(w_M), M | N) and
/// reduces them to canonical form in one pass.
class Accumulator {
 public:
  explicit Accumulator(std::uint64_t modulus);

  void add_root(const Rational& c, std::uint64_t j);
  void add_root(std::int64_t c, std::uint64_t j);
  /// Adds scale * x; x.modulus() must divide the accumulator modulus.
  void add(const CyclotomicNumber& x, const Rational& scale = Rational(1));
  /// Adds c * prod_i w_{n_i}^{e_i}, per-factor exponents already reduced mod n_i.
  void add_raw(const Rational& c, const std::vector<std::uint32_t>& exps);

  [[nodiscard]] std::uint64_t modulus() const { return field_->modulus(); }
  /// Canonical value of the sum; the accumulator is reset afterwards.
  CyclotomicNumber finish();

 private:
  void reduce_sparse();

  const Field* field_;
  bool dense_;
  std::vector<Rational> dense_coeffs_;
  std::vector<std::pair<std::uint64_t, Rational>> sparse_;  // raw index, coeff
  std::vector<std::uint32_t> scratch_;
};

std::uint64_t lcm_checked(std::uint64_t a, std::uint64_t b);

enum class Verdict { AllEqual, NotAllEqual };

struct VanishingSumWitness {
  std::uint64_t q = 0;
  std::uint64_t base_modulus = 0;
  std::vector<CyclotomicNumber> betas;
  Verdict verdict = Verdict::NotAllEqual;
  CyclotomicNumber sum;  // sum_j betas[j] * w_q^j, evaluated exactly
};

class NotCoprime : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class WrongLength : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// For q prime and gcd(m, q) = 1: sum_j beta_j w_q^j = 0 with beta_j in
/// Q(w_m) iff all beta_j coincide. Computes both sides and throws
/// std::logic_error if they disagree. With evaluate_sum = false only the
/// coefficient test runs (sum stays zero); use it when Q(w_mq) is too big.
VanishingSumWitness relative_vanishing_test(std::uint64_t q, std::uint64_t m,
                                            const std::vector<CyclotomicNumber>& betas,
                                            bool evaluate_sum = true);

bool is_prime(std::uint64_t n);

}  // namespace weaktile::cyclo
