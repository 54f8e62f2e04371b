#include "weaktile/cyclo.hpp"

#include <mpfr.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace weaktile::cyclo {

namespace {

constexpr std::uint64_t kDenseLimit = 1u << 16;

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t n) {
  if (n == 1) return 0;
  std::int64_t t = 0, new_t = 1;
  auto r = static_cast<std::int64_t>(n), new_r = static_cast<std::int64_t>(a % n);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_tuple(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_tuple(new_r, r - q * new_r);
  }
  if (r != 1) throw std::logic_error("mod_inverse: not invertible");
  if (t < 0) t += static_cast<std::int64_t>(n);
  return static_cast<std::uint64_t>(t);
}

const Field& zero_field() { return Field::get(1); }

void sort_and_merge(std::vector<std::pair<std::uint64_t, Rational>>& v) {
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    std::uint64_t key = v[i].first;
    Rational acc = v[i].second;
    std::size_t j = i + 1;
    for (; j < v.size() && v[j].first == key; ++j) acc += v[j].second;
    if (!acc.is_zero()) v[out++] = {key, acc};
    i = j;
  }
  v.resize(out);
}

struct Mpfr {
  mpfr_t v;
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

}  // namespace

Limits& limits() {
  static Limits l;
  return l;
}

std::string to_string(Sign s) {
  switch (s) {
    case Sign::Negative: return "negative";
    case Sign::Zero: return "zero";
    case Sign::Positive: return "positive";
  }
  return "?";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t lcm_checked(std::uint64_t a, std::uint64_t b) {
  std::uint64_t g = std::gcd(a, b);
  std::uint64_t l = 0;
  if (__builtin_mul_overflow(a / g, b, &l) || l > limits().max_modulus) {
    throw CapacityExceeded("cyclotomic modulus lcm(" + std::to_string(a) + ", " +
                           std::to_string(b) + ") exceeds the configured bound");
  }
  return l;
}

// ---------------------------------------------------------------------------
// Field

Field::Field(std::uint64_t modulus) : modulus_(modulus) {
  std::uint64_t n = modulus;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    PrimePower f;
    f.prime = static_cast<std::uint32_t>(p);
    f.order = 1;
    while (n % p == 0) {
      n /= p;
      ++f.power;
      f.order *= static_cast<std::uint32_t>(p);
    }
    factors_.push_back(f);
  }
  if (n > 1) factors_.push_back({static_cast<std::uint32_t>(n), 1, static_cast<std::uint32_t>(n), 0, 0});
  for (auto& f : factors_) {
    f.block = f.order / f.prime;
    f.phi = (f.prime - 1) * f.block;
    degree_ *= f.phi;
  }
  const std::size_t r = factors_.size();
  canon_stride_.assign(r, 1);
  raw_stride_.assign(r, 1);
  for (std::size_t i = r; i-- > 1;) {
    canon_stride_[i - 1] = canon_stride_[i] * factors_[i].phi;
    raw_stride_[i - 1] = raw_stride_[i] * factors_[i].order;
  }
  for (const auto& f : factors_) {
    cofactor_.push_back(modulus / f.order);
    crt_mult_.push_back(static_cast<std::uint32_t>(mod_inverse(modulus / f.order % f.order, f.order)));
  }
}

const Field& Field::get(std::uint64_t modulus) {
  if (modulus == 0) throw std::invalid_argument("cyclotomic modulus must be positive");
  thread_local std::uint64_t last_modulus = 0;
  thread_local const Field* last_field = nullptr;
  if (modulus == last_modulus) return *last_field;
  if (modulus > limits().max_modulus) {
    throw CapacityExceeded("cyclotomic modulus " + std::to_string(modulus) +
                           " exceeds the configured bound");
  }
  static std::mutex mu;
  static std::unordered_map<std::uint64_t, std::unique_ptr<Field>> registry;
  std::lock_guard lock(mu);
  auto& slot = registry[modulus];
  if (!slot) slot.reset(new Field(modulus));
  last_modulus = modulus;
  last_field = slot.get();
  return *slot;
}

void Field::split_exponent(std::uint64_t j, std::vector<std::uint32_t>& exps) const {
  exps.resize(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::uint64_t n = factors_[i].order;
    exps[i] = static_cast<std::uint32_t>((j % n) * crt_mult_[i] % n);
  }
}

std::uint64_t Field::join_exponent(const std::vector<std::uint32_t>& exps) const {
  std::uint64_t j = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    j = (j + static_cast<std::uint64_t>(exps[i]) * cofactor_[i]) % modulus_;
  }
  return j;
}

std::uint64_t Field::pack_canonical(const std::vector<std::uint32_t>& exps) const {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) idx += exps[i] * canon_stride_[i];
  return idx;
}

void Field::unpack_canonical(std::uint64_t index, std::vector<std::uint32_t>& exps) const {
  exps.resize(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    exps[i] = static_cast<std::uint32_t>(index / canon_stride_[i]);
    index %= canon_stride_[i];
  }
}

std::uint64_t Field::pack_raw(const std::vector<std::uint32_t>& exps) const {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) idx += exps[i] * raw_stride_[i];
  return idx;
}

void Field::unpack_raw(std::uint64_t index, std::vector<std::uint32_t>& exps) const {
  exps.resize(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    exps[i] = static_cast<std::uint32_t>(index / raw_stride_[i]);
    index %= raw_stride_[i];
  }
}

// ---------------------------------------------------------------------------
// Accumulator

Accumulator::Accumulator(std::uint64_t modulus)
    : field_(&Field::get(modulus)), dense_(modulus <= kDenseLimit) {
  if (dense_) dense_coeffs_.assign(modulus, Rational(0));
}

void Accumulator::add_raw(const Rational& c, const std::vector<std::uint32_t>& exps) {
  if (c.is_zero()) return;
  std::uint64_t idx = field_->pack_raw(exps);
  if (dense_) {
    dense_coeffs_[idx] += c;
  } else {
    sparse_.emplace_back(idx, c);
  }
}

void Accumulator::add_root(const Rational& c, std::uint64_t j) {
  field_->split_exponent(j % field_->modulus(), scratch_);
  add_raw(c, scratch_);
}

void Accumulator::add_root(std::int64_t c, std::uint64_t j) { add_root(Rational(c), j); }

void Accumulator::add(const CyclotomicNumber& x, const Rational& scale) {
  if (x.is_zero() || scale.is_zero()) return;
  if (field_->modulus() % x.modulus() != 0) {
    throw std::invalid_argument("accumulator modulus is not a multiple of the operand modulus");
  }
  for (const Term& t : x.coordinates_in(field_->modulus())) {
    field_->unpack_canonical(t.index, scratch_);
    add_raw(t.coeff * scale, scratch_);
  }
}

void Accumulator::reduce_sparse() {
  const auto& fs = field_->factors();
  std::vector<std::uint32_t> exps;
  sort_and_merge(sparse_);
  for (std::size_t axis = 0; axis < fs.size(); ++axis) {
    const PrimePower& f = fs[axis];
    std::vector<std::pair<std::uint64_t, Rational>> extra;
    bool touched = false;
    for (auto& [idx, c] : sparse_) {
      field_->unpack_raw(idx, exps);
      if (exps[axis] < f.phi) continue;
      touched = true;
      std::uint32_t r = exps[axis] - f.phi;
      for (std::uint32_t t = 0; t + 1 < f.prime; ++t) {
        exps[axis] = t * f.block + r;
        extra.emplace_back(field_->pack_raw(exps), -c);
      }
      c = Rational(0);
    }
    if (touched) {
      sparse_.insert(sparse_.end(), extra.begin(), extra.end());
      sort_and_merge(sparse_);
    }
  }
}

CyclotomicNumber Accumulator::finish() {
  const Field& f = *field_;
  const auto& fs = f.factors();
  std::vector<Term> terms;
  std::vector<std::uint32_t> exps;
  if (dense_) {
    const std::uint64_t n_total = f.modulus();
    std::uint64_t stride = 1;
    for (std::size_t axis = fs.size(); axis-- > 0;) {
      const PrimePower& pp = fs[axis];
      const std::uint64_t span = stride * pp.order;
      for (std::uint64_t outer = 0; outer < n_total; outer += span) {
        for (std::uint32_t e = pp.phi; e < pp.order; ++e) {
          const std::uint32_t r = e - pp.phi;
          for (std::uint64_t inner = 0; inner < stride; ++inner) {
            Rational& c = dense_coeffs_[outer + e * stride + inner];
            if (c.is_zero()) continue;
            for (std::uint32_t t = 0; t + 1 < pp.prime; ++t) {
              dense_coeffs_[outer + (t * pp.block + r) * stride + inner] -= c;
            }
            c = Rational(0);
          }
        }
      }
      stride = span;
    }
    // raw order and canonical order agree once every exponent is < phi
    for (std::uint64_t idx = 0; idx < n_total; ++idx) {
      Rational& c = dense_coeffs_[idx];
      if (c.is_zero()) continue;
      f.unpack_raw(idx, exps);
      terms.push_back({f.pack_canonical(exps), c});
      c = Rational(0);
    }
  } else {
    reduce_sparse();
    terms.reserve(sparse_.size());
    for (const auto& [idx, c] : sparse_) {
      f.unpack_raw(idx, exps);
      terms.push_back({f.pack_canonical(exps), c});
    }
    sparse_.clear();
  }
  CyclotomicNumber out(field_, std::move(terms));
  out.minimize_modulus();
  return out;
}

// ---------------------------------------------------------------------------
// CyclotomicNumber

CyclotomicNumber::CyclotomicNumber() : field_(&zero_field()) {}

CyclotomicNumber::CyclotomicNumber(const Rational& r) : field_(&zero_field()) {
  if (!r.is_zero()) terms_.push_back({0, r});
}

CyclotomicNumber::CyclotomicNumber(const Field* f, std::vector<Term> terms)
    : field_(f), terms_(std::move(terms)) {}

CyclotomicNumber CyclotomicNumber::root_of_unity(std::int64_t j, std::uint64_t modulus) {
  if (modulus == 0) throw std::invalid_argument("root_of_unity: modulus must be >= 1");
  auto n = static_cast<std::int64_t>(modulus);
  std::int64_t r = ((j % n) + n) % n;
  Accumulator acc(modulus);
  acc.add_root(Rational(1), static_cast<std::uint64_t>(r));
  return acc.finish();
}

Rational CyclotomicNumber::as_rational() const {
  if (!is_rational()) throw std::domain_error("cyclotomic value is not rational: " + str());
  return terms_.empty() ? Rational(0) : terms_.front().coeff;
}

void CyclotomicNumber::minimize_modulus() {
  if (terms_.empty()) {
    field_ = &zero_field();
    return;
  }
  std::vector<std::uint32_t> exps;
  while (field_->modulus() > 1) {
    const auto& fs = field_->factors();
    const std::size_t r = fs.size();
    std::vector<bool> all_zero(r, true), all_div(r, true);
    for (const Term& t : terms_) {
      field_->unpack_canonical(t.index, exps);
      for (std::size_t i = 0; i < r; ++i) {
        if (exps[i] != 0) all_zero[i] = false;
        if (exps[i] % fs[i].prime != 0) all_div[i] = false;
      }
    }
    std::size_t axis = r;
    bool drop = false;
    for (std::size_t i = 0; i < r; ++i) {
      if (all_zero[i] && fs[i].power == 1) {
        axis = i;
        drop = true;
        break;
      }
      if (all_div[i] && fs[i].power >= 2) {
        axis = i;
        break;
      }
    }
    if (axis == r) return;
    const Field& smaller = Field::get(field_->modulus() / fs[axis].prime);
    for (Term& t : terms_) {
      field_->unpack_canonical(t.index, exps);
      if (drop) {
        exps.erase(exps.begin() + static_cast<std::ptrdiff_t>(axis));
      } else {
        exps[axis] /= fs[axis].prime;
      }
      t.index = smaller.pack_canonical(exps);
    }
    field_ = &smaller;
  }
}

std::vector<Term> CyclotomicNumber::coordinates_in(std::uint64_t target_modulus) const {
  if (target_modulus % modulus() != 0) {
    throw std::invalid_argument("coordinates_in: target modulus is not a multiple");
  }
  if (target_modulus == modulus()) return terms_;
  const Field& target = Field::get(target_modulus);
  const auto& src_f = field_->factors();
  const auto& dst_f = target.factors();
  // for each target axis: source axis (or none) and exponent multiplier
  std::vector<int> src_axis(dst_f.size(), -1);
  std::vector<std::uint32_t> mult(dst_f.size(), 1);
  for (std::size_t i = 0; i < dst_f.size(); ++i) {
    for (std::size_t k = 0; k < src_f.size(); ++k) {
      if (src_f[k].prime == dst_f[i].prime) {
        src_axis[i] = static_cast<int>(k);
        mult[i] = dst_f[i].order / src_f[k].order;
      }
    }
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  std::vector<std::uint32_t> se, de(dst_f.size());
  for (const Term& t : terms_) {
    field_->unpack_canonical(t.index, se);
    for (std::size_t i = 0; i < dst_f.size(); ++i) {
      de[i] = src_axis[i] < 0 ? 0 : se[static_cast<std::size_t>(src_axis[i])] * mult[i];
    }
    out.push_back({target.pack_canonical(de), t.coeff});
  }
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
  return out;
}

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber r = *this;
  for (Term& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  std::uint64_t m = field_ == o.field_ ? modulus() : lcm_checked(modulus(), o.modulus());
  std::vector<Term> a = coordinates_in(m);
  std::vector<Term> b = o.coordinates_in(m);
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].index < b[j].index)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].index < a[i].index) {
      out.push_back(b[j++]);
    } else {
      Rational c = a[i].coeff + b[j].coeff;
      if (!c.is_zero()) out.push_back({a[i].index, c});
      ++i;
      ++j;
    }
  }
  field_ = &Field::get(m);
  terms_ = std::move(out);
  minimize_modulus();
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& o) { return *this += -o; }

CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_rational()) return b.scaled(a.terms_.front().coeff);
  if (b.is_rational()) return a.scaled(b.terms_.front().coeff);
  std::uint64_t m = lcm_checked(a.modulus(), b.modulus());
  const Field& f = Field::get(m);
  const auto& fs = f.factors();
  auto unpack_all = [&](const CyclotomicNumber& x) {
    std::vector<std::pair<std::vector<std::uint32_t>, Rational>> v;
    for (const Term& t : x.coordinates_in(m)) {
      std::vector<std::uint32_t> e;
      f.unpack_canonical(t.index, e);
      v.emplace_back(std::move(e), t.coeff);
    }
    return v;
  };
  auto ua = unpack_all(a);
  auto ub = unpack_all(b);
  Accumulator acc(m);
  std::vector<std::uint32_t> e(fs.size());
  for (const auto& [ea, ca] : ua) {
    for (const auto& [eb, cb] : ub) {
      for (std::size_t i = 0; i < fs.size(); ++i) e[i] = (ea[i] + eb[i]) % fs[i].order;
      acc.add_raw(ca * cb, e);
    }
  }
  return acc.finish();
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& o) {
  return *this = *this * o;
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  return a.field_ == b.field_ && a.terms_ == b.terms_;
}

CyclotomicNumber CyclotomicNumber::scaled(const Rational& s) const {
  if (s.is_zero()) return {};
  CyclotomicNumber r = *this;
  for (Term& t : r.terms_) t.coeff *= s;
  return r;
}

CyclotomicNumber CyclotomicNumber::conj() const {
  if (is_rational()) return *this;
  const auto& fs = field_->factors();
  Accumulator acc(modulus());
  std::vector<std::uint32_t> e;
  for (const Term& t : terms_) {
    field_->unpack_canonical(t.index, e);
    for (std::size_t i = 0; i < fs.size(); ++i) e[i] = (fs[i].order - e[i]) % fs[i].order;
    acc.add_raw(t.coeff, e);
  }
  return acc.finish();
}

std::complex<double> CyclotomicNumber::approx() const {
  std::complex<double> z{0.0, 0.0};
  std::vector<std::uint32_t> e;
  const double n = static_cast<double>(modulus());
  for (const Term& t : terms_) {
    field_->unpack_canonical(t.index, e);
    double j = static_cast<double>(field_->join_exponent(e));
    z += t.coeff.to_double() * std::polar(1.0, 2.0 * std::numbers::pi * j / n);
  }
  return z;
}

Sign CyclotomicNumber::sign_of_real() const {
  if (is_zero()) return Sign::Zero;
  if (is_rational()) return terms_.front().coeff.sign() > 0 ? Sign::Positive : Sign::Negative;
  if (!is_real()) throw NotReal("sign_of_real: value is not real: " + str());

  std::vector<std::uint64_t> exps_j;
  std::vector<std::uint32_t> e;
  double abs_sum = 0.0;
  for (const Term& t : terms_) {
    field_->unpack_canonical(t.index, e);
    exps_j.push_back(field_->join_exponent(e));
    abs_sum += std::fabs(t.coeff.to_double());
  }
  abs_sum *= 1.001;
  const double n_terms = static_cast<double>(terms_.size());

  mpfr_prec_t prec = 64;
  for (int attempt = 0; attempt <= limits().max_sign_refinements; ++attempt, prec *= 2) {
    Mpfr sum(prec), term(prec), two_pi(prec);
    mpfr_set_zero(sum.v, 1);
    mpfr_const_pi(two_pi.v, MPFR_RNDN);
    mpfr_mul_ui(two_pi.v, two_pi.v, 2, MPFR_RNDN);
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      mpfr_mul_ui(term.v, two_pi.v, exps_j[k], MPFR_RNDN);
      mpfr_div_ui(term.v, term.v, modulus(), MPFR_RNDN);
      mpfr_cos(term.v, term.v, MPFR_RNDN);
      mpfr_mul_si(term.v, term.v, terms_[k].coeff.num(), MPFR_RNDN);
      mpfr_div_si(term.v, term.v, terms_[k].coeff.den(), MPFR_RNDN);
      mpfr_add(sum.v, sum.v, term.v, MPFR_RNDN);
    }
    // each term is off by at most |c| * 2^(7 - prec); summation adds
    // n_terms * sum|c| * 2^-prec
    Mpfr bound(prec);
    mpfr_set_d(bound.v, abs_sum * (128.0 + n_terms), MPFR_RNDU);
    mpfr_mul_2si(bound.v, bound.v, -static_cast<long>(prec), MPFR_RNDU);
    if (mpfr_cmpabs(sum.v, bound.v) > 0) {
      return mpfr_sgn(sum.v) > 0 ? Sign::Positive : Sign::Negative;
    }
  }
  throw Indeterminate("sign_of_real: refinement cap reached for " + str());
}

Rational CyclotomicNumber::galois_average() const {
  Rational total(0);
  const auto& fs = field_->factors();
  std::vector<std::uint32_t> e;
  for (const Term& t : terms_) {
    field_->unpack_canonical(t.index, e);
    Rational v = t.coeff;
    for (std::size_t i = 0; i < fs.size() && !v.is_zero(); ++i) {
      if (e[i] == 0) continue;
      if (e[i] % fs[i].block == 0) {
        v *= Rational(-1, fs[i].prime - 1);
      } else {
        v = Rational(0);
      }
    }
    total += v;
  }
  return total;
}

std::string CyclotomicNumber::str() const {
  std::ostringstream os;
  os << "cyclo:" << modulus() << ":{";
  std::vector<std::uint32_t> e;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    field_->unpack_canonical(terms_[k].index, e);
    if (k) os << ',';
    os << field_->join_exponent(e) << '=' << terms_[k].coeff.str();
  }
  os << '}';
  return os.str();
}

CyclotomicNumber CyclotomicNumber::parse(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("malformed cyclotomic literal: '" + std::string(text) + "'");
  };
  constexpr std::string_view prefix = "cyclo:";
  if (text.substr(0, prefix.size()) != prefix) fail();
  std::string_view rest = text.substr(prefix.size());
  auto colon = rest.find(':');
  if (colon == std::string_view::npos) fail();
  std::uint64_t n = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + colon, n);
  if (ec != std::errc{} || ptr != rest.data() + colon || n == 0) fail();
  rest = rest.substr(colon + 1);
  if (rest.size() < 2 || rest.front() != '{' || rest.back() != '}') fail();
  rest = rest.substr(1, rest.size() - 2);
  Accumulator acc(n);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    auto eq = item.find('=');
    if (eq == std::string_view::npos) fail();
    std::uint64_t j = 0;
    auto [p2, ec2] = std::from_chars(item.data(), item.data() + eq, j);
    if (ec2 != std::errc{} || p2 != item.data() + eq) fail();
    acc.add_root(Rational::parse(item.substr(eq + 1)), j);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return acc.finish();
}

std::ostream& operator<<(std::ostream& os, const CyclotomicNumber& x) { return os << x.str(); }

// ---------------------------------------------------------------------------

VanishingSumWitness relative_vanishing_test(std::uint64_t q, std::uint64_t m,
                                            const std::vector<CyclotomicNumber>& betas, bool evaluate_sum) {
  if (!is_prime(q)) throw std::invalid_argument("relative_vanishing_test: q must be prime");
  if (m == 0) throw std::invalid_argument("relative_vanishing_test: m must be positive");
  if (std::gcd(m, q) != 1) throw NotCoprime("relative_vanishing_test: gcd(m, q) != 1");
  if (betas.size() != q) throw WrongLength("relative_vanishing_test: need exactly q coefficients");
  for (const auto& b : betas) {
    if (m % b.modulus() != 0) {
      throw std::invalid_argument("relative_vanishing_test: coefficient outside Q(w_m): " + b.str());
    }
  }
  VanishingSumWitness w;
  w.q = q;
  w.base_modulus = m;
  w.betas = betas;
  bool all_equal = std::all_of(betas.begin(), betas.end(),
                               [&](const CyclotomicNumber& b) { return b == betas.front(); });
  w.verdict = all_equal ? Verdict::AllEqual : Verdict::NotAllEqual;
  if (!evaluate_sum) return w;
  const std::uint64_t mq = lcm_checked(m, q);
  Accumulator acc(mq);
  for (std::uint64_t j = 0; j < q; ++j) {
    CyclotomicNumber term = betas[j] * CyclotomicNumber::root_of_unity(static_cast<std::int64_t>(j), q);
    acc.add(term);
  }
  w.sum = acc.finish();
  if (w.sum.is_zero() != all_equal) {
    throw std::logic_error("relative_vanishing_test: exact sum disagrees with the coefficient test");
  }
  return w;
}

}  // namespace weaktile::cyclo
