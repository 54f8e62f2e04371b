#include "weaktile/fourier.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

namespace weaktile {

using cyclo::CyclotomicNumber;

FourierLimits& fourier_limits() {
  static FourierLimits l;
  return l;
}

namespace {

void normalize(std::vector<GroupFunction::Entry>& w) {
  std::sort(w.begin(), w.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < w.size();) {
    Rational acc = w[i].second;
    std::size_t j = i + 1;
    for (; j < w.size() && w[j].first == w[i].first; ++j) acc += w[j].second;
    if (!acc.is_zero()) w[out++] = {w[i].first, acc};
    i = j;
  }
  w.resize(out);
}

void require_same_group(const GroupSpec& a, const GroupSpec& b) {
  if (!(a == b)) throw ShapeMismatch("functions live on different groups: " + a.str() + " vs " + b.str());
}

}  // namespace

GroupFunction::GroupFunction(GroupSpec spec, std::vector<Entry> weights)
    : spec_(std::move(spec)), weights_(std::move(weights)) {
  for (const auto& [x, w] : weights_) {
    if (x >= spec_.size()) throw std::invalid_argument("function support outside its group");
  }
  normalize(weights_);
}

GroupFunction GroupFunction::indicator(const ElementSet& set) {
  std::vector<Entry> w;
  w.reserve(set.size());
  for (auto x : set) w.emplace_back(x, Rational(1));
  GroupFunction f(set.spec());
  f.weights_ = std::move(w);
  return f;
}

GroupFunction GroupFunction::delta(const GroupSpec& spec, std::uint64_t x, const Rational& w) {
  return GroupFunction(spec, {{x, w}});
}

Rational GroupFunction::at(std::uint64_t x) const {
  auto it = std::lower_bound(weights_.begin(), weights_.end(), x,
                             [](const Entry& e, std::uint64_t k) { return e.first < k; });
  if (it == weights_.end() || it->first != x) return Rational(0);
  return it->second;
}

Rational GroupFunction::total() const {
  Rational s(0);
  for (const auto& [x, w] : weights_) s += w;
  return s;
}

bool GroupFunction::is_indicator() const {
  return std::all_of(weights_.begin(), weights_.end(), [](const Entry& e) { return e.second == Rational(1); });
}

bool GroupFunction::is_nonnegative() const {
  return std::all_of(weights_.begin(), weights_.end(), [](const Entry& e) { return e.second.sign() >= 0; });
}

bool GroupFunction::is_even() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [&](const Entry& e) { return at(spec_.neg(e.first)) == e.second; });
}

GroupFunction GroupFunction::scaled(const Rational& s) const {
  std::vector<Entry> w = weights_;
  for (auto& e : w) e.second *= s;
  return {spec_, std::move(w)};
}

GroupFunction GroupFunction::translated(std::uint64_t by) const {
  std::vector<Entry> w;
  w.reserve(weights_.size());
  for (const auto& [x, v] : weights_) w.emplace_back(spec_.add(x, by), v);
  return {spec_, std::move(w)};
}

GroupFunction GroupFunction::reflected() const {
  std::vector<Entry> w;
  w.reserve(weights_.size());
  for (const auto& [x, v] : weights_) w.emplace_back(spec_.neg(x), v);
  return {spec_, std::move(w)};
}

GroupFunction operator+(const GroupFunction& a, const GroupFunction& b) {
  require_same_group(a.spec(), b.spec());
  std::vector<GroupFunction::Entry> w = a.weights();
  w.insert(w.end(), b.weights().begin(), b.weights().end());
  return {a.spec(), std::move(w)};
}

GroupFunction operator-(const GroupFunction& a, const GroupFunction& b) { return a + b.scaled(Rational(-1)); }

std::uint64_t GroupFunction::digest() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  for (auto n : spec_.orders()) mix(n);
  for (const auto& [x, w] : weights_) {
    mix(x);
    mix(static_cast<std::uint64_t>(w.num()));
    mix(static_cast<std::uint64_t>(w.den()));
  }
  return h;
}

std::string SweepMode::str() const {
  if (kind == SweepKind::Exhaustive) return "exhaustive";
  return "sampled:" + std::to_string(samples);
}

SweepMode SweepMode::parse(const std::string& text, std::uint64_t seed) {
  if (text == "exhaustive") return exhaustive();
  const std::string prefix = "sampled:";
  if (text.rfind(prefix, 0) == 0) {
    try {
      return sampled(std::stoull(text.substr(prefix.size())), seed);
    } catch (const std::exception&) {
    }
  }
  throw std::invalid_argument("mode must be 'exhaustive' or 'sampled:<n>', got '" + text + "'");
}

// ---------------------------------------------------------------------------

CyclotomicNumber dft(const GroupFunction& f, std::uint64_t chi) {
  const GroupSpec& spec = f.spec();
  if (chi >= spec.size()) throw ShapeMismatch("character outside the dual group");
  cyclo::Accumulator acc(spec.exponent());
  for (const auto& [x, w] : f.weights()) acc.add_root(w, spec.pairing(chi, x));
  return acc.finish();
}

CyclotomicNumber dft(const GroupFunction& f, const Character& chi) {
  if (chi.coords.size() != f.spec().rank()) throw ShapeMismatch("character rank differs from the group");
  return dft(f, f.spec().index(chi.coords));
}

std::vector<CyclotomicNumber> full_transform(const GroupFunction& f) {
  const GroupSpec& spec = f.spec();
  if (spec.size() > fourier_limits().exhaustive_dual_cap) throw CapExceeded("dual too large for a full transform");
  std::vector<CyclotomicNumber> out;
  out.reserve(spec.size());
  for (std::uint64_t chi = 0; chi < spec.size(); ++chi) out.push_back(dft(f, chi));
  return out;
}

GroupFunction inverse_transform(const GroupSpec& spec, const std::vector<CyclotomicNumber>& values) {
  if (values.size() != spec.size()) throw ShapeMismatch("transform has the wrong number of values");
  // one cyclic axis at a time: N * sum(n_i) products instead of N^2
  std::vector<CyclotomicNumber> cur = values, line;
  const std::uint64_t E = spec.exponent();
  std::uint64_t stride = spec.size();
  for (std::uint32_t n : spec.orders()) {
    stride /= n;
    line.resize(n);
    cyclo::Accumulator acc(E);
    for (std::uint64_t base = 0; base < spec.size(); ++base) {
      if ((base / stride) % n != 0) continue;
      for (std::uint32_t c = 0; c < n; ++c) line[c] = cur[base + c * stride];
      for (std::uint32_t x = 0; x < n; ++x) {
        for (std::uint32_t c = 0; c < n; ++c) {
          if (line[c].is_zero()) continue;
          const auto j = static_cast<std::int64_t>((std::uint64_t(c) * x % n) * (E / n));
          acc.add(line[c] * CyclotomicNumber::root_of_unity(-j, E));
        }
        cur[base + x * stride] = acc.finish();
      }
    }
  }
  std::vector<GroupFunction::Entry> w;
  const Rational inv_size(1, static_cast<std::int64_t>(spec.size()));
  for (std::uint64_t x = 0; x < spec.size(); ++x) {
    if (!cur[x].is_zero()) w.emplace_back(x, cur[x].as_rational() * inv_size);
  }
  return {spec, std::move(w)};
}

GroupFunction convolve(const GroupFunction& f, const GroupFunction& g) {
  require_same_group(f.spec(), g.spec());
  std::uint64_t work = 0;
  if (__builtin_mul_overflow(static_cast<std::uint64_t>(f.support_size()),
                             static_cast<std::uint64_t>(g.support_size()), &work) ||
      work > fourier_limits().convolution_cap) {
    throw CapExceeded("convolution exceeds the configured work cap");
  }
  const GroupSpec& spec = f.spec();
  std::unordered_map<std::uint64_t, Rational> acc;
  for (const auto& [y, fy] : f.weights()) {
    for (const auto& [z, gz] : g.weights()) acc[spec.add(y, z)] += fy * gz;
  }
  std::vector<GroupFunction::Entry> w(acc.begin(), acc.end());
  return {spec, std::move(w)};
}

Rational convolve_at(const GroupFunction& f, const GroupFunction& g, std::uint64_t x) {
  require_same_group(f.spec(), g.spec());
  if (f.support_size() > g.support_size()) return convolve_at(g, f, x);
  Rational s(0);
  for (const auto& [y, fy] : f.weights()) {
    Rational gv = g.at(f.spec().sub(x, y));
    if (!gv.is_zero()) s += fy * gv;
  }
  return s;
}

GroupFunction tensor(const GroupFunction& u, const GroupFunction& v) {
  ProductGroup pg(u.spec(), v.spec());
  std::vector<GroupFunction::Entry> w;
  w.reserve(u.support_size() * v.support_size());
  for (const auto& [g, ug] : u.weights()) {
    for (const auto& [h, vh] : v.weights()) w.emplace_back(pg.join(g, h), ug * vh);
  }
  return {pg.whole, std::move(w)};
}

ZeroSet zero_set(const GroupFunction& f, const SweepMode& mode) {
  const GroupSpec& spec = f.spec();
  ZeroSet zs;
  zs.function_digest = f.digest();
  if (mode.kind == SweepKind::Exhaustive) {
    if (spec.size() > fourier_limits().exhaustive_dual_cap) {
      throw CapExceeded("dual too large for an exhaustive zero-set sweep");
    }
    for (std::uint64_t chi = 0; chi < spec.size(); ++chi) {
      if (dft(f, chi).is_zero()) zs.zeros.push_back(chi);
    }
    zs.checked = spec.size();
    zs.complete = true;
    return zs;
  }
  std::mt19937_64 rng(mode.seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, spec.size() - 1);
  for (std::uint64_t i = 0; i < mode.samples; ++i) {
    std::uint64_t chi = pick(rng);
    if (dft(f, chi).is_zero()) zs.zeros.push_back(chi);
  }
  std::sort(zs.zeros.begin(), zs.zeros.end());
  zs.zeros.erase(std::unique(zs.zeros.begin(), zs.zeros.end()), zs.zeros.end());
  zs.checked = mode.samples;
  zs.complete = false;
  return zs;
}

PositiveDefiniteReport is_positive_definite(const GroupFunction& f) {
  PositiveDefiniteReport r;
  r.even = f.is_even();
  if (!r.even) return r;
  const GroupSpec& spec = f.spec();
  if (spec.size() > fourier_limits().exhaustive_dual_cap) throw CapExceeded("dual too large");
  for (std::uint64_t chi = 0; chi < spec.size(); ++chi) {
    // f even => f^(-chi) = f^(chi); one representative per pair
    if (spec.neg(chi) < chi) continue;
    ++r.checked;
    if (dft(f, chi).sign_of_real() == cyclo::Sign::Negative) r.violations.push_back(chi);
  }
  r.positive_definite = r.violations.empty();
  return r;
}

bool parseval_check(const GroupFunction& f) {
  const GroupSpec& spec = f.spec();
  CyclotomicNumber lhs;
  for (const auto& v : full_transform(f)) lhs += v * v.conj();
  Rational rhs(0);
  for (const auto& [x, w] : f.weights()) rhs += w * w;
  rhs *= Rational(static_cast<std::int64_t>(spec.size()));
  return lhs == CyclotomicNumber(rhs);
}

}  // namespace weaktile
