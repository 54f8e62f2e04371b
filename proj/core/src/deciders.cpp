#include "weaktile/deciders.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <map>
#include <random>
#include <set>

#include "json_util.hpp"
#include "weaktile/lp.hpp"

namespace weaktile {

using cyclo::CyclotomicNumber;
using detail::json;

DeciderLimits& decider_limits() {
  static DeciderLimits l;
  return l;
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::FromTiling: return "from_tiling";
    case Provenance::FromSpectrum: return "from_spectrum";
    case Provenance::Tensor: return "tensor";
    case Provenance::LP: return "lp";
    case Provenance::External: return "external";
  }
  return "?";
}

std::string to_string(TileVerdict v) {
  switch (v) {
    case TileVerdict::Tile: return "Tile";
    case TileVerdict::NonTile: return "NonTile";
    case TileVerdict::Unknown: return "Unknown";
  }
  return "?";
}

std::string to_string(SpectralVerdict v) {
  switch (v) {
    case SpectralVerdict::Spectral: return "Spectral";
    case SpectralVerdict::NonSpectral: return "NonSpectral";
    case SpectralVerdict::Unknown: return "Unknown";
  }
  return "?";
}

std::string to_string(PdVerdict v) {
  switch (v) {
    case PdVerdict::PdTile: return "PdTile";
    case PdVerdict::NotPdTile: return "NotPdTile";
    case PdVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

std::string point_str(const GroupSpec& spec, std::uint64_t x) {
  auto c = spec.coords(x);
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

struct FailureLog {
  std::vector<std::string>& out;
  std::size_t suppressed = 0;
  void add(std::string s) {
    if (out.size() < 100) {
      out.push_back(std::move(s));
    } else {
      ++suppressed;
    }
  }
  void finish() {
    if (suppressed) out.push_back("... " + std::to_string(suppressed) + " further failures suppressed");
  }
};

}  // namespace

bool verify_tiling(TilingCertificate& cert) {
  const GroupSpec& spec = cert.X.spec();
  cert.verified = false;
  if (!(cert.translations.spec() == spec)) return false;
  if (cert.X.size() * cert.translations.size() != spec.size()) return false;
  auto c = convolve(GroupFunction::indicator(cert.X), GroupFunction::indicator(cert.translations));
  if (c.support_size() != spec.size()) return false;
  cert.verified = c.is_indicator();
  return cert.verified;
}

bool verify_spectrum(SpectrumCertificate& cert) {
  const GroupSpec& spec = cert.X.spec();
  cert.verified = false;
  if (!(cert.spectrum.spec() == spec) || cert.spectrum.size() != cert.X.size()) return false;
  auto f = GroupFunction::indicator(cert.X);
  std::set<std::uint64_t> ok;
  const auto& s = cert.spectrum.elements();
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i == j) continue;
      auto d = spec.sub(s[i], s[j]);
      if (ok.count(d)) continue;
      if (!dft(f, d).is_zero()) return false;
      ok.insert(d);
    }
  }
  cert.verified = true;
  return true;
}

TileDecision decide_tile(const ElementSet& X, const Budget& budget) {
  TileDecision d;
  const GroupSpec& spec = X.spec();
  if (X.empty()) throw std::invalid_argument("decide_tile needs a nonempty set");
  if (spec.size() % X.size() != 0) {
    d.verdict = TileVerdict::NonTile;
    d.reason = "divisibility: |X| = " + std::to_string(X.size()) + " does not divide |E| = " + std::to_string(spec.size());
    return d;
  }
  ExactCover ec(spec.size());
  std::vector<std::uint64_t> shift_of_row;
  std::set<std::vector<std::size_t>> seen;
  for (std::uint64_t l = 0; l < spec.size(); ++l) {
    std::vector<std::size_t> cols;
    cols.reserve(X.size());
    for (auto x : X) cols.push_back(spec.add(x, l));
    std::sort(cols.begin(), cols.end());
    if (!seen.insert(cols).second) continue;  // periodic X repeats translates
    ec.add_row(cols);
    shift_of_row.push_back(l);
  }
  auto r = ec.solve(budget);
  d.nodes = r.nodes;
  if (r.status == SearchStatus::Found) {
    std::vector<std::uint64_t> lam;
    for (auto row : r.rows) lam.push_back(shift_of_row[row]);
    TilingCertificate cert{X, ElementSet(spec, lam)};
    if (!verify_tiling(cert)) throw std::logic_error("exact cover returned an invalid tiling");
    d.verdict = TileVerdict::Tile;
    d.certificate = std::move(cert);
    d.reason = "exact cover found";
  } else if (r.status == SearchStatus::Exhausted) {
    d.verdict = TileVerdict::NonTile;
    d.reason = "exact cover search exhausted";
  } else {
    d.verdict = TileVerdict::Unknown;
    d.reason = "search budget of " + std::to_string(budget.nodes) + " nodes exhausted";
  }
  return d;
}

SpectralDecision decide_spectral(const ElementSet& X, const Budget& budget) {
  SpectralDecision d;
  const GroupSpec& spec = X.spec();
  if (X.empty()) throw std::invalid_argument("decide_spectral needs a nonempty set");
  if (spec.size() > fourier_limits().exhaustive_dual_cap) {
    d.reason = "dual too large for the orthogonality graph";
    return d;
  }
  auto f = GroupFunction::indicator(X);
  std::vector<char> zero(spec.size(), 0);
  std::vector<std::uint64_t> Z;
  for (std::uint64_t chi = 1; chi < spec.size(); ++chi) {
    if (dft(f, chi).is_zero()) {
      zero[chi] = 1;
      Z.push_back(chi);
    }
  }
  const std::size_t k = X.size();
  auto finish_found = [&](std::vector<std::uint64_t> s) {
    SpectrumCertificate cert{X, ElementSet(spec, std::move(s))};
    if (!verify_spectrum(cert)) throw std::logic_error("clique search returned an invalid spectrum");
    d.verdict = SpectralVerdict::Spectral;
    d.certificate = std::move(cert);
    d.reason = "orthogonal set found";
  };
  if (k == 1) {
    finish_found({0});
    return d;
  }
  if (Z.size() + 1 < k) {
    d.verdict = SpectralVerdict::NonSpectral;
    d.exhaustive_proof = true;
    d.reason = "only " + std::to_string(Z.size()) + " characters are orthogonal to the trivial one";
    return d;
  }
  if (Z.size() > decider_limits().spectral_vertex_cap) {
    d.reason = "orthogonality graph exceeds the vertex cap";
    return d;
  }
  // order by descending degree; clique search branches in label order
  std::vector<std::size_t> degree(Z.size(), 0);
  for (std::size_t i = 0; i < Z.size(); ++i)
    for (std::size_t j = i + 1; j < Z.size(); ++j)
      if (zero[spec.sub(Z[i], Z[j])]) ++degree[i], ++degree[j];
  std::vector<std::size_t> order(Z.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return degree[a] > degree[b]; });
  std::vector<Bitset> adj(Z.size(), Bitset(Z.size()));
  for (std::size_t i = 0; i < Z.size(); ++i)
    for (std::size_t j = i + 1; j < Z.size(); ++j)
      if (zero[spec.sub(Z[order[i]], Z[order[j]])]) adj[i].set(j), adj[j].set(i);

  auto r = find_clique(adj, k - 1, budget);
  d.nodes = r.nodes;
  if (r.status == SearchStatus::Found) {
    std::vector<std::uint64_t> s{0};
    for (auto v : r.clique) s.push_back(Z[order[v]]);
    finish_found(std::move(s));
  } else if (r.status == SearchStatus::Exhausted) {
    d.verdict = SpectralVerdict::NonSpectral;
    d.exhaustive_proof = true;
    d.reason = "clique search exhausted";
  } else {
    d.reason = "search budget of " + std::to_string(budget.nodes) + " nodes exhausted";
  }
  return d;
}

PdWitness pd_from_tiling(const TilingCertificate& cert) {
  TilingCertificate c = cert;
  if (!verify_tiling(c)) throw std::invalid_argument("pd_from_tiling: tiling certificate does not verify");
  auto L = GroupFunction::indicator(c.translations);
  auto h = convolve(L, L.reflected()).scaled(Rational(1, static_cast<std::int64_t>(c.translations.size())));
  return {c.X, std::move(h), Provenance::FromTiling};
}

PdWitness pd_from_spectrum(const SpectrumCertificate& cert) {
  SpectrumCertificate c = cert;
  if (!verify_spectrum(c)) throw std::invalid_argument("pd_from_spectrum: spectrum does not verify");
  const GroupSpec& spec = c.X.spec();
  if (spec.size() > group_limits().enumeration_cap) throw CapExceeded("group too large for pd_from_spectrum");
  // |sum_s s(x)|^2 = sum_{s,s'} (s - s')(x); only difference multiplicities matter
  std::map<std::uint64_t, std::int64_t> diff;
  for (auto a : c.spectrum)
    for (auto b : c.spectrum) ++diff[spec.sub(a, b)];
  const std::uint64_t n = spec.exponent();
  std::vector<Rational> avg(n);
  for (std::uint64_t j = 0; j < n; ++j) {
    avg[j] = CyclotomicNumber::root_of_unity(static_cast<std::int64_t>(j), n).galois_average();
  }
  const auto k = static_cast<std::int64_t>(c.X.size());
  const Rational norm(1, k * k);
  std::vector<GroupFunction::Entry> w;
  for (std::uint64_t x = 0; x < spec.size(); ++x) {
    Rational v(0);
    for (const auto& [d, r] : diff) v += avg[spec.pairing(d, x)] * Rational(r);
    if (!v.is_zero()) w.emplace_back(x, v * norm);
  }
  return {c.X, GroupFunction(spec, std::move(w)), Provenance::FromSpectrum};
}

// ---------------------------------------------------------------------------

VerificationReport verify_pd_witness(const GroupSpec& spec, const std::function<bool(std::uint64_t)>& in_X,
                                     const GroupFunction& h, const SweepMode& mode) {
  VerificationReport rep;
  rep.mode = mode.str();
  FailureLog log{rep.failures};
  if (!(h.spec() == spec)) {
    log.add("witness lives on group " + h.spec().str() + ", set on " + spec.str());
    log.finish();
    return rep;
  }
  for (const auto& [x, w] : h.weights()) {
    if (w.sign() < 0) log.add("negative weight " + w.str() + " at " + point_str(spec, x));
  }
  if (h.at(0) != Rational(1)) log.add("h(0) = " + h.at(0).str() + ", expected 1");
  const bool even = h.is_even();
  if (!even) log.add("witness is not even, so its transform is not real");

  std::vector<std::uint64_t> points;
  if (mode.kind == SweepKind::Exhaustive) {
    if (spec.size() > group_limits().enumeration_cap) throw CapExceeded("group too large for exhaustive verification");
  } else {
    std::mt19937_64 rng(mode.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, spec.size() - 1);
    points.push_back(0);
    for (std::size_t i = 0; i < spec.rank(); ++i) {
      Coords c(spec.rank(), 0);
      c[i] = 1 % spec.orders()[i];
      points.push_back(spec.index(c));
    }
    for (std::uint64_t i = 0; i < mode.samples; ++i) points.push_back(pick(rng));
  }
  auto each_point = [&](auto&& fn) {
    if (mode.kind == SweepKind::Exhaustive) {
      for (std::uint64_t x = 0; x < spec.size(); ++x) fn(x);
    } else {
      for (auto x : points) fn(x);
    }
  };

  each_point([&](std::uint64_t x) {
    Rational s(0);
    for (const auto& [y, w] : h.weights())
      if (in_X(spec.sub(x, y))) s += w;
    ++rep.checked;
    if (s != Rational(1)) log.add("(1_X * h)" + point_str(spec, x) + " = " + s.str());
  });
  if (even) {
    each_point([&](std::uint64_t chi) {
      if (mode.kind == SweepKind::Exhaustive && spec.neg(chi) < chi) return;  // same value as -chi
      ++rep.checked;
      if (dft(h, chi).sign_of_real() == cyclo::Sign::Negative) log.add("negative transform at " + point_str(spec, chi));
    });
  }
  log.finish();
  return rep;
}

VerificationReport verify_pd_witness(const ElementSet& X, const GroupFunction& h, const SweepMode& mode) {
  return verify_pd_witness(X.spec(), [&](std::uint64_t x) { return X.contains(x); }, h, mode);
}

// ---------------------------------------------------------------------------

namespace {

// Variables of the pd LP are the {x, -x} orbits.
struct PdSystem {
  GroupSpec spec;
  std::vector<std::size_t> orbit_of;
  std::vector<std::vector<std::uint64_t>> orbits;
  std::vector<std::vector<Rational>> eq;  // rows: x in E, then h(0) = 1; rhs all 1
  std::vector<std::uint64_t> chars;       // one per {chi, -chi}

  explicit PdSystem(const ElementSet& X) : spec(X.spec()) {
    const std::uint64_t n = spec.size();
    orbit_of.assign(n, 0);
    for (std::uint64_t x = 0; x < n; ++x) {
      std::uint64_t m = spec.neg(x);
      if (m < x) {
        orbit_of[x] = orbit_of[m];
        orbits[orbit_of[x]].push_back(x);
      } else {
        orbit_of[x] = orbits.size();
        orbits.push_back({x});
      }
    }
    eq.assign(n + 1, std::vector<Rational>(orbits.size(), Rational(0)));
    for (std::uint64_t x = 0; x < n; ++x)
      for (auto y : X) eq[x][orbit_of[spec.sub(x, y)]] += Rational(1);
    eq[n][orbit_of[0]] = Rational(1);
    for (std::uint64_t chi = 0; chi < n; ++chi)
      if (spec.neg(chi) >= chi) chars.push_back(chi);
  }

  [[nodiscard]] CyclotomicNumber transform_coeff(std::uint64_t chi, std::size_t o) const {
    cyclo::Accumulator acc(spec.exponent());
    for (auto x : orbits[o]) acc.add_root(1, spec.pairing(chi, x));
    return acc.finish();
  }

  [[nodiscard]] double transform_coeff_float(std::uint64_t chi, std::size_t o) const {
    double s = 0;
    for (auto x : orbits[o]) {
      s += std::cos(2 * M_PI * static_cast<double>(spec.pairing(chi, x)) / static_cast<double>(spec.exponent()));
    }
    return s;
  }
};

std::vector<std::vector<double>> to_double(const std::vector<std::vector<Rational>>& m) {
  std::vector<std::vector<double>> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (const auto& v : m[i]) out[i].push_back(v.to_double());
  return out;
}

bool check_farkas(const PdSystem& sys, const FarkasCertificate& f) {
  if (f.equality_multipliers.size() != sys.eq.size()) return false;
  Rational yb(0);
  for (const auto& y : f.equality_multipliers) yb += y;
  if (yb.sign() <= 0) return false;
  for (const auto& [chi, z] : f.transform_multipliers) {
    if (z.sign() < 0 || chi >= sys.spec.size()) return false;
  }
  for (std::size_t o = 0; o < sys.orbits.size(); ++o) {
    Rational r(0);
    for (std::size_t i = 0; i < sys.eq.size(); ++i)
      if (!f.equality_multipliers[i].is_zero()) r += f.equality_multipliers[i] * sys.eq[i][o];
    CyclotomicNumber col(r);
    for (const auto& [chi, z] : f.transform_multipliers) col += sys.transform_coeff(chi, o).scaled(z);
    if (col.sign_of_real() == cyclo::Sign::Positive) return false;
  }
  return true;
}

// y.A + z.C <= 0 columnwise, y.b = 1; y split into positive and negative parts.
std::optional<FarkasCertificate> search_farkas(const PdSystem& sys, bool with_transform) {
  const std::size_t m = sys.eq.size();
  const std::size_t k = with_transform ? sys.chars.size() : 0;
  const std::size_t nv = 2 * m + k;
  lp::Problem p;
  p.variables = nv;
  std::vector<double> norm(nv, 0.0);
  for (std::size_t i = 0; i < m; ++i) norm[i] = 1.0, norm[m + i] = -1.0;
  p.eq.push_back(norm);
  p.eq_rhs.push_back(1.0);
  for (std::size_t o = 0; o < sys.orbits.size(); ++o) {
    std::vector<double> row(nv, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      double a = sys.eq[i][o].to_double();
      row[i] = -a;
      row[m + i] = a;
    }
    for (std::size_t c = 0; c < k; ++c) row[2 * m + c] = -sys.transform_coeff_float(sys.chars[c], o);
    p.ge.push_back(std::move(row));
    p.ge_rhs.push_back(0.0);
  }
  auto r = lp::solve_feasibility(p);
  if (r.status != lp::Status::Feasible) return std::nullopt;
  FarkasCertificate f;
  const auto cap = decider_limits().rational_denominator_cap;
  for (std::size_t i = 0; i < m; ++i) f.equality_multipliers.push_back(Rational::approximate(r.x[i] - r.x[m + i], cap));
  for (std::size_t c = 0; c < k; ++c) {
    auto z = Rational::approximate(r.x[2 * m + c], cap);
    if (!z.is_zero()) f.transform_multipliers.emplace_back(sys.chars[c], z);
  }
  f.verified = check_farkas(sys, f);
  if (!f.verified) return std::nullopt;
  return f;
}

}  // namespace

bool verify_farkas(const ElementSet& X, FarkasCertificate& cert) {
  PdSystem sys(X);
  cert.verified = check_farkas(sys, cert);
  return cert.verified;
}

namespace {

// One solution of A x = b over Q (free variables zero), or nullopt if
// inconsistent.
std::optional<std::vector<Rational>> solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Rational inv = Rational(1) / a[r][c];
    for (auto& v : a[r]) v *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

// Rounds the float solution and moves it exactly onto the rational affine
// space {A h = 1, h = 0 off the float support}.
std::optional<GroupFunction> repair_witness(const PdSystem& sys, const std::vector<double>& x) {
  const auto cap = decider_limits().rational_denominator_cap;
  std::vector<std::size_t> support;
  for (std::size_t o = 0; o < sys.orbits.size(); ++o)
    if (x[o] > 1e-9) support.push_back(o);
  std::vector<Rational> h0;
  for (auto o : support) h0.push_back(Rational::approximate(x[o], cap));
  std::vector<std::vector<Rational>> a(sys.eq.size(), std::vector<Rational>(support.size()));
  std::vector<Rational> resid(sys.eq.size(), Rational(1));
  for (std::size_t i = 0; i < sys.eq.size(); ++i) {
    for (std::size_t k = 0; k < support.size(); ++k) {
      a[i][k] = sys.eq[i][support[k]];
      if (!a[i][k].is_zero()) resid[i] -= a[i][k] * h0[k];
    }
  }
  auto delta = solve_rational(std::move(a), std::move(resid));
  if (!delta) return std::nullopt;
  std::vector<GroupFunction::Entry> w;
  for (std::size_t k = 0; k < support.size(); ++k) {
    Rational v = h0[k] + (*delta)[k];
    for (auto xx : sys.orbits[support[k]]) w.emplace_back(xx, v);
  }
  return GroupFunction(sys.spec, std::move(w));
}

GroupFunction round_witness(const PdSystem& sys, const std::vector<double>& x) {
  std::vector<GroupFunction::Entry> w;
  for (std::size_t o = 0; o < sys.orbits.size(); ++o) {
    auto v = Rational::approximate(x[o], decider_limits().rational_denominator_cap);
    for (auto xx : sys.orbits[o]) w.emplace_back(xx, v);
  }
  return {sys.spec, std::move(w)};
}

}  // namespace

PdDecision decide_pd_tiling(const ElementSet& X) {
  const GroupSpec& spec = X.spec();
  if (spec.size() > decider_limits().lp_group_cap) {
    throw CapExceeded("group of size " + std::to_string(spec.size()) + " exceeds the LP cap");
  }
  if (X.empty()) throw std::invalid_argument("decide_pd_tiling needs a nonempty set");
  PdDecision d;
  PdSystem sys(X);

  // The tiling equations force h^(chi) = 0 wherever 1_X^(chi) != 0, exactly.
  // On the zero set of 1_X^ the transform is free, and we push it away from
  // 0 (slack variable s <= 1, maximized) so that rounding stays feasible.
  auto fx = GroupFunction::indicator(X);
  const std::size_t nh = sys.orbits.size();
  lp::Problem p;
  p.variables = nh + 1;
  for (const auto& row : to_double(sys.eq)) {
    auto r = row;
    r.push_back(0.0);
    p.eq.push_back(std::move(r));
  }
  p.eq_rhs.assign(sys.eq.size(), 1.0);
  for (auto chi : sys.chars) {
    std::vector<double> row(p.variables, 0.0);
    for (std::size_t o = 0; o < nh; ++o) row[o] = sys.transform_coeff_float(chi, o);
    if (chi != 0 && dft(fx, chi).is_zero()) row[nh] = -1.0;
    p.ge.push_back(std::move(row));
    p.ge_rhs.push_back(0.0);
  }
  std::vector<double> cap_row(p.variables, 0.0);
  cap_row[nh] = -1.0;
  p.ge.push_back(std::move(cap_row));
  p.ge_rhs.push_back(-1.0);
  p.maximize.assign(p.variables, 0.0);
  p.maximize[nh] = 1.0;
  auto r = lp::solve_feasibility(p);

  if (r.status == lp::Status::Feasible) {
    std::vector<GroupFunction> candidates;
    try {
      if (auto h = repair_witness(sys, r.x)) candidates.push_back(std::move(*h));
    } catch (const OverflowError&) {
    }
    candidates.push_back(round_witness(sys, r.x));
    std::string first_failure;
    for (auto& h : candidates) {
      auto rep = verify_pd_witness(X, h, SweepMode::exhaustive());
      if (rep.passed()) {
        d.verdict = PdVerdict::PdTile;
        d.witness = PdWitness{X, std::move(h), Provenance::LP};
        d.reason = "LP feasible; rational witness verified exactly";
        return d;
      }
      if (first_failure.empty()) first_failure = rep.failures.front();
    }
    d.reason = "LP feasible in floating point but no rational witness verified exactly: " + first_failure;
    return d;
  }
  if (r.status == lp::Status::IterationLimit) {
    d.reason = "simplex iteration limit reached";
    return d;
  }
  // infeasible: look for a dual certificate, rational rows first
  for (bool with_transform : {false, true}) {
    if (auto f = search_farkas(sys, with_transform)) {
      d.verdict = PdVerdict::NotPdTile;
      d.farkas = std::move(*f);
      d.reason = with_transform ? "Farkas certificate verified (uses transform rows)"
                                : "Farkas certificate verified (tiling equations and h >= 0 alone)";
      return d;
    }
  }
  d.reason = "LP infeasible in floating point but no dual certificate verified exactly";
  return d;
}

// ---------------------------------------------------------------------------

ComplementWeakTiling strip_origin(const PdWitness& w) {
  return {w.X, w.h - GroupFunction::delta(w.h.spec(), 0)};
}

bool verify_complement(const ComplementWeakTiling& c) {
  const GroupSpec& spec = c.X.spec();
  if (!c.mu.is_nonnegative()) return false;
  for (std::uint64_t x = 0; x < spec.size(); ++x) {
    Rational want(c.X.contains(x) ? 0 : 1);
    if (convolve_at(GroupFunction::indicator(c.X), c.mu, x) != want) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

json header(const char* type, const ElementSet& X) {
  json j;
  j["schema"] = detail::kCertificateSchema;
  j["type"] = type;
  j["group"] = X.spec().orders();
  j["set"] = detail::set_json(X);
  return j;
}

json report(const VerificationReport& r) { return detail::report_json(r.mode, r.checked, r.failures); }

}  // namespace

std::string certificate_json(const TilingCertificate& c, const VerificationReport& r) {
  json j = header("tiling", c.X);
  j["translations"] = detail::set_json(c.translations);
  j["verification"] = report(r);
  return j.dump(2);
}

std::string certificate_json(const SpectrumCertificate& c, const VerificationReport& r) {
  json j = header("spectrum", c.X);
  j["spectrum"] = detail::set_json(c.spectrum);
  j["verification"] = report(r);
  return j.dump(2);
}

std::string certificate_json(const PdWitness& w, const VerificationReport& r) {
  json j = header("pd_witness", w.X);
  j["witness"] = {{"provenance", to_string(w.provenance)}, {"weights", detail::weights_json(w.h)}};
  j["verification"] = report(r);
  return j.dump(2);
}

std::string certificate_json(const ElementSet& X, const FarkasCertificate& f) {
  json j = header("not_pd_tile", X);
  json y = json::array();
  for (const auto& v : f.equality_multipliers) y.push_back(detail::fraction(v));
  json z = json::array();
  for (const auto& [chi, v] : f.transform_multipliers) z.push_back({{"chi", X.spec().coords(chi)}, {"z", detail::fraction(v)}});
  j["farkas"] = {{"equality_multipliers", y}, {"transform_multipliers", z}};
  j["verification"] = {{"mode", "exact"}, {"verified", f.verified}};
  return j.dump(2);
}

std::string non_tile_json(const ElementSet& X, const std::string& reason) {
  json j = header("non_tile", X);
  j["reason"] = reason;
  return j.dump(2);
}

std::string non_spectral_json(const ElementSet& X, const SpectralDecision& d) {
  json j = header("non_spectral", X);
  j["reason"] = d.reason;
  j["exhaustive_proof"] = d.exhaustive_proof;
  j["search_nodes"] = d.nodes;
  return j.dump(2);
}

}  // namespace weaktile
