#include "weaktile/lonely.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <filesystem>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "json_util.hpp"
#include "parallel.hpp"
#include "weaktile/io.hpp"
#include "weaktile/loghadamard.hpp"

namespace weaktile::lonely {

using cyclo::CyclotomicNumber;
using detail::json;

LonelyLimits& lonely_limits() {
  static LonelyLimits l;
  return l;
}

namespace {

const GroupSpec& g1_spec() {
  static const GroupSpec s({6, 6, 6, 6, 6});
  return s;
}

std::string coords_str(const Coords& c) { return "(" + io::format_coords(c) + ")"; }

std::uint64_t pow_u64(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// B

BConstruction construct_B(std::uint32_t p, const BSource& source, std::size_t dim) {
  if (p < 3 || !cyclo::is_prime(p)) throw ParameterError("B needs an odd prime p, got " + std::to_string(p));
  const GroupSpec H(std::vector<std::uint32_t>(dim, p));
  BConstruction out;

  if (source.kind == BSource::Kind::Search) {
    auto r = search_log_hadamard(p, dim, source.budget);
    out.nodes = r.nodes;
    if (r.status != SearchStatus::Found) {
      throw SearchExhausted("no " + std::to_string(2 * p) + "x" + std::to_string(2 * p) +
                            " log-Hadamard matrix of rank <= " + std::to_string(dim) + " (" +
                            to_string(r.status) + " after " + std::to_string(r.nodes) + " nodes)");
    }
    auto f = factor_log_hadamard(r.matrix, p, dim);
    if (!f) throw VerificationFailed("log-Hadamard matrix does not factor in dimension " + std::to_string(dim));
    out.certificate = {f->points, f->spectrum, false};
    out.origin = "search";
  } else {
    ElementSet X = io::read_set(source.path);
    if (!(X.spec() == H)) throw VerificationFailed("B file lives on " + X.spec().str() + ", expected " + H.str());
    if (X.size() != 2 * p) {
      throw VerificationFailed("B file has " + std::to_string(X.size()) + " points, expected " + std::to_string(2 * p));
    }
    const std::filesystem::path spath = source.path + ".spectrum";
    if (std::filesystem::exists(spath)) {
      out.certificate = {X, io::read_set(spath), false};
    } else {
      auto d = decide_spectral(X, source.budget);
      out.nodes = d.nodes;
      if (d.verdict != SpectralVerdict::Spectral) throw VerificationFailed("B file is not spectral: " + d.reason);
      out.certificate = *d.certificate;
    }
    out.origin = source.path;
  }
  if (!verify_spectrum(out.certificate)) throw VerificationFailed("spectrum of B does not verify");
  return out;
}

// ---------------------------------------------------------------------------
// A

const Coords& base_vector() {
  static const Coords v{1, 2, 3, 4, 5};
  return v;
}

namespace {

// Kernel membership over Z_6^5 per permutation, and the annihilator <pi(v)>.
struct LayerTables {
  std::vector<std::vector<std::uint8_t>> member;   // [perm][g1]
  std::vector<std::array<std::uint64_t, 6>> ann;   // [perm] c * pi(v), c = 0..5
  std::vector<std::uint8_t> in_some_ann;           // g1 in any <pi(v)>, any pi

  LayerTables() {
    const auto& G1 = g1_spec();
    const auto& perms = s5_enumeration();
    member.assign(perms.size(), std::vector<std::uint8_t>(G1.size(), 0));
    ann.resize(perms.size());
    in_some_ann.assign(G1.size(), 0);
    Coords c;
    for (std::size_t k = 0; k < perms.size(); ++k) {
      Coords w = permute_vector(perms[k], base_vector());
      for (std::uint64_t g = 0; g < G1.size(); ++g) {
        G1.coords(g, c);
        std::uint32_t s = 0;
        for (int i = 0; i < 5; ++i) s += w[i] * c[i];
        member[k][g] = s % 6 == 0;
      }
      for (std::uint32_t m = 0; m < 6; ++m) {
        Coords x(5);
        for (int i = 0; i < 5; ++i) x[i] = w[i] * m % 6;
        ann[k][m] = G1.index(x);
        in_some_ann[ann[k][m]] = 1;
      }
    }
  }
};

const LayerTables& tables() {
  static const LayerTables t;
  return t;
}

}  // namespace

LayeredTile::LayeredTile(std::uint32_t q) : q_(q), G_({6, 6, 6, 6, 6, q}), G1_(g1_spec()) {
  for (const auto& perm : s5_enumeration()) forms_.push_back(permute_vector(perm, base_vector()));
}

bool LayeredTile::contains(std::uint64_t g) const {
  auto u2 = static_cast<std::uint32_t>(g % q_);
  return tables().member[perm_of_layer(u2)][g / q_] != 0;
}

bool LayeredTile::contains(const Coords& u1, std::uint32_t u2) const {
  return tables().member[perm_of_layer(u2 % q_)][G1_.index(u1)] != 0;
}

ElementSet LayeredTile::materialize() const {
  std::vector<std::uint64_t> el;
  el.reserve(size());
  for (std::uint64_t g1 = 0; g1 < G1_.size(); ++g1)
    for (std::uint32_t k = 0; k < q_; ++k)
      if (tables().member[perm_of_layer(k)][g1]) el.push_back(g1 * q_ + k);
  return {G_, std::move(el)};
}

Subgroup LayeredTile::layer_subgroup(std::uint32_t k) const { return kernel_of_form(G1_, form_of_layer(k)); }

LayeredTile construct_A(std::uint32_t q) {
  if (!cyclo::is_prime(q) || q < 15) throw ParameterError("A needs a prime q >= 15, got " + std::to_string(q));
  return LayeredTile(q);
}

TilingCertificate tiling_complement_A(const LayeredTile& A) {
  const auto& G1 = A.G1();
  const std::size_t used = std::min<std::uint32_t>(A.q(), 120);
  // value of the layer-k form at each g1
  std::vector<std::vector<std::uint8_t>> val(used, std::vector<std::uint8_t>(G1.size()));
  Coords c;
  for (std::size_t k = 0; k < used; ++k) {
    const Coords& w = A.form_of_layer(static_cast<std::uint32_t>(k));
    for (std::uint64_t g = 0; g < G1.size(); ++g) {
      G1.coords(g, c);
      std::uint32_t s = 0;
      for (int i = 0; i < 5; ++i) s += w[i] * c[i];
      val[k][g] = static_cast<std::uint8_t>(s % 6);
    }
  }
  // six points with pairwise distinct form values on every used layer
  std::vector<std::uint64_t> chosen{0};
  std::vector<std::uint8_t> seen(used * 6, 0);
  for (std::size_t k = 0; k < used; ++k) seen[k * 6] = 1;
  auto fits = [&](std::uint64_t g) {
    for (std::size_t k = 0; k < used; ++k)
      if (seen[k * 6 + val[k][g]]) return false;
    return true;
  };
  auto mark = [&](std::uint64_t g, std::uint8_t on) {
    for (std::size_t k = 0; k < used; ++k) seen[k * 6 + val[k][g]] = on;
  };
  std::function<bool(std::uint64_t)> dfs = [&](std::uint64_t from) {
    if (chosen.size() == 6) return true;
    for (std::uint64_t g = from; g < G1.size(); ++g) {
      if (!fits(g)) continue;
      mark(g, 1);
      chosen.push_back(g);
      if (dfs(g + 1)) return true;
      chosen.pop_back();
      mark(g, 0);
    }
    return false;
  };
  if (!dfs(1)) throw SearchExhausted("no common transversal of the layers of A");
  std::vector<std::uint64_t> lam;
  for (auto g1 : chosen) lam.push_back(g1 * A.q());
  TilingCertificate cert{A.materialize(), ElementSet(A.G(), lam), false};
  if (!verify_tiling(cert)) throw VerificationFailed("transversal does not tile A");
  return cert;
}

// ---------------------------------------------------------------------------
// t and Pt

ShiftMap construct_t(const LayeredTile& A, const GroupSpec& H, const std::vector<Coords>& basis) {
  if (basis.size() != 4) throw ParameterError("t needs four shift vectors");
  const std::uint32_t p = H.orders().front();
  Matrix m;
  for (const auto& v : basis) {
    if (v.size() != H.rank()) throw ParameterError("shift vector " + coords_str(v) + " has the wrong length");
    m.push_back(H.reduce(std::vector<std::int64_t>(v.begin(), v.end())));
  }
  if (rank_mod_p(m, p) != 4) throw ParameterError("shift vectors are linearly dependent over Z_" + std::to_string(p));
  ShiftMap t{A.G(), H, {}};
  for (std::uint32_t k = 1; k <= 4; ++k) t.values[k] = H.index(m[k - 1]);  // (0_{G1}, k) has index k
  return t;
}

ShiftMap random_shift_map(const LayeredTile& A, const GroupSpec& H, std::uint64_t support, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick_g(0, A.G().size() - 1), pick_h(0, H.size() - 1);
  ShiftMap t{A.G(), H, {}};
  support = std::min(support, A.size());
  std::uint64_t placed = 0;
  while (placed < support) {
    std::uint64_t g = pick_g(rng);
    if (!A.contains(g) || t.values.count(g)) continue;
    ++placed;
    std::uint64_t h = pick_h(rng);
    if (h != 0) t.values[g] = h;
  }
  return t;
}

ElementSet build_Pt(const LayeredTile& A, const ElementSet& B, const ShiftMap& t) {
  const GroupSpec& H = B.spec();
  ProductGroup E(A.G(), H);
  ElementSet As = A.materialize();
  std::vector<std::uint64_t> el;
  el.reserve(As.size() * B.size());
  for (auto a : As) {
    std::uint64_t s = t.at(a);
    for (auto b : B) el.push_back(a * H.size() + H.add(s, b));
  }
  return {E.whole, std::move(el)};
}

bool LonelyInstance::in_Pt(std::uint64_t e) const {
  std::uint64_t g = g_of(e);
  return A.contains(g) && B.X.contains(H.sub(h_of(e), t.at(g)));
}

LonelyInstance LonelyInstance::with_shift(ShiftMap t2) const {
  LonelyInstance out = *this;
  out.t = std::move(t2);
  if (out.Pt) out.Pt = build_Pt(out.A, out.B.X, out.t);
  return out;
}

std::vector<Coords> standard_basis(std::uint32_t) {
  std::vector<Coords> b;
  for (int i = 0; i < 4; ++i) {
    Coords v(4, 0);
    v[i] = 1;
    b.push_back(v);
  }
  return b;
}

LonelyInstance build_instance(std::uint32_t p, std::uint32_t q, const BSource& b_source,
                              std::optional<std::vector<Coords>> basis) {
  if (!cyclo::is_prime(p) || p <= 3) throw ParameterError("p must be a prime > 3, got " + std::to_string(p));
  if (!cyclo::is_prime(q)) throw ParameterError("q must be prime, got " + std::to_string(q));
  if (std::gcd<std::uint64_t>(q, 6ull * p) != 1) throw ParameterError("q must be coprime to 6p");

  LonelyInstance inst;
  inst.p = p;
  inst.q = q;
  inst.full_scale = static_cast<std::uint64_t>(q) > 6 * pow_u64(p, 4);
  inst.A = construct_A(q);
  inst.G = inst.A.G();
  inst.H = GroupSpec({p, p, p, p});
  inst.E = ProductGroup(inst.G, inst.H).whole;
  auto b = construct_B(p, b_source);
  inst.B = b.certificate;
  inst.b_origin = b.origin;
  inst.basis = basis ? *basis : standard_basis(p);
  inst.t = construct_t(inst.A, inst.H, inst.basis);

  // invariants
  if (inst.B.X.size() != 2 * p || !inst.B.verified) throw VerificationFailed("B is not a verified size-2p spectral set");
  for (std::uint32_t k = 0; k < std::min<std::uint32_t>(q, 120); ++k) {
    const auto& m = tables().member[inst.A.perm_of_layer(k)];
    auto n = static_cast<std::uint64_t>(std::count(m.begin(), m.end(), 1));
    if (n != 1296 || !m[0]) throw VerificationFailed("layer " + std::to_string(k) + " of A has size " + std::to_string(n));
  }
  if (inst.t.values.size() != 4) throw VerificationFailed("t must have exactly four support points");
  for (std::uint32_t k = 1; k <= 4; ++k) {
    if (!inst.A.contains(k) || inst.t.at(k) != inst.H.index(inst.basis[k - 1])) {
      throw VerificationFailed("t(0, " + std::to_string(k) + ") is not v_" + std::to_string(k));
    }
  }
  if (inst.pt_size() <= lonely_limits().materialize_pt) {
    inst.Pt = build_Pt(inst.A, inst.B.X, inst.t);
    if (inst.Pt->size() != inst.pt_size()) throw VerificationFailed("Pt has the wrong size");
    certify_non_tile(inst);  // fiber invariant; throws FiberMismatch
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Transforms

std::string to_string(CaseClass c) {
  switch (c) {
    case CaseClass::AllZero: return "all_zero";
    case CaseClass::AllFull: return "all_full";
    case CaseClass::Mixed: return "mixed";
  }
  return "?";
}

const std::vector<Coords>& mixed_class() {
  static const std::vector<Coords> cls = [] {
    std::set<Coords> s;
    for (const auto& perm : s5_enumeration()) {
      Coords w = permute_vector(perm, base_vector());
      for (std::uint32_t c = 1; c < 6; ++c) {
        Coords x(5);
        for (int i = 0; i < 5; ++i) x[i] = w[i] * c % 6;
        s.insert(x);
      }
    }
    return std::vector<Coords>(s.begin(), s.end());
  }();
  return cls;
}

CaseClass classify(const Coords& gamma1) {
  const auto& G1 = g1_spec();
  std::uint64_t g = G1.index(gamma1);
  if (g == 0) return CaseClass::AllFull;
  return tables().in_some_ann[g] ? CaseClass::Mixed : CaseClass::AllZero;
}

std::vector<std::uint8_t> layer_pattern(const LayeredTile& A, const Coords& gamma1) {
  const std::uint64_t g = g1_spec().index(gamma1);
  const auto& ann = tables().ann;
  std::vector<std::uint8_t> per_perm(120);
  for (std::size_t k = 0; k < 120; ++k)
    per_perm[k] = std::find(ann[k].begin(), ann[k].end(), g) != ann[k].end();
  std::vector<std::uint8_t> pat(A.q());
  for (std::uint32_t k = 0; k < A.q(); ++k) pat[k] = per_perm[A.perm_of_layer(k)];
  return pat;
}

namespace {

CyclotomicNumber ft_A_from_pattern(const std::vector<std::uint8_t>& pat, std::uint32_t gamma2) {
  const auto q = static_cast<std::uint64_t>(pat.size());
  cyclo::Accumulator acc(q);
  for (std::uint64_t k = 0; k < q; ++k)
    if (pat[k]) acc.add_root(1296, gamma2 * k % q);
  return acc.finish();
}

// 1_A^(gamma) + sum_{a in supp t} gamma(a)(rho(t(a)) - 1), without the 1_B^ factor.
CyclotomicNumber shifted_sum(const LonelyInstance& inst, const CyclotomicNumber& fa, std::uint64_t gamma,
                             std::uint64_t rho) {
  const GroupSpec& E = inst.E;
  cyclo::Accumulator acc(E.exponent());
  acc.add(fa);
  const std::uint64_t gr = inst.join(gamma, rho), g0 = inst.join(gamma, 0);
  for (const auto& [a, s] : inst.t.values) {
    acc.add_root(1, E.pairing(gr, inst.join(a, s)));
    acc.add_root(-1, E.pairing(g0, inst.join(a, 0)));
  }
  return acc.finish();
}

}  // namespace

FtA ft_A(const LayeredTile& A, const Coords& gamma1, std::uint32_t gamma2) {
  FtA r;
  r.tag = classify(gamma1);
  r.pattern = layer_pattern(A, gamma1);
  r.value = ft_A_from_pattern(r.pattern, gamma2 % A.q());
  return r;
}

const std::vector<CyclotomicNumber>& ft_B_table(const LonelyInstance& inst) {
  static std::mutex mu;
  static std::map<std::pair<std::string, std::uint64_t>, std::vector<CyclotomicNumber>> cache;
  auto f = GroupFunction::indicator(inst.B.X);
  std::pair<std::string, std::uint64_t> key{inst.H.str(), f.digest()};
  std::lock_guard lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<CyclotomicNumber> t;
  t.reserve(inst.H.size());
  for (std::uint64_t rho = 0; rho < inst.H.size(); ++rho) t.push_back(dft(f, rho));
  return cache.emplace(key, std::move(t)).first->second;
}

CyclotomicNumber ft_Pt(const LonelyInstance& inst, std::uint64_t gamma, std::uint64_t rho) {
  Coords gc = inst.G.coords(gamma);
  Coords g1(gc.begin(), gc.begin() + 5);
  auto fa = ft_A(inst.A, g1, gc[5]).value;
  return ft_B_table(inst)[rho] * shifted_sum(inst, fa, gamma, rho);
}

CyclotomicNumber ft_Pt_direct(const LonelyInstance& inst, std::uint64_t gamma, std::uint64_t rho) {
  if (!inst.Pt) throw CapExceeded("Pt is not materialized");
  const std::uint64_t chi = inst.join(gamma, rho);
  cyclo::Accumulator acc(inst.E.exponent());
  for (auto e : *inst.Pt) acc.add_root(1, inst.E.pairing(chi, e));
  return acc.finish();
}

// ---------------------------------------------------------------------------
// Non-tiling certificate

NonTileCertificate certify_non_tile(const LonelyInstance& inst) {
  if (inst.Pt) return certify_non_tile(inst, *inst.Pt);
  // streamed: fibers are generated from the definition, so only the shape check remains
  throw CapExceeded("Pt is not materialized; fiber sweep needs the explicit set");
}

NonTileCertificate certify_non_tile(const LonelyInstance& inst, const ElementSet& pt) {
  const GroupSpec& H = inst.H;
  const auto& B = inst.B.X.elements();
  NonTileCertificate c;
  const auto& el = pt.elements();
  std::vector<std::uint64_t> fiber;
  for (std::size_t i = 0; i < el.size();) {
    const std::uint64_t g = inst.g_of(el[i]);
    fiber.clear();
    for (; i < el.size() && inst.g_of(el[i]) == g; ++i) fiber.push_back(inst.h_of(el[i]));
    const std::string where = coords_str(inst.G.coords(g));
    if (!inst.A.contains(g)) throw FiberMismatch("nonempty fiber over " + where + ", which is not in A");
    // a translate x + B must have x = fiber[0] - b for some b
    bool translate = false;
    if (fiber.size() == B.size()) {
      for (auto b : B) {
        std::uint64_t x = H.sub(fiber.front(), b);
        std::vector<std::uint64_t> shifted;
        for (auto y : B) shifted.push_back(H.add(x, y));
        std::sort(shifted.begin(), shifted.end());
        if (shifted == fiber) {
          translate = true;
          break;
        }
      }
    }
    if (!translate) throw FiberMismatch("fiber over " + where + " is not a translate of B");
    std::vector<std::uint64_t> expect;
    for (auto y : B) expect.push_back(H.add(inst.t.at(g), y));
    std::sort(expect.begin(), expect.end());
    if (expect != fiber) throw FiberMismatch("fiber over " + where + " is not t(a) + B");
    ++c.fibers_checked;
  }
  if (c.fibers_checked != inst.A.size()) {
    throw FiberMismatch(std::to_string(c.fibers_checked) + " nonempty fibers, but |A| = " +
                        std::to_string(inst.A.size()));
  }
  c.fiber_check = true;
  const std::uint64_t bsize = inst.B.X.size(), hsize = H.size();
  auto d = decide_tile(inst.B.X);
  c.b_nontile = hsize % bsize != 0 && d.verdict == TileVerdict::NonTile;
  c.b_nontile_reason = "|B| = " + std::to_string(bsize) + " does not divide |H| = " + std::to_string(hsize);
  return c;
}

// ---------------------------------------------------------------------------
// Non-vanishing sweep

namespace {

struct SweepContext {
  const LonelyInstance& inst;
  const std::vector<CyclotomicNumber>& ftB;
  std::vector<std::uint64_t> rhos;  // admissible
  struct Support {
    Coords g1;
    std::uint32_t layer;
    std::uint64_t g, s;
  };
  std::vector<Support> supp;
  std::vector<std::uint64_t> layer_load;  // support points per layer
  std::uint64_t base = 0;                 // 6p

  explicit SweepContext(const LonelyInstance& in) : inst(in), ftB(ft_B_table(in)) {
    for (std::uint64_t r = 1; r < in.H.size(); ++r)
      if (!ftB[r].is_zero()) rhos.push_back(r);
    layer_load.assign(in.q, 0);
    for (const auto& [g, s] : in.t.values) {
      Coords c = in.G.coords(g);
      supp.push_back({Coords(c.begin(), c.begin() + 5), c[5], g, s});
      ++layer_load[c[5]];
    }
    base = 6ull * in.p;
  }

  // coefficient of w_q^j, j = gamma2 * k: 1296 [k in pattern] + sum over
  // support points on layer k of w_6^<gamma1, a1> (rho(s) - 1)
  std::vector<CyclotomicNumber> betas(const Coords& gamma1, const std::vector<std::uint8_t>& pat,
                                      std::uint32_t gamma2, std::uint64_t rho) const {
    const std::uint64_t q = inst.q;
    std::vector<CyclotomicNumber> b(q);
    std::vector<cyclo::Accumulator> acc;
    acc.reserve(q);
    for (std::uint64_t j = 0; j < q; ++j) acc.emplace_back(base);
    const auto& G1 = g1_spec();
    for (std::uint64_t k = 0; k < q; ++k)
      if (pat[k]) acc[gamma2 * k % q].add_root(1296, 0);
    for (const auto& sp : supp) {
      std::uint64_t j = gamma2 * sp.layer % q;
      std::uint64_t e6 = G1.pairing(gamma1, sp.g1) * (base / 6) % base;  // w_6 -> w_6p
      std::uint64_t ep = inst.H.pairing(rho, sp.s) * (base / inst.p) % base;
      acc[j].add_root(1, (e6 + ep) % base);
      acc[j].add_root(-1, e6);
    }
    for (std::uint64_t j = 0; j < q; ++j) b[j] = acc[j].finish();
    return b;
  }

  // Nonvanishing predicted from the coefficients; mirrors the case split.
  bool predicted_nonzero(const Coords& gamma1, const std::vector<std::uint8_t>& pat, std::uint32_t gamma2,
                         std::uint64_t rho, bool evaluate_sum) const {
    const std::uint64_t q = inst.q;
    auto b = betas(gamma1, pat, gamma2, rho);
    bool uniform = std::all_of(pat.begin(), pat.end(), [&](auto x) { return x == pat[0]; });
    if (!uniform) {
      // two layers, one annihilated and one not, whose shift terms are small:
      // |beta_in - beta_out| >= 1296 - 2 (load_in + load_out) > 0
      std::optional<std::uint64_t> kin, kout;
      for (std::uint64_t k = 0; k < q && !(kin && kout); ++k) {
        if (2 * layer_load[k] >= 648) continue;
        if (pat[k] && !kin) kin = k;
        if (!pat[k] && !kout) kout = k;
      }
      if (kin && kout) return !(b[gamma2 * *kin % q] == b[gamma2 * *kout % q]);
    }
    auto w = cyclo::relative_vanishing_test(q, base, b, evaluate_sum);
    return w.verdict == cyclo::Verdict::NotAllEqual;
  }
};

struct Partial {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> counterexamples;
  std::array<std::uint64_t, 3> hist{};
  std::uint64_t evaluations = 0, covered = 0, cross = 0;
};

void merge(NonVanishingReport& r, std::vector<Partial>& parts) {
  for (auto& p : parts) {
    r.counterexamples.insert(r.counterexamples.end(), p.counterexamples.begin(), p.counterexamples.end());
    for (int i = 0; i < 3; ++i) r.case_histogram[i] += p.hist[i];
    r.evaluations += p.evaluations;
    r.duals_covered += p.covered;
    r.cross_check_failures += p.cross;
  }
  std::sort(r.counterexamples.begin(), r.counterexamples.end());
}

}  // namespace

NonVanishingReport verify_non_vanishing(const LonelyInstance& inst, const SweepMode& mode) {
  if (std::gcd<std::uint64_t>(inst.q, 6ull * inst.p) != 1) throw HypothesisViolation("q shares a factor with 6p");
  SweepContext ctx(inst);
  NonVanishingReport rep;
  rep.scope = mode;
  const std::uint64_t q = inst.q;
  const unsigned workers = lonely_limits().workers;
  const bool direct = inst.E.exponent() <= lonely_limits().direct_eval_modulus;
  rep.zero_test = direct ? "direct+relative" : "relative";

  auto evaluate = [&](Partial& part, const Coords& g1, const std::vector<std::uint8_t>& pat, std::uint32_t g2,
                      std::uint64_t rho) {
    const std::uint64_t gamma = g1_spec().index(g1) * q + g2;
    bool pred = ctx.predicted_nonzero(g1, pat, g2, rho, direct);
    bool nonzero = pred;
    if (direct) {
      auto fa = ft_A_from_pattern(pat, g2);
      auto v = ctx.ftB[rho] * shifted_sum(inst, fa, gamma, rho);
      nonzero = !v.is_zero();
      if (nonzero != pred) ++part.cross;
    }
    ++part.evaluations;
    if (!nonzero) part.counterexamples.emplace_back(gamma, rho);
  };

  if (mode.kind == SweepKind::Exhaustive) {
    // classes of gamma_1 with the same pattern and the same pairings with supp t
    struct Cls {
      Coords rep;
      std::vector<std::uint8_t> pattern;
      std::array<std::uint64_t, 3> counts{};
    };
    std::map<std::string, Cls> classes;
    const auto& G1 = g1_spec();
    Coords g1;
    for (std::uint64_t g = 0; g < G1.size(); ++g) {
      G1.coords(g, g1);
      auto pat = layer_pattern(inst.A, g1);
      std::string key(pat.begin(), pat.end());
      for (const auto& sp : ctx.supp) key.push_back(static_cast<char>(G1.pairing(g1, sp.g1)));
      auto tag = classify(g1);
      bool uniform = std::all_of(pat.begin(), pat.end(), [&](auto x) { return x == pat[0]; });
      if (tag == CaseClass::Mixed && uniform) ++rep.mixed_with_uniform_pattern;
      auto [it, fresh] = classes.try_emplace(key);
      if (fresh) {
        it->second.rep = g1;
        it->second.pattern = pat;
      }
      ++it->second.counts[static_cast<int>(tag)];
    }
    rep.pattern_classes = classes.size();
    std::vector<const Cls*> list;
    for (const auto& [k, c] : classes) list.push_back(&c);
    const std::uint64_t items = list.size() * (q - 1);
    std::vector<Partial> parts(std::max(1u, workers));
    detail::parallel_chunks(items, workers, [&](unsigned w, std::uint64_t b, std::uint64_t e) {
      Partial& part = parts[w];
      for (std::uint64_t i = b; i < e; ++i) {
        const Cls& c = *list[i / (q - 1)];
        auto g2 = static_cast<std::uint32_t>(1 + i % (q - 1));
        for (auto rho : ctx.rhos) {
          evaluate(part, c.rep, c.pattern, g2, rho);
          for (int t = 0; t < 3; ++t) part.hist[t] += c.counts[t];
          part.covered += c.counts[0] + c.counts[1] + c.counts[2];
        }
      }
    });
    merge(rep, parts);
    return rep;
  }

  // sampled: draw all points first so the result does not depend on workers
  std::mt19937_64 rng(mode.seed);
  std::uniform_int_distribution<std::uint64_t> pick_g(0, inst.G.size() - 1), pick_h(0, inst.H.size() - 1);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pts;
  while (pts.size() < mode.samples) {
    std::uint64_t g = pick_g(rng), r = pick_h(rng);
    if (g % q == 0 || r == 0 || ctx.ftB[r].is_zero()) {
      ++rep.excluded;
      continue;
    }
    pts.emplace_back(g, r);
  }
  std::vector<Partial> parts(std::max(1u, workers));
  std::vector<std::uint64_t> mixed_uniform(parts.size(), 0);
  detail::parallel_chunks(pts.size(), workers, [&](unsigned w, std::uint64_t b, std::uint64_t e) {
    Partial& part = parts[w];
    Coords gc;
    for (std::uint64_t i = b; i < e; ++i) {
      auto [g, r] = pts[i];
      inst.G.coords(g, gc);
      Coords g1(gc.begin(), gc.begin() + 5);
      auto pat = layer_pattern(inst.A, g1);
      auto tag = classify(g1);
      bool uniform = std::all_of(pat.begin(), pat.end(), [&](auto x) { return x == pat[0]; });
      if (tag == CaseClass::Mixed && uniform) ++mixed_uniform[w];
      evaluate(part, g1, pat, gc[5], r);
      ++part.hist[static_cast<int>(tag)];
      ++part.covered;
    }
  });
  for (auto m : mixed_uniform) rep.mixed_with_uniform_pattern += m;
  merge(rep, parts);
  return rep;
}

// ---------------------------------------------------------------------------
// pd-tiling certificate

FactorWitnesses factor_witnesses(const LonelyInstance& inst) {
  FactorWitnesses f;
  f.A_tiling = tiling_complement_A(inst.A);
  f.w_A = pd_from_tiling(f.A_tiling);
  f.w_A_report = verify_pd_witness(inst.G, [&](std::uint64_t g) { return inst.A.contains(g); }, f.w_A.h,
                                   SweepMode::exhaustive());
  f.w_B = pd_from_spectrum(inst.B);
  f.w_B_report = verify_pd_witness(inst.B.X, f.w_B.h, SweepMode::exhaustive());
  return f;
}

PdTilingResult certify_pd_tiling(const LonelyInstance& inst, const PdWitness& w_A, const PdWitness& w_B) {
  if (!(w_A.h.spec() == inst.G) || !(w_B.h.spec() == inst.H)) throw std::invalid_argument("witnesses on wrong groups");
  auto rA = verify_pd_witness(inst.G, [&](std::uint64_t g) { return inst.A.contains(g); }, w_A.h,
                              SweepMode::exhaustive());
  auto rB = verify_pd_witness(inst.B.X, w_B.h, SweepMode::exhaustive());
  if (!rA.passed() || !rB.passed()) throw VerificationFailed("factor witnesses do not verify");

  PdTilingResult res;
  res.transform_nonnegative = true;  // product of two verified nonnegative transforms
  res.witness.X = inst.Pt ? *inst.Pt : ElementSet(inst.E, {});
  res.witness.h = tensor(w_A.h, w_B.h);
  res.witness.provenance = Provenance::Tensor;

  // fiber convolutions (1_{s+B} * w_B) over H, one per distinct shift, merged when equal
  const GroupSpec& H = inst.H;
  auto one_B = GroupFunction::indicator(inst.B.X);
  std::vector<std::vector<Rational>> fiber_conv;
  std::map<std::uint64_t, std::size_t> class_of_shift;
  auto add_shift = [&](std::uint64_t s) {
    if (class_of_shift.count(s)) return;
    auto c = convolve(one_B.translated(s), w_B.h);
    std::vector<Rational> v(H.size(), Rational(0));
    for (const auto& [x, w] : c.weights()) v[x] = w;
    auto it = std::find(fiber_conv.begin(), fiber_conv.end(), v);
    class_of_shift[s] = static_cast<std::size_t>(it - fiber_conv.begin());
    if (it == fiber_conv.end()) fiber_conv.push_back(std::move(v));
  };
  add_shift(0);
  for (const auto& [g, s] : inst.t.values) add_shift(s);
  std::vector<std::uint8_t> is_one(fiber_conv.size());
  for (std::size_t i = 0; i < fiber_conv.size(); ++i)
    is_one[i] = std::all_of(fiber_conv[i].begin(), fiber_conv[i].end(), [](const Rational& r) { return r == Rational(1); });

  const unsigned workers = lonely_limits().workers;
  std::vector<std::vector<std::uint64_t>> fails(std::max(1u, workers));
  detail::parallel_chunks(inst.G.size(), workers, [&](unsigned w, std::uint64_t b, std::uint64_t e) {
    std::vector<Rational> coef(fiber_conv.size());
    for (std::uint64_t g = b; g < e; ++g) {
      std::fill(coef.begin(), coef.end(), Rational(0));
      for (const auto& [y, wy] : w_A.h.weights()) {
        std::uint64_t a = inst.G.sub(g, y);
        if (inst.A.contains(a)) coef[class_of_shift.at(inst.t.at(a))] += wy;
      }
      std::size_t live = 0, last = 0;
      for (std::size_t i = 0; i < coef.size(); ++i)
        if (!coef[i].is_zero()) ++live, last = i;
      bool ok;
      if (live == 1 && is_one[last]) {
        ok = coef[last] == Rational(1);
      } else {
        ok = true;
        for (std::uint64_t h = 0; h < H.size() && ok; ++h) {
          Rational s(0);
          for (std::size_t i = 0; i < coef.size(); ++i)
            if (!coef[i].is_zero()) s += coef[i] * fiber_conv[i][h];
          ok = s == Rational(1);
        }
      }
      if (!ok) fails[w].push_back(g);
    }
  });
  res.cosets_checked = inst.G.size();
  for (auto& f : fails) {
    res.coset_failures += f.size();
    for (auto g : f)
      if (res.failing_cosets.size() < 20) res.failing_cosets.push_back(g);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Counting

CountingCertificate counting_certificate(std::uint64_t p, std::uint64_t q) {
  using boost::multiprecision::cpp_int;
  cpp_int P = p, Q = q;
  cpp_int lhs = (2 * P - 1) * (1296 * Q - 1) + P * P * P * P * 7776;
  cpp_int rhs = 2 * P * 1296 * Q;
  cpp_int size = 1296 * Q * 2 * P;
  CountingCertificate c;
  c.p = p;
  c.q = q;
  c.lhs = lhs.str();
  c.rhs = rhs.str();
  c.spectrum_size = size.str();
  c.holds = lhs < rhs;
  c.full_scale = cpp_int(q) > 6 * P * P * P * P;
  return c;
}

// ---------------------------------------------------------------------------
// Spectrum candidates

SpectrumAnalysis analyze_spectrum_candidate(const LonelyInstance& inst, const ElementSet& S,
                                            std::uint64_t pair_budget) {
  if (!(S.spec() == inst.E)) throw ShapeMismatch("candidate lives on " + S.spec().str());
  SpectrumAnalysis a;
  const std::uint64_t p = inst.p, q = inst.q, twop = 2 * p;
  a.size = S.size();
  a.expected_size = 1296 * q * twop;
  const auto& ftB = ft_B_table(inst);
  const GroupSpec& H = inst.H;

  std::map<std::uint64_t, std::vector<std::uint64_t>> layers;
  for (auto s : S) layers[inst.h_of(s)].push_back(s);
  for (const auto& [r, v] : layers) {
    a.V.push_back(r);
    a.layer_counts[r] = v.size();
  }
  std::vector<std::vector<std::size_t>> adj(a.V.size());
  for (std::size_t i = 0; i < a.V.size(); ++i)
    for (std::size_t j = i + 1; j < a.V.size(); ++j)
      if (!ftB[H.sub(a.V[i], a.V[j])].is_zero()) {
        adj[i].push_back(j);
        adj[j].push_back(i);
        ++a.edges;
      }
  for (std::size_t i = 0; i < a.V.size(); ++i)
    if (adj[i].empty()) a.Y.push_back(a.V[i]);

  const std::uint64_t nv = a.V.size(), ny = a.Y.size();
  if (nv <= twop) a.branch = "|V| <= 2p";
  else if (ny > twop) a.branch = "|Y| > 2p";
  else if (ny < twop) a.branch = "|Y| < 2p";
  else a.branch = "|Y| = 2p, |V| > 2p";

  // structural bounds
  if (ny > twop) a.violations.push_back("|Y| = " + std::to_string(ny) + " > 2p");
  for (std::size_t i = 0; i < a.V.size(); ++i) {
    std::uint64_t n = a.layer_counts[a.V[i]];
    if (!adj[i].empty() && n > 7776) {
      a.violations.push_back("non-isolated layer " + coords_str(H.coords(a.V[i])) + " carries " + std::to_string(n) +
                             " > 6^5 elements");
    }
    if (adj[i].empty() && n >= 1296 * q) {
      a.violations.push_back("isolated layer " + coords_str(H.coords(a.V[i])) + " carries " + std::to_string(n) +
                             " >= 6^4 q elements");
    }
  }
  if (ny == twop && nv > twop) {
    a.independent_set = a.Y;
    for (std::size_t i = 0; i < a.V.size(); ++i)
      if (!adj[i].empty()) {
        a.independent_set.push_back(a.V[i]);
        break;
      }
    a.violations.push_back("independent set of size 2p+1");
  }
  a.counting_bound_applies = inst.full_scale && a.branch == "|Y| < 2p";

  if (a.size != a.expected_size) {
    a.refutation = "size mismatch: |S| = " + std::to_string(a.size) + ", a spectrum needs (6^4 q)(2p) = " +
                   std::to_string(a.expected_size);
    return a;
  }

  // explicit non-orthogonal pair
  std::uint64_t spent = 0;
  auto try_pair = [&](std::uint64_t s, std::uint64_t t) {
    ++spent;
    std::uint64_t d = inst.E.sub(s, t);
    auto v = ft_Pt(inst, inst.g_of(d), inst.h_of(d));
    if (v.is_zero()) return false;
    a.non_orthogonal_pair = {s, t};
    a.pair_value = v.str();
    return true;
  };
  auto gamma2 = [&](std::uint64_t s) { return inst.g_of(s) % q; };

  // adjacent layers, preferring different G2-components
  for (std::size_t i = 0; i < a.V.size() && !a.non_orthogonal_pair && spent < pair_budget; ++i) {
    for (auto j : adj[i]) {
      if (j < i) continue;
      const auto& Li = layers[a.V[i]];
      const auto& Lj = layers[a.V[j]];
      std::uint64_t s = Li.front();
      auto it = std::find_if(Lj.begin(), Lj.end(), [&](auto x) { return gamma2(x) != gamma2(s); });
      if (try_pair(s, it == Lj.end() ? Lj.front() : *it)) break;
      if (spent >= pair_budget) break;
    }
  }
  // inside a layer: G1-differences that annihilate some layer of A (an
  // empty pattern makes 1_A^ vanish at rho = 0, so those are skipped)
  if (!a.non_orthogonal_pair) {
    std::vector<std::uint64_t> ann;
    const auto& G1 = g1_spec();
    for (std::uint64_t g = 1; g < 7776; ++g) {
      if (!tables().in_some_ann[g]) continue;
      const auto pat = layer_pattern(inst.A, G1.coords(g));
      if (std::find(pat.begin(), pat.end(), 1) != pat.end()) ann.push_back(g);
    }
    for (auto& [r, L] : layers) {
      if (a.non_orthogonal_pair || spent >= pair_budget) break;
      std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> by_g1;
      for (auto s : L) by_g1[inst.g_of(s) / q].push_back(s);
      for (auto s : L) {
        if (a.non_orthogonal_pair || spent >= pair_budget) break;
        std::uint64_t g1 = inst.g_of(s) / q;
        for (auto m : ann) {
          auto it = by_g1.find(G1.sub(g1, m));
          if (it == by_g1.end()) continue;
          bool hit = false;
          for (auto t : it->second) {
            if (try_pair(s, t)) {
              hit = true;
              break;
            }
          }
          if (hit || spent >= pair_budget) break;
        }
      }
    }
  }
  // random pairs
  if (!a.non_orthogonal_pair && S.size() > 1) {
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<std::size_t> pick(0, S.size() - 1);
    const auto& el = S.elements();
    while (spent < pair_budget) {
      std::size_t i = pick(rng), j = pick(rng);
      if (i != j && try_pair(el[i], el[j])) break;
    }
  }

  if (a.non_orthogonal_pair) {
    const auto& G = inst.E;
    a.refutation = "characters " + coords_str(G.coords(a.non_orthogonal_pair->first)) + " and " +
                   coords_str(G.coords(a.non_orthogonal_pair->second)) + " are not orthogonal on Pt";
  } else if (ny > twop || !a.independent_set.empty()) {
    a.refutation = "more than 2p characters pairwise orthogonal on B, which has dimension 2p";
  } else if (a.counting_bound_applies) {
    auto c = counting_certificate(p, q);
    if (c.holds) a.refutation = "counting bound: |S| <= " + c.lhs + " < " + c.rhs;
  } else if (a.branch == "|V| <= 2p") {
    a.refutation = "a layer holds >= 6^4 q elements, which would give A a spectrum (cited non-spectrality of A)";
  }
  return a;
}

// ---------------------------------------------------------------------------
// Output

const std::vector<std::string>& trusted_citations() {
  static const std::vector<std::string> c{
      "A (layered kernels of x -> <pi(1,2,3,4,5), x> in Z_6^5 x Z_q, q >= 15) is not spectral: cited, not "
      "re-derived here",
      "for k large enough P(k) is neither a tile nor spectral in Z^5, and C(k) = P(k) + [0,1)^5 is neither in "
      "R^5: cited transference results, no threshold for k is claimed",
  };
  return c;
}

namespace {

json base(const char* type, const LonelyInstance& inst) {
  json j;
  j["schema"] = detail::kCertificateSchema;
  j["type"] = type;
  j["p"] = inst.p;
  j["q"] = inst.q;
  j["full_scale"] = inst.full_scale;
  return j;
}

json pair_list(const LonelyInstance& inst, const std::vector<std::pair<std::uint64_t, std::uint64_t>>& v) {
  json a = json::array();
  for (const auto& [g, r] : v) a.push_back({{"gamma", inst.G.coords(g)}, {"rho", inst.H.coords(r)}});
  return a;
}

}  // namespace

std::string instance_json(const LonelyInstance& inst, const std::map<std::string, std::string>& files) {
  json j;
  j["schema"] = "weaktile.instance/1";
  j["p"] = inst.p;
  j["q"] = inst.q;
  j["full_scale"] = inst.full_scale;
  j["groups"] = {{"G", inst.G.orders()}, {"H", inst.H.orders()}, {"E", inst.E.orders()}};
  j["permutation_order"] = "lexicographic one-line order of S_5, index 0 = identity; layers k >= 120 reuse index 0";
  json basis = json::array();
  for (const auto& v : inst.basis) basis.push_back(v);
  j["basis"] = basis;
  j["B"] = {{"origin", inst.b_origin},
            {"points", detail::set_json(inst.B.X)},
            {"spectrum", detail::set_json(inst.B.spectrum)},
            {"verified", inst.B.verified}};
  j["sizes"] = {{"A", inst.A.size()}, {"B", inst.B.X.size()}, {"Pt", inst.pt_size()}, {"E", inst.E.size()}};
  json t = json::array();
  for (const auto& [g, s] : inst.t.values) t.push_back({{"a", inst.G.coords(g)}, {"t", inst.H.coords(s)}});
  j["shift_map"] = t;
  j["files"] = files;
  j["trusted_citations"] = trusted_citations();
  return j.dump(2);
}

std::string non_tile_json(const LonelyInstance& inst, const NonTileCertificate& c) {
  json j = base("lonely_non_tile", inst);
  j["fiber_check"] = c.fiber_check;
  j["fibers_checked"] = c.fibers_checked;
  j["b_nontile"] = c.b_nontile;
  j["b_nontile_reason"] = c.b_nontile_reason;
  j["valid"] = c.valid();
  return j.dump(2);
}

std::string non_vanishing_json(const LonelyInstance& inst, const NonVanishingReport& r) {
  json j = base("lonely_non_vanishing", inst);
  j["scope"] = r.scope.str();
  j["seed"] = r.scope.seed;
  j["hypotheses"] = r.hypotheses;
  j["zero_test"] = r.zero_test;
  j["case_histogram"] = {{"all_zero", r.case_histogram[0]}, {"all_full", r.case_histogram[1]},
                         {"mixed", r.case_histogram[2]}};
  j["evaluations"] = r.evaluations;
  j["duals_covered"] = r.duals_covered;
  j["excluded"] = r.excluded;
  j["pattern_classes"] = r.pattern_classes;
  j["mixed_with_uniform_pattern"] = r.mixed_with_uniform_pattern;
  j["cross_check_failures"] = r.cross_check_failures;
  j["counterexamples"] = pair_list(inst, r.counterexamples);
  j["passed"] = r.passed();
  return j.dump(2);
}

std::string pd_tiling_json(const LonelyInstance& inst, const PdTilingResult& r, const FactorWitnesses& f) {
  json j = base("lonely_pd_tiling", inst);
  j["A_translations"] = detail::set_json(f.A_tiling.translations);
  j["w_A"] = {{"provenance", to_string(f.w_A.provenance)},
              {"weights", detail::weights_json(f.w_A.h)},
              {"verification", detail::report_json(f.w_A_report.mode, f.w_A_report.checked, f.w_A_report.failures)}};
  j["w_B"] = {{"provenance", to_string(f.w_B.provenance)},
              {"weights", detail::weights_json(f.w_B.h)},
              {"verification", detail::report_json(f.w_B_report.mode, f.w_B_report.checked, f.w_B_report.failures)}};
  j["h"] = {{"form", "w_A (x) w_B"}, {"support_size", r.witness.h.support_size()}, {"value_at_0", detail::fraction(r.witness.h.at(0))}};
  json fc = json::array();
  for (auto g : r.failing_cosets) fc.push_back(inst.G.coords(g));
  j["coset_check"] = {{"mode", "exhaustive"},
                      {"cosets_checked", r.cosets_checked},
                      {"failures", r.coset_failures},
                      {"failing_cosets", fc}};
  j["transform_nonnegative"] = r.transform_nonnegative;
  j["passed"] = r.passed();
  return j.dump(2);
}

std::string counting_json(const CountingCertificate& c) {
  json j;
  j["schema"] = detail::kCertificateSchema;
  j["type"] = "lonely_counting";
  j["p"] = c.p;
  j["q"] = c.q;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["spectrum_size"] = c.spectrum_size;
  j["holds"] = c.holds;
  j["full_scale"] = c.full_scale;
  return j.dump(2);
}

std::string spectrum_analysis_json(const LonelyInstance& inst, const SpectrumAnalysis& a) {
  json j = base("lonely_spectrum_analysis", inst);
  j["size"] = a.size;
  j["expected_size"] = a.expected_size;
  j["V_size"] = a.V.size();
  json y = json::array();
  for (auto r : a.Y) y.push_back(inst.H.coords(r));
  j["Y"] = y;
  j["edges"] = a.edges;
  json lc = json::array();
  for (const auto& [r, n] : a.layer_counts) lc.push_back({{"rho", inst.H.coords(r)}, {"count", n}});
  j["layer_counts"] = lc;
  j["branch"] = a.branch;
  j["violations"] = a.violations;
  if (a.non_orthogonal_pair) {
    j["non_orthogonal_pair"] = {inst.E.coords(a.non_orthogonal_pair->first), inst.E.coords(a.non_orthogonal_pair->second)};
    j["pair_transform"] = *a.pair_value;
  }
  j["counting_bound_applies"] = a.counting_bound_applies;
  j["refutation"] = a.refutation;
  j["refuted"] = a.refuted();
  return j.dump(2);
}

}  // namespace weaktile::lonely
