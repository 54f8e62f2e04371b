// Acceptance run: one PASS/FAIL line per criterion.
//   weaktile_acceptance [criterion numbers...]

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "weaktile/cyclo.hpp"
#include "weaktile/deciders.hpp"
#include "weaktile/fourier.hpp"
#include "weaktile/io.hpp"
#include "weaktile/lift.hpp"
#include "weaktile/loghadamard.hpp"
#include "weaktile/lonely.hpp"

using namespace weaktile;
using cyclo::CyclotomicNumber;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> problems;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (problems.size() < 5) problems.push_back(what);
    }
  }
};

const fs::path kData = WEAKTILE_DATA_DIR;
const fs::path kWork = WEAKTILE_WORK_DIR;
const std::string kCli = WEAKTILE_CLI;

const lonely::LonelyInstance& inst517() {
  static const lonely::LonelyInstance inst =
      lonely::build_instance(5, 17, lonely::BSource::file((kData / "b5.set").string()));
  return inst;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const fs::path& cwd, const std::string& args, const std::string& env = {}) {
  fs::create_directories(cwd);
  const std::string cmd = "cd '" + cwd.string() + "' && " + env + " '" + kCli + "' " + args + " >> cli.log 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

CyclotomicNumber random_cyclo(std::mt19937_64& rng, std::uint64_t N) {
  CyclotomicNumber x;
  const int terms = 1 + int(rng() % 5);
  for (int i = 0; i < terms; ++i) {
    const Rational c(std::int64_t(rng() % 13) - 6, std::int64_t(1 + rng() % 5));
    x += CyclotomicNumber::root_of_unity(std::int64_t(rng() % N), N).scaled(c);
  }
  return x;
}

bool close(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) <= 1e-7 * (1 + std::abs(b)); }

GroupSpec random_group(std::mt19937_64& rng, std::uint64_t max_size) {
  for (;;) {
    std::vector<std::uint32_t> orders;
    const int k = 1 + int(rng() % 3);
    std::uint64_t size = 1;
    for (int i = 0; i < k; ++i) {
      orders.push_back(2 + std::uint32_t(rng() % 11));
      size *= orders.back();
    }
    if (size <= max_size) return make_group(orders);
  }
}

GroupFunction random_function(const GroupSpec& g, std::mt19937_64& rng, int points) {
  std::vector<GroupFunction::Entry> w;
  for (int i = 0; i < points; ++i)
    w.emplace_back(rng() % g.size(), Rational(std::int64_t(rng() % 11) - 5, std::int64_t(1 + rng() % 6)));
  return {g, std::move(w)};
}

// ---------------------------------------------------------------------------

Outcome exact_core() {
  Outcome o;
  std::mt19937_64 rng(1);
  std::vector<std::uint64_t> moduli;
  for (std::uint64_t n = 1; n <= 510; ++n) moduli.push_back(n);
  std::uint64_t values = 0, sign_checks = 0;
  for (int i = 0; i < 10000 / 3 + 1; ++i) {
    const auto N = moduli[rng() % moduli.size()];
    const auto a = random_cyclo(rng, N), b = random_cyclo(rng, N), c = random_cyclo(rng, N);
    values += 3;
    const CyclotomicNumber zero, one(1);
    o.require(a + b == b + a && a * b == b * a, "commutativity");
    o.require((a + b) + c == a + (b + c), "additive associativity");
    o.require((a * b) * c == a * (b * c), "multiplicative associativity");
    o.require(a * (b + c) == a * b + a * c, "distributivity");
    o.require(a + zero == a && a * one == a && (a - a).is_zero() && (a + (-a)).is_zero(), "identities");
    o.require((a * b).conj() == a.conj() * b.conj() && a.conj().conj() == a, "conjugation");
    o.require(close((a + b).approx(), a.approx() + b.approx()), "float sum");
    o.require(close((a * b).approx(), a.approx() * b.approx()), "float product");
    o.require(close(a.conj().approx(), std::conj(a.approx())), "float conj");
    const auto r = a * a.conj();  // real, >= 0
    const auto s = r.approx().real();
    if (std::abs(s) > 1e-6) {
      o.require(r.sign_of_real() == cyclo::Sign::Positive, "sign of |a|^2");
      ++sign_checks;
    }
    if (a.is_zero()) o.require(std::abs(a.approx()) < 1e-9, "zero with nonzero float value");
    if (std::abs(a.approx()) > 1e-6) o.require(!a.is_zero(), "nonzero float value but zero");
    o.require(CyclotomicNumber::parse(a.str()) == a, "serialization");
  }
  o.detail = std::to_string(values) + " values, moduli <= 510, " + std::to_string(sign_checks) + " exact signs";
  return o;
}

Outcome fourier_suite() {
  Outcome o;
  std::mt19937_64 rng(2);
  std::uint64_t chars = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto g = random_group(rng, 1000);
    const auto f = random_function(g, rng, 1 + int(rng() % 6));
    const auto h = random_function(g, rng, 1 + int(rng() % 6));
    const auto fh = convolve(f, h);
    const std::uint64_t n = std::min<std::uint64_t>(g.size(), 64);
    for (std::uint64_t j = 0; j < n; ++j) {
      const auto chi = g.size() <= 64 ? j : rng() % g.size();
      o.require(dft(fh, chi) == dft(f, chi) * dft(h, chi), "convolution theorem");
      ++chars;
    }
    o.require(parseval_check(f), "parseval");
    {
      o.require(inverse_transform(g, full_transform(f)) == f, "inversion on " + g.str());
    }
  }
  o.detail = "1000 functions, " + std::to_string(chars) + " convolution checks";
  return o;
}

Outcome fuglede_small() {
  Outcome o;
  std::uint64_t sets = 0, tiles = 0;
  for (std::uint32_t n = 1; n <= 8; ++n) {
    const auto g = make_group({n});
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<std::uint64_t> e;
      for (std::uint32_t i = 0; i < n; ++i)
        if (mask >> i & 1u) e.push_back(i);
      const ElementSet X(g, e);
      ++sets;
      const auto t = decide_tile(X);
      const auto s = decide_spectral(X);
      const std::string name = "Z" + std::to_string(n) + " mask " + std::to_string(mask);
      o.require(t.verdict != TileVerdict::Unknown && s.verdict != SpectralVerdict::Unknown, name + " undecided");
      o.require((t.verdict == TileVerdict::Tile) == (s.verdict == SpectralVerdict::Spectral), name + " disagrees");
      if (t.verdict == TileVerdict::Tile) {
        ++tiles;
        const auto w = pd_from_tiling(*t.certificate);
        o.require(verify_pd_witness(X, w.h, SweepMode::exhaustive()).passed(), name + " tiling witness");
      }
      if (s.verdict == SpectralVerdict::Spectral) {
        const auto w = pd_from_spectrum(*s.certificate);
        o.require(verify_pd_witness(X, w.h, SweepMode::exhaustive()).passed(), name + " spectral witness");
      }
    }
  }
  o.detail = std::to_string(sets) + " subsets, " + std::to_string(tiles) + " tiles, verdicts agree";
  return o;
}

Outcome building_block() {
  Outcome o;
  auto r3 = search_log_hadamard(3, 5, Budget{50'000'000});
  o.require(r3.status == SearchStatus::Found, "no 6x6 log-Hadamard over Z_3");
  std::string d3;
  if (r3.status == SearchStatus::Found) {
    auto f = factor_log_hadamard(r3.matrix, 3, 5);
    o.require(f.has_value(), "6x6 does not factor");
    if (f) {
      SpectrumCertificate c{f->points, f->spectrum, false};
      o.require(verify_spectrum(c) && f->points.size() == 6, "Z_3^5 spectrum");
      o.require(243 % f->points.size() != 0, "size divides 3^5");
      d3 = "Z_3^5 size " + std::to_string(f->points.size());
    }
  }
  const auto committed = io::read_set(kData / "tao_z3_5.set");
  SpectrumCertificate ct{committed, io::read_set(kData / "tao_z3_5.set.spectrum"), false};
  o.require(verify_spectrum(ct) && committed.size() == 6, "committed Z_3^5 set");

  auto file = lonely::construct_B(5, lonely::BSource::file((kData / "b5.set").string()));
  o.require(file.certificate.verified && file.certificate.X.size() == 10, "committed B");
  auto search = lonely::construct_B(5, lonely::BSource::search());
  o.require(search.certificate.verified && search.certificate.X.size() == 10, "searched B");
  o.require(search.certificate.X == file.certificate.X, "committed B differs from a fresh search");
  o.require(decide_tile(file.certificate.X).verdict == TileVerdict::NonTile, "B tiles");
  o.detail = d3 + ", B in Z_5^4 size " + std::to_string(file.certificate.X.size()) + " (file and search)";
  return o;
}

std::uint64_t dot6(const Coords& a, const Coords& b) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::uint64_t(a[i]) * b[i];
  return s % 6;
}

Outcome construction() {
  Outcome o;
  const auto& inst = inst517();
  o.require(inst.A.size() == 1296 * 17, "|A|");
  o.require(inst.pt_size() == 220320 && inst.Pt && inst.Pt->size() == 220320, "|Pt|");
  const auto& G1 = inst.A.G1();
  for (std::uint32_t k = 0; k < 17; ++k) {
    const auto form = inst.A.form_of_layer(k);
    std::vector<std::uint64_t> layer;
    std::vector<std::uint8_t> in(G1.size(), 0);
    for (std::uint64_t g = 0; g < G1.size(); ++g)
      if (dot6(form, G1.coords(g)) == 0) {
        layer.push_back(g);
        in[g] = 1;
      }
    o.require(layer.size() == 1296, "layer size");
    bool closed = true;
    for (auto a : layer)
      for (auto b : layer) closed = closed && in[G1.add(a, b)];
    o.require(closed, "layer " + std::to_string(k) + " not closed");
    const auto L = inst.A.layer_subgroup(k);
    o.require(L.size() == 1296, "layer_subgroup size");
    for (auto g : layer) o.require(L.contains(g), "layer_subgroup membership");
    Coords c(6);
    for (auto g : layer) {
      auto u = G1.coords(g);
      std::copy(u.begin(), u.end(), c.begin());
      c[5] = k;
      o.require(inst.A.contains(inst.G.index(c)), "A membership");
    }
  }
  std::map<std::uint64_t, std::vector<std::uint64_t>> fibers;
  for (auto e : *inst.Pt) fibers[inst.g_of(e)].push_back(inst.h_of(e));
  o.require(fibers.size() == inst.A.size(), "fiber count");
  for (const auto& [g, hs] : fibers) {
    std::vector<std::uint64_t> want;
    for (auto b : inst.B.X) want.push_back(inst.H.add(b, inst.t.at(g)));
    std::sort(want.begin(), want.end());
    o.require(inst.A.contains(g) && hs == want, "fiber is not t(a) + B");
  }
  o.detail = "|A| = 22032, |Pt| = 220320, 17 layers of size 1296 closed under +, 22032 fibers = t(a) + B";
  return o;
}

Outcome non_tiling() {
  Outcome o;
  const auto& inst = inst517();
  o.require(lonely::certify_non_tile(inst).valid(), "standard shift map");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto other = inst.with_shift(lonely::random_shift_map(inst.A, inst.H, 1 + seed * 7, seed));
    o.require(lonely::certify_non_tile(other).valid(), "random shift map " + std::to_string(seed));
  }
  auto elems = inst.Pt->elements();
  elems[4242] = inst.join(inst.g_of(elems[4242]), inst.H.add(inst.h_of(elems[4242]), 3));
  bool caught = false;
  try {
    (void)lonely::certify_non_tile(inst, ElementSet(inst.E, elems));
  } catch (const lonely::FiberMismatch&) {
    caught = true;
  }
  o.require(caught, "injected fault not reported");
  o.detail = "20 random shift maps valid, injected fault -> FiberMismatch";
  return o;
}

Outcome pd_tiling() {
  Outcome o;
  const auto& inst = inst517();
  auto f = lonely::factor_witnesses(inst);
  o.require(f.w_A_report.passed() && f.w_B_report.passed(), "factor witnesses");
  auto r = lonely::certify_pd_tiling(inst, f.w_A, f.w_B);
  o.require(r.passed(), "coset-wise check");
  o.require(r.cosets_checked == 7776 * 17, "coset count");
  auto s = verify_pd_witness(inst.E, [&](std::uint64_t e) { return inst.in_Pt(e); }, r.witness.h,
                             SweepMode::sampled(10000, 0));
  o.require(s.passed(), "sampled pointwise check");
  o.detail = std::to_string(r.cosets_checked) + " cosets exhaustive, pointwise sampled(10^4) " +
             std::to_string(s.checked) + " checks";
  return o;
}

Outcome non_vanishing() {
  Outcome o;
  const auto& inst = inst517();
  auto r = lonely::verify_non_vanishing(inst, SweepMode::exhaustive());
  o.require(r.counterexamples.empty(), std::to_string(r.counterexamples.size()) + " counterexamples");
  o.require(r.cross_check_failures == 0, "cross-check failures");
  o.require(r.case_histogram[0] > 0 && r.case_histogram[1] > 0 && r.case_histogram[2] > 0, "a case class is missing");
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const auto g = rng() % inst.G.size(), h = rng() % inst.H.size();
    o.require(lonely::ft_Pt(inst, g, h) == lonely::ft_Pt_direct(inst, g, h), "closed form differs");
  }
  o.detail = std::to_string(r.duals_covered) + " duals, 0 counterexamples, classes " +
             std::to_string(r.case_histogram[0]) + "/" + std::to_string(r.case_histogram[1]) + "/" +
             std::to_string(r.case_histogram[2]) + ", 100 closed-form checks";
  return o;
}

std::vector<std::pair<std::string, ElementSet>> adversarial_candidates(const lonely::LonelyInstance& inst) {
  const auto& G = inst.G;
  const auto& H = inst.H;
  const auto& SB = inst.B.spectrum;
  auto product = [&](const std::vector<std::uint64_t>& gs, const ElementSet& hs) {
    std::vector<std::uint64_t> e;
    for (auto g : gs)
      for (auto h : hs) e.push_back(inst.join(g, h));
    return ElementSet(inst.E, e);
  };
  auto where = [&](const std::function<bool(const Coords&)>& pred) {
    std::vector<std::uint64_t> gs;
    for (std::uint64_t g = 0; g < G.size(); ++g)
      if (pred(G.coords(g))) gs.push_back(g);
    return gs;
  };
  const auto A = inst.A.materialize().elements();
  std::vector<std::pair<std::string, ElementSet>> out;
  out.emplace_back("A x S_B", product(A, SB));
  out.emplace_back("A x B", product(A, inst.B.X));
  out.emplace_back("coordinate subgroup x S_B", product(where([](const Coords& c) { return c[4] == 0; }), SB));
  out.emplace_back("layer-0 kernel x Z_q x S_B",
                   product(where([](const Coords& c) { return dot6(lonely::base_vector(), Coords(c.begin(), c.begin() + 5)) == 0; }), SB));
  out.emplace_back("Pt as characters", *inst.Pt);
  {
    std::vector<std::uint64_t> e(inst.pt_size());
    for (std::uint64_t i = 0; i < e.size(); ++i) e[i] = i;
    out.emplace_back("first |Pt| characters", ElementSet(inst.E, e));
  }
  {
    std::mt19937_64 rng(0);
    std::set<std::uint64_t> s{0};
    while (s.size() < inst.pt_size()) s.insert(rng() % inst.E.size());
    out.emplace_back("random", ElementSet(inst.E, {s.begin(), s.end()}));
  }
  {
    std::vector<std::uint64_t> e;
    for (auto rho : SB) {
      const auto i = rho % 5;
      for (std::uint64_t g = 0; g < G.size(); ++g)
        if (G.coords(g)[i] == 0) e.push_back(inst.join(g, rho));
    }
    out.emplace_back("subgroup per spectrum layer", ElementSet(inst.E, e));
  }
  {
    auto base = product(A, SB).elements();
    const auto shift = inst.join(G.index({1, 0, 2, 0, 3, 5}), H.index({1, 2, 3, 4}));
    for (auto& x : base) x = inst.E.add(x, shift);
    out.emplace_back("translated A x S_B", ElementSet(inst.E, base));
  }
  {
    auto other = inst.with_shift(lonely::random_shift_map(inst.A, inst.H, 50, 99));
    out.emplace_back("another Pt as characters", *other.Pt);
  }
  return out;
}

Outcome counting() {
  Outcome o;
  // independent integer evaluation
  const __int128 p = 5, q = 3761;
  const __int128 lhs = (2 * p - 1) * (1296 * q - 1) + p * p * p * p * 7776, rhs = 2 * p * 1296 * q;
  o.require(lhs == 48728295 && rhs == 48742560, "constants");
  auto c = lonely::counting_certificate(5, 3761);
  o.require(c.lhs == "48728295" && c.rhs == "48742560" && c.holds && c.full_scale, "counting certificate");

  const auto& inst = inst517();
  int refuted = 0;
  std::string how;
  for (const auto& [name, S] : adversarial_candidates(inst)) {
    o.require(S.size() == inst.pt_size(), name + " has the wrong size");
    auto a = lonely::analyze_spectrum_candidate(inst, S);
    o.require(a.refuted(), name + " not refuted");
    if (a.refuted()) ++refuted;
    if (a.non_orthogonal_pair) {
      // the pair, re-checked by summing over Pt
      const auto d = inst.E.sub(a.non_orthogonal_pair->first, a.non_orthogonal_pair->second);
      o.require(!lonely::ft_Pt_direct(inst, inst.g_of(d), inst.h_of(d)).is_zero(), name + ": pair is orthogonal");
      how += "p";
    } else {
      how += "s";
    }
  }
  o.detail = "48728295 < 48742560; " + std::to_string(refuted) + "/10 candidates refuted (" + how +
             ": p = explicit pair, s = structural)";
  return o;
}

Outcome lift_criterion() {
  Outcome o;
  const auto& inst = inst517();
  const lift::CrtMap m(5, 17);
  auto f = lonely::factor_witnesses(inst);
  auto pd = lonely::certify_pd_tiling(inst, f.w_A, f.w_B);
  const auto P = lift::flatten(inst);
  const auto w = lift::flatten(m, pd.witness.h);
  o.require(P.size() == inst.pt_size() && P.contains(0), "flatten");

  // dual map: transforms agree on 100 duals, half chosen inside the zero set
  const auto& ftB = lonely::ft_B_table(inst);
  std::vector<std::uint64_t> zero_rhos;
  for (std::uint64_t r = 0; r < ftB.size(); ++r)
    if (ftB[r].is_zero()) zero_rhos.push_back(r);
  const auto ind = GroupFunction::indicator(P);
  std::mt19937_64 rng(4);
  int zeros = 0;
  for (int i = 0; i < 100; ++i) {
    const auto g = rng() % inst.G.size();
    const auto h = i % 2 && !zero_rhos.empty() ? zero_rhos[rng() % zero_rhos.size()] : rng() % inst.H.size();
    const auto onE = lonely::ft_Pt(inst, g, h);
    const auto onF = dft(ind, m.dual(inst.join(g, h)));
    o.require(onE == onF, "dual map");
    zeros += onE.is_zero();
  }

  auto wr = verify_pd_witness(P, w, SweepMode::sampled(1000, 0));
  o.require(wr.passed(), "w on box");
  auto L = lift::periodize(P, w, 2, wr);
  L.p = 5;
  L.q = 17;
  o.require(L.pk_size() == 32 * inst.pt_size(), "|P(2)|");
  auto lr = lift::verify_lift(L, SweepMode::sampled(10000, 0));
  o.require(lr.passed(), "periodic convolution (5,17,2)");
  auto cm = lift::complement_measure(L, SweepMode::sampled(10000, 0));
  o.require(cm.origin_mass == Rational(1) && cm.nonnegative && cm.identity.passed(), "complement (5,17,2)");

  // toy box Z_12 x Z_6, full domain
  const auto box = make_group({12, 6});
  std::vector<std::uint64_t> pts, tr;
  for (std::uint32_t a = 0; a < 3; ++a)
    for (std::uint32_t b = 0; b < 2; ++b) pts.push_back(box.index({a, b}));
  for (std::uint32_t a = 0; a < 12; a += 3)
    for (std::uint32_t b = 0; b < 6; b += 2) tr.push_back(box.index({a, b}));
  TilingCertificate t{ElementSet(box, pts), ElementSet(box, tr)};
  o.require(verify_tiling(t), "toy tiling");
  const auto tw = pd_from_tiling(t).h;
  auto twr = verify_pd_witness(t.X, tw, SweepMode::exhaustive());
  auto TL = lift::periodize(t.X, tw, 2, twr);
  o.require(lift::verify_lift(TL, SweepMode::exhaustive()).passed(), "toy full domain");
  o.require(lift::verify_lift(TL, SweepMode::exhaustive(), {-7, 3}).passed(), "toy shifted domain");
  auto tcm = lift::complement_measure(TL, SweepMode::exhaustive());
  o.require(tcm.identity.passed() && tcm.nonnegative && tcm.origin_mass == Rational(1), "toy complement");

  // round trip at k = 1
  fs::create_directories(kWork);
  auto L1 = lift::periodize(P, w, 1, wr);
  L1.p = 5;
  L1.q = 17;
  lift::export_cubes(L1, kWork / "cubes_k1.json", lonely::trusted_citations());
  auto back = lift::import_cubes(kWork / "cubes_k1.json");
  lift::export_cubes(back, kWork / "cubes_k1_again.json");
  o.require(back.cube_count() == 220320, "cube count");
  o.require(slurp(kWork / "cubes_k1.json") == slurp(kWork / "cubes_k1_again.json"), "round trip bytes");
  fs::remove(kWork / "cubes_k1.json");
  fs::remove(kWork / "cubes_k1_again.json");

  o.detail = "100 duals agree (" + std::to_string(zeros) + " zeros); k=2 sampled(10^4) " + std::to_string(lr.checked) +
             " points; toy box full domain; complement identity; 220320 cubes round-trip";
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::string b5 = (kData / "b5.set").string();
  const std::vector<std::string> script{
      "construct --p 5 --q 17 --b-file '" + b5 + "' --out inst",
      "verify non-tile --instance inst/instance.json",
      "verify non-vanishing --instance inst/instance.json --mode sampled:300",
      "verify counting --instance full/instance.json",
      "check spectral '" + (kData / "tao_z3_5.set").string() + "' --out checks",
      "check pdtile '" + (kData / "z4_012.set").string() + "' --out checks",
  };
  const fs::path r1 = kWork / "det1", r2 = kWork / "det2";
  for (const auto& r : {r1, r2}) {
    fs::remove_all(r);
    o.require(run_cli(r, "construct --p 5 --q 3761 --b-file '" + b5 + "' --out full") == 0, "full-scale construct");
  }
  for (const auto& cmd : script) {
    o.require(run_cli(r1, cmd) == 0, cmd);
    o.require(run_cli(r2, cmd, "WEAKTILE_WORKERS=2") == 0, cmd + " (2 workers)");
  }
  std::size_t compared = 0;
  for (const auto& e : fs::recursive_directory_iterator(r1)) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), r1);
    const auto name = rel.filename().string();
    if (name == "cli.log" || name.find(".timings.json") != std::string::npos) continue;
    o.require(fs::exists(r2 / rel) && slurp(e.path()) == slurp(r2 / rel), rel.string() + " differs");
    ++compared;
  }

  // exit-code contract
  const fs::path x = kWork / "exit";
  o.require(run_cli(x, "construct --p 3 --q 17") == 2, "p = 3 not rejected with 2");
  o.require(run_cli(x, "check tile '" + (kData / "z4_01.set").string() + "'") == 0, "check tile exit 0");
  o.require(run_cli(x, "check spectral '" + b5 + "' --budget 1") == 4, "budget exhaustion not 4");
  o.require(run_cli(x, "verify counting --instance '" + (r1 / "inst/instance.json").string() + "'") == 3,
            "failed inequality not 3");
  o.require(run_cli(x, "frobnicate") == 2, "bad usage not 2");
  o.detail = std::to_string(compared) + " certificate and manifest files byte-identical across runs; exit codes 0/2/3/4";
  return o;
}

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "exact arithmetic", 60, exact_core},
      {2, "fourier identities", 120, fourier_suite},
      {3, "small-group cross-tabulation", 600, fuglede_small},
      {4, "spectral non-tile building blocks", 600, building_block},
      {5, "construction invariants (5,17)", 300, construction},
      {6, "non-tiling fibers", 600, non_tiling},
      {7, "pd-tiling witness", 1800, pd_tiling},
      {8, "non-vanishing sweep", 3600, non_vanishing},
      {9, "counting bound and candidates", 1800, counting},
      {10, "lift", 1800, lift_criterion},
      {11, "determinism and CLI", 1800, determinism},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.problems.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) o.require(false, "over the time limit");
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): " << o.detail;
    for (const auto& p : o.problems) std::cout << " [" << p << "]";
    char buf[32];
    std::snprintf(buf, sizeof buf, " %.1fs", secs);
    std::cout << buf << std::endl;
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
