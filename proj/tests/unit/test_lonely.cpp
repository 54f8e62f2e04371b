#include <doctest.h>

#include <algorithm>
#include <complex>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "weaktile/lonely.hpp"

using namespace weaktile;
using namespace weaktile::lonely;

namespace {

const LonelyInstance& inst517() {
  static const LonelyInstance inst = build_instance(5, 17, BSource::search());
  return inst;
}

std::uint64_t dot6(const Coords& a, const Coords& b) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::uint64_t(a[i]) * b[i];
  return s % 6;
}

// brute-force transform of 1_Pt at (gamma, rho) in floating point
std::complex<double> ft_Pt_float(const LonelyInstance& inst, std::uint64_t gamma, std::uint64_t rho) {
  std::complex<double> s = 0;
  const double n = double(inst.E.exponent());
  const auto chi = inst.join(gamma, rho);
  for (auto e : *inst.Pt) s += std::polar(1.0, 2 * std::numbers::pi * double(inst.E.pairing(chi, e)) / n);
  return s;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(build_instance(3, 17, BSource::search()), ParameterError);
  CHECK_THROWS_AS(build_instance(5, 13, BSource::search()), ParameterError);
  CHECK_THROWS_AS(build_instance(5, 21, BSource::search()), ParameterError);
  CHECK_THROWS_AS(build_instance(4, 17, BSource::search()), ParameterError);
  CHECK_THROWS_AS(construct_A(13), ParameterError);
  // dependent basis
  auto b = standard_basis(5);
  b[3] = b[0];
  CHECK_THROWS_AS(build_instance(5, 17, BSource::search(), b), ParameterError);
}

TEST_CASE("sizes at (5, 17)") {
  const auto& inst = inst517();
  CHECK(inst.A.size() == 1296 * 17);
  CHECK(inst.B.X.size() == 10);
  CHECK(inst.B.verified);
  CHECK(inst.pt_size() == 220320);
  REQUIRE(inst.Pt.has_value());
  CHECK(inst.Pt->size() == 220320);
  CHECK_FALSE(inst.full_scale);
  CHECK(inst.in_Pt(0));
}

TEST_CASE("layers are kernels of permuted forms") {
  const LayeredTile A = construct_A(17);
  std::set<Coords> forms;
  for (std::uint32_t k = 0; k < 120; ++k) forms.insert(A.form_of_layer(k));
  CHECK(forms.size() == 120);
  for (const auto& f : forms) {
    Coords s = f;
    std::sort(s.begin(), s.end());
    CHECK(s == base_vector());
  }
  CHECK(A.form_of_layer(0) == base_vector());
  CHECK(A.form_of_layer(1) == Coords{1, 2, 3, 5, 4});
  CHECK(A.form_of_layer(120) == A.form_of_layer(0));

  for (std::uint32_t k : {0u, 7u, 16u}) {
    auto L = A.layer_subgroup(k);
    CHECK(L.size() == 1296);
    std::uint64_t count = 0;
    for (std::uint64_t g1 = 0; g1 < A.G1().size(); ++g1)
      if (dot6(A.form_of_layer(k), A.G1().coords(g1)) == 0) {
        ++count;
        CHECK(L.contains(g1));
      }
    CHECK(count == 1296);
  }

  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto g = rng() % A.G().size();
    const auto c = A.G().coords(g);
    const Coords u1(c.begin(), c.begin() + 5);
    CHECK(A.contains(g) == (dot6(A.form_of_layer(c[5]), u1) == 0));
  }
}

TEST_CASE("tiling complement of A") {
  const LayeredTile A = construct_A(17);
  auto t = tiling_complement_A(A);
  CHECK(t.verified);
  CHECK(t.translations.size() == 6);
  // independent count: every element of G covered exactly once
  std::vector<std::uint8_t> hit(A.G().size(), 0);
  const auto X = A.materialize();
  for (auto a : X)
    for (auto l : t.translations) ++hit[A.G().add(a, l)];
  CHECK(std::all_of(hit.begin(), hit.end(), [](auto h) { return h == 1; }));
}

TEST_CASE("fibers of Pt are translates of B") {
  const auto& inst = inst517();
  std::map<std::uint64_t, std::vector<std::uint64_t>> fibers;
  for (auto e : *inst.Pt) fibers[inst.g_of(e)].push_back(inst.h_of(e));
  CHECK(fibers.size() == inst.A.size());
  for (const auto& [g, hs] : fibers) {
    REQUIRE(inst.A.contains(g));
    std::vector<std::uint64_t> want;
    for (auto b : inst.B.X) want.push_back(inst.H.add(b, inst.t.at(g)));
    std::sort(want.begin(), want.end());
    CHECK(hs == want);
  }
  auto c = certify_non_tile(inst);
  CHECK(c.valid());
  CHECK(c.fibers_checked == inst.A.size());
}

TEST_CASE("injected fault is caught") {
  const auto& inst = inst517();
  auto elems = inst.Pt->elements();
  elems.erase(elems.begin() + 12345);
  CHECK_THROWS_AS(certify_non_tile(inst, ElementSet(inst.E, elems)), FiberMismatch);

  auto moved = inst.Pt->elements();
  moved[777] = inst.join(inst.g_of(moved[777]), inst.H.add(inst.h_of(moved[777]), 1));
  CHECK_THROWS_AS(certify_non_tile(inst, ElementSet(inst.E, moved)), FiberMismatch);
}

TEST_CASE("random shift maps") {
  const auto& inst = inst517();
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    auto other = inst.with_shift(random_shift_map(inst.A, inst.H, 20, seed));
    CHECK(certify_non_tile(other).valid());
  }
}

TEST_CASE("case classes") {
  CHECK(classify({0, 0, 0, 0, 0}) == CaseClass::AllFull);
  CHECK(classify({1, 2, 3, 4, 5}) == CaseClass::Mixed);
  CHECK(classify({2, 4, 0, 2, 4}) == CaseClass::Mixed);   // 2 * (1,2,3,4,5)
  CHECK(classify({5, 4, 3, 2, 1}) == CaseClass::Mixed);
  CHECK(classify({1, 0, 0, 0, 0}) == CaseClass::AllZero);
  CHECK(mixed_class().size() == 160);
  CHECK(to_string(CaseClass::Mixed) == "mixed");
}

TEST_CASE("ft_A matches a direct sum") {
  const LayeredTile A = construct_A(17);
  const auto X = A.materialize();
  const double n = double(A.G().exponent());
  std::mt19937_64 rng(5);
  std::vector<Coords> gammas{{0, 0, 0, 0, 0}, {1, 2, 3, 4, 5}, {3, 0, 3, 0, 3}, {1, 1, 0, 0, 0}};
  for (const auto& g1 : gammas)
    for (std::uint32_t g2 : {0u, 1u, 9u}) {
      Coords chi = g1;
      chi.push_back(g2);
      const auto gi = A.G().index(chi);
      std::complex<double> s = 0;
      for (auto x : X) s += std::polar(1.0, 2 * std::numbers::pi * double(A.G().pairing(gi, x)) / n);
      auto f = ft_A(A, g1, g2);
      CHECK(std::abs(f.value.approx() - s) < 1e-6);
      CHECK(f.tag == classify(g1));
    }
  auto full = ft_A(A, {0, 0, 0, 0, 0}, 0);
  CHECK(full.value == cyclo::CyclotomicNumber(Rational(1296 * 17)));
}

TEST_CASE("closed-form transform of Pt") {
  const auto& inst = inst517();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto gamma = rng() % inst.G.size(), rho = rng() % inst.H.size();
    const auto closed = ft_Pt(inst, gamma, rho);
    CHECK(closed == ft_Pt_direct(inst, gamma, rho));
    if (i < 4) CHECK(std::abs(closed.approx() - ft_Pt_float(inst, gamma, rho)) < 1e-6);
  }
}

TEST_CASE("non-vanishing sweep, sampled") {
  const auto& inst = inst517();
  auto r = verify_non_vanishing(inst, SweepMode::sampled(300, 0));
  CHECK(r.passed());
  CHECK(r.zero_test == "direct+relative");
  auto again = verify_non_vanishing(inst, SweepMode::sampled(300, 0));
  CHECK(again.evaluations == r.evaluations);
  CHECK(again.case_histogram == r.case_histogram);
}

TEST_CASE("pd-tiling certificate") {
  const auto& inst = inst517();
  auto f = factor_witnesses(inst);
  CHECK(f.w_A_report.passed());
  CHECK(f.w_B_report.passed());
  auto r = certify_pd_tiling(inst, f.w_A, f.w_B);
  CHECK(r.passed());
  CHECK(r.cosets_checked == 7776 * 17);
  CHECK(r.witness.h.at(0) == Rational(1));
}

TEST_CASE("counting certificate") {
  // (2p - 1)(6^4 q - 1) + p^4 6^5 against 2p 6^4 q
  auto oracle = [](std::int64_t p, std::int64_t q) {
    return std::pair{(2 * p - 1) * (1296 * q - 1) + p * p * p * p * 7776, 2 * p * 1296 * q};
  };
  auto c = counting_certificate(5, 3761);
  const auto [l, r] = oracle(5, 3761);
  CHECK(c.lhs == std::to_string(l));
  CHECK(c.rhs == std::to_string(r));
  CHECK(c.lhs == "48728295");
  CHECK(c.rhs == "48742560");
  CHECK(c.holds);
  CHECK(c.full_scale);
  auto small = counting_certificate(5, 17);
  CHECK_FALSE(small.holds);
  CHECK_FALSE(small.full_scale);
  const auto [l7, r7] = oracle(7, 15569);
  auto c7 = counting_certificate(7, 15569);
  CHECK(c7.lhs == std::to_string(l7));
  CHECK(c7.holds == (l7 < r7));
}

TEST_CASE("full-scale instance is not materialized") {
  auto inst = build_instance(5, 3761, BSource::search());
  CHECK(inst.full_scale);
  CHECK_FALSE(inst.Pt.has_value());
  CHECK(inst.pt_size() == 48742560);
}

TEST_CASE("spectrum candidates are refuted") {
  const auto& inst = inst517();
  // wrong size
  CHECK(analyze_spectrum_candidate(inst, ElementSet(inst.E, {0, 1, 2})).refuted());
  // right size: first |Pt| characters in index order
  std::vector<std::uint64_t> first(inst.pt_size());
  for (std::uint64_t i = 0; i < first.size(); ++i) first[i] = i;
  auto a = analyze_spectrum_candidate(inst, ElementSet(inst.E, first));
  CHECK(a.refuted());
  CHECK(a.non_orthogonal_pair.has_value());
}
