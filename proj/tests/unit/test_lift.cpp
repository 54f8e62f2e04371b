#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "weaktile/lift.hpp"

using namespace weaktile;
using namespace weaktile::lift;

namespace {

std::uint32_t crt_brute(std::uint32_t a, std::uint32_t m, std::uint32_t b, std::uint32_t n) {
  for (std::uint32_t x = 0; x < m * n; ++x)
    if (x % m == a && x % n == b) return x;
  return ~0u;
}

// exponent of chi(x) as a fraction of 1, scaled by L = lcm of orders
std::uint64_t pairing_scaled(const GroupSpec& g, const Coords& chi, const Coords& x, std::uint64_t L) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::uint64_t(chi[i]) * x[i] % g.orders()[i] * (L / g.orders()[i]);
  return s % L;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Toy {
  GroupSpec box = make_group({12, 6});
  ElementSet P;
  GroupFunction w;
  VerificationReport report;
  Toy() {
    std::vector<std::uint64_t> pts, tr;
    for (std::uint32_t a = 0; a < 3; ++a)
      for (std::uint32_t b = 0; b < 2; ++b) pts.push_back(box.index({a, b}));
    for (std::uint32_t a = 0; a < 12; a += 3)
      for (std::uint32_t b = 0; b < 6; b += 2) tr.push_back(box.index({a, b}));
    P = ElementSet(box, pts);
    TilingCertificate t{P, ElementSet(box, tr)};
    REQUIRE(verify_tiling(t));
    w = pd_from_tiling(t).h;
    report = verify_pd_witness(P, w, SweepMode::exhaustive());
    REQUIRE(report.passed());
  }
};

}  // namespace

TEST_CASE("CRT map against brute force") {
  const CrtMap m(5, 17);
  CHECK(m.box().orders() == std::vector<std::uint32_t>{30, 30, 30, 30, 102});
  CHECK(m.flatten(0) == 0);
  const auto& E = m.E();
  const auto& F = m.box();
  std::mt19937_64 rng(1);
  for (int i = 0; i < 3000; ++i) {
    const auto e = rng() % E.size();
    const auto z = E.coords(e);  // u1 (5), u2, h (4)
    Coords want(5);
    for (int j = 0; j < 4; ++j) want[j] = crt_brute(z[j], 6, z[6 + j], 5);
    want[4] = crt_brute(z[4], 6, z[5], 17);
    const auto x = m.flatten(e);
    CHECK(F.coords(x) == want);
    CHECK(m.unflatten(x) == e);

    // characters: chi_F(flatten(z)) = chi_E(z)
    const auto chi = rng() % E.size();
    const auto c = m.dual(chi);
    const std::uint64_t L = 30 * 17 * 6;
    CHECK(pairing_scaled(F, F.coords(c), F.coords(x), L) == pairing_scaled(E, E.coords(chi), z, L));
  }
}

TEST_CASE("periodize a toy tile, full domain") {
  Toy toy;
  for (std::uint32_t k : {1u, 2u, 3u}) {
    auto L = periodize(toy.P, toy.w, k, toy.report);
    CHECK(L.pk_size() == std::uint64_t(k) * k * toy.P.size());
    CHECK(L.domain.orders() == std::vector<std::uint32_t>{12 * k, 6 * k});
    CHECK(L.anchors().size() == L.pk_size());
    auto r = verify_lift(L, SweepMode::exhaustive());
    CHECK(r.passed());
    CHECK(r.checked == L.domain.size());
    // another fundamental domain
    CHECK(verify_lift(L, SweepMode::exhaustive(), {-5, 7}).passed());
  }
  auto L1 = periodize(toy.P, toy.w, 1, toy.report);
  CHECK(L1.anchors() == toy.P.elements());
}

TEST_CASE("lift catches a wrong weight") {
  Toy toy;
  auto L = periodize(toy.P, toy.w, 2, toy.report);
  L.w = L.w + GroupFunction::delta(toy.box, toy.box.index({1, 1}), Rational(1, 2));
  CHECK_FALSE(verify_lift(L, SweepMode::exhaustive()).passed());

  VerificationReport bad{"exhaustive", 1, {"no"}};
  CHECK_THROWS(periodize(toy.P, toy.w, 2, bad));
}

TEST_CASE("complement measure") {
  Toy toy;
  auto L = periodize(toy.P, toy.w, 2, toy.report);
  auto c = complement_measure(L, SweepMode::exhaustive());
  CHECK(c.origin_mass == Rational(1));
  CHECK(c.nonnegative);
  CHECK(c.identity.passed());
  CHECK(c.mu.at(0) == Rational(0));
}

TEST_CASE("cube export round trip") {
  Toy toy;
  const auto dir = std::filesystem::temp_directory_path() / "weaktile_unit_cubes";
  std::filesystem::create_directories(dir);
  auto L = periodize(toy.P, toy.w, 2, toy.report);
  export_cubes(L, dir / "a.json", {"note"});
  auto back = import_cubes(dir / "a.json");
  CHECK(back.k == 2);
  CHECK(back.box == std::vector<std::uint32_t>{24, 12});
  CHECK(back.cube_count() == L.pk_size());
  CHECK(back.trusted_citations == std::vector<std::string>{"note"});
  // anchors against the lift's own point list
  const auto a = L.anchors();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto c = L.domain.coords(a[i]);
    CHECK(back.anchors[2 * i] == c[0]);
    CHECK(back.anchors[2 * i + 1] == c[1]);
  }
  export_cubes(back, dir / "b.json");
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  std::filesystem::remove_all(dir);
}
