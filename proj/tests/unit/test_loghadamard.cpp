#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "weaktile/deciders.hpp"
#include "weaktile/loghadamard.hpp"

using namespace weaktile;

namespace {

// float oracle: rows i != j give sum_c w_p^(m[i][c] - m[j][c]) = 0
bool rows_orthogonal_numerically(const Matrix& m, std::uint32_t p) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      std::complex<double> s = 0;
      for (std::size_t c = 0; c < m[i].size(); ++c) {
        const double a = 2 * std::numbers::pi * double((m[i][c] + p - m[j][c]) % p) / p;
        s += std::polar(1.0, a);
      }
      if (std::abs(s) > 1e-9) return false;
    }
  return true;
}

bool orthogonal_numerically(const ElementSet& X, const ElementSet& S) {
  const auto& g = X.spec();
  const double n = double(g.exponent());
  for (auto a : S)
    for (auto b : S) {
      if (a == b) continue;
      std::complex<double> s = 0;
      const auto ca = g.coords(a), cb = g.coords(b);
      for (auto x : X) {
        const auto cx = g.coords(x);
        double e = 0;
        for (std::size_t i = 0; i < cx.size(); ++i)
          e += double((ca[i] + g.orders()[i] - cb[i]) % g.orders()[i]) * cx[i] / g.orders()[i];
        s += std::polar(1.0, 2 * std::numbers::pi * e);
      }
      if (std::abs(s) > 1e-9 * n) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("rank over Z_p") {
  CHECK(rank_mod_p({{1, 2}, {2, 4}}, 5) == 1);
  CHECK(rank_mod_p({{1, 2}, {2, 1}}, 3) == 1);
  CHECK(rank_mod_p({{1, 2}, {2, 1}}, 5) == 2);
  CHECK(rank_mod_p({{0, 0}, {0, 0}}, 7) == 0);
}

TEST_CASE("is_log_hadamard rejects broken matrices") {
  CHECK_FALSE(is_log_hadamard({{0, 0}, {0, 1}}, 3));
  auto r = search_log_hadamard(3, 5, Budget{50'000'000});
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(is_log_hadamard(r.matrix, 3));
  Matrix m = r.matrix;
  m[2][3] = (m[2][3] + 1) % 3;
  CHECK_FALSE(is_log_hadamard(m, 3));
  CHECK_FALSE(rows_orthogonal_numerically(m, 3));
}

TEST_CASE("search finds 6x6 over Z_3 and 10x10 over Z_5") {
  for (auto [p, d] : {std::pair<std::uint32_t, std::size_t>{3, 5}, {5, 4}}) {
    auto r = search_log_hadamard(p, d, Budget{50'000'000});
    REQUIRE(r.status == SearchStatus::Found);
    CHECK(r.matrix.size() == 2 * p);
    CHECK(is_log_hadamard(r.matrix, p));
    CHECK(rows_orthogonal_numerically(r.matrix, p));
    CHECK(rank_mod_p(r.matrix, p) <= d);

    auto f = factor_log_hadamard(r.matrix, p, d);
    REQUIRE(f.has_value());
    CHECK(f->points.size() == 2 * p);
    CHECK(f->spectrum.size() == 2 * p);
    CHECK(orthogonal_numerically(f->points, f->spectrum));
    SpectrumCertificate c{f->points, f->spectrum, false};
    CHECK(verify_spectrum(c));
    // 2p does not divide p^d
    CHECK(f->points.spec().size() % f->points.size() != 0);
  }
}

TEST_CASE("search respects the budget") {
  auto r = search_log_hadamard(5, 4, Budget{10});
  CHECK(r.status == SearchStatus::BudgetExceeded);
}

TEST_CASE("factoring rejects excess rank") {
  auto r = search_log_hadamard(3, 5, Budget{50'000'000});
  REQUIRE(r.status == SearchStatus::Found);
  const auto rank = rank_mod_p(r.matrix, 3);
  REQUIRE(rank >= 2);
  CHECK_FALSE(factor_log_hadamard(r.matrix, 3, rank - 1).has_value());
}
