#include <doctest.h>

#include <random>

#include "weaktile/fourier.hpp"

using namespace weaktile;
using cyclo::CyclotomicNumber;

namespace {

GroupFunction random_function(const GroupSpec& g, std::mt19937_64& rng, int points) {
  std::vector<GroupFunction::Entry> w;
  for (int i = 0; i < points; ++i) {
    w.emplace_back(rng() % g.size(), Rational(static_cast<std::int64_t>(rng() % 11) - 5, 1 + rng() % 6));
  }
  return {g, std::move(w)};
}

// direct oracle: sum over every group element with char_eval
CyclotomicNumber naive_dft(const GroupFunction& f, std::uint64_t chi) {
  const auto& g = f.spec();
  CyclotomicNumber s;
  for (std::uint64_t x = 0; x < g.size(); ++x) {
    auto v = f.at(x);
    if (!v.is_zero()) s += char_eval(g, {g.coords(chi)}, g.element(x)).scaled(v);
  }
  return s;
}

}  // namespace

TEST_CASE("dft examples") {
  auto z4 = make_group({4});
  auto d0 = GroupFunction::delta(z4, 0);
  for (std::uint64_t c = 0; c < 4; ++c) CHECK(dft(d0, c) == CyclotomicNumber(1));
  auto full = GroupFunction::indicator(ElementSet(z4, {0, 1, 2, 3}));
  CHECK(dft(full, 0) == CyclotomicNumber(4));
  for (std::uint64_t c = 1; c < 4; ++c) CHECK(dft(full, c).is_zero());
  auto f = GroupFunction::indicator(ElementSet(z4, {0, 2}));
  std::vector<std::int64_t> want{2, 0, 2, 0};
  for (std::uint64_t c = 0; c < 4; ++c) CHECK(dft(f, c) == CyclotomicNumber(want[c]));
  CHECK(dft(f, Character{{2}}) == CyclotomicNumber(2));
}

TEST_CASE("dft agrees with the naive sum") {
  std::mt19937_64 rng(11);
  auto g = make_group({4, 3, 5});
  for (int it = 0; it < 20; ++it) {
    auto f = random_function(g, rng, 6);
    for (int k = 0; k < 10; ++k) {
      auto chi = rng() % g.size();
      CHECK(dft(f, chi) == naive_dft(f, chi));
    }
  }
}

TEST_CASE("convolution examples") {
  auto z4 = make_group({4});
  auto a = GroupFunction::indicator(ElementSet(z4, {0, 1}));
  auto b = GroupFunction::indicator(ElementSet(z4, {0, 2}));
  CHECK(convolve(a, b) == GroupFunction::indicator(ElementSet(z4, {0, 1, 2, 3})));
  CHECK(convolve(GroupFunction::delta(z4, 0), a) == a);
  CHECK(convolve_at(a, b, 3) == Rational(1));

  std::mt19937_64 rng(3);
  auto h = make_group({5, 5, 5, 5});
  for (int it = 0; it < 5; ++it) {
    std::vector<std::uint64_t> pts;
    for (int i = 0; i < 10; ++i) pts.push_back(rng() % h.size());
    ElementSet B(h, pts);
    auto shift = rng() % h.size();
    CHECK(GroupFunction::indicator(B.translate(shift)) ==
          convolve(GroupFunction::delta(h, shift), GroupFunction::indicator(B)));
  }
  CHECK_THROWS_AS(convolve(a, GroupFunction::delta(make_group({5}), 0)), ShapeMismatch);
}

TEST_CASE("tensor products") {
  auto g = make_group({4});
  auto h = make_group({3});
  auto pg = product(g, h);
  CHECK(tensor(GroupFunction::delta(g, 0), GroupFunction::delta(h, 0)) == GroupFunction::delta(pg.whole, 0));
  std::mt19937_64 rng(8);
  for (int it = 0; it < 10; ++it) {
    auto u = random_function(g, rng, 4);
    auto v = random_function(h, rng, 4);
    auto uv = tensor(u, v);
    auto left = tensor(u, GroupFunction::delta(h, 0));
    auto right = tensor(GroupFunction::delta(g, 0), v);
    CHECK(convolve(left, right) == uv);
    for (std::uint64_t a = 0; a < g.size(); ++a)
      for (std::uint64_t b = 0; b < h.size(); ++b) CHECK(dft(uv, pg.join(a, b)) == dft(u, a) * dft(v, b));
  }
  auto A = ElementSet(g, {0, 1});
  auto B = ElementSet(h, {0, 2});
  CHECK(tensor(GroupFunction::indicator(A), GroupFunction::indicator(B)) ==
        GroupFunction::indicator(ElementSet(pg.whole, {pg.join(0, 0), pg.join(0, 2), pg.join(1, 0), pg.join(1, 2)})));
}

TEST_CASE("zero sets") {
  auto z4 = make_group({4});
  auto full = GroupFunction::indicator(ElementSet(z4, {0, 1, 2, 3}));
  CHECK(zero_set(full, SweepMode::exhaustive()).zeros == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(zero_set(GroupFunction::delta(z4, 0), SweepMode::exhaustive()).zeros.empty());
  auto f = GroupFunction::indicator(ElementSet(z4, {0, 2}));
  auto zs = zero_set(f, SweepMode::exhaustive());
  CHECK(zs.zeros == std::vector<std::uint64_t>{1, 3});
  CHECK(zs.complete);
  CHECK(zero_set(f.translated(1), SweepMode::exhaustive()).zeros == zs.zeros);
  auto sampled = zero_set(f, SweepMode::sampled(50, 1));
  CHECK_FALSE(sampled.complete);
  for (auto z : sampled.zeros) CHECK((z == 1 || z == 3));
}

TEST_CASE("positive definiteness") {
  auto z4 = make_group({4});
  CHECK(is_positive_definite(GroupFunction::delta(z4, 0)).positive_definite);
  auto f = GroupFunction::indicator(ElementSet(z4, {0, 2}));
  CHECK(is_positive_definite(f).positive_definite);
  auto r = is_positive_definite(GroupFunction::delta(z4, 1));
  CHECK_FALSE(r.even);
  CHECK_FALSE(r.positive_definite);
  auto neg = GroupFunction(z4, {{1, Rational(1)}, {3, Rational(1)}});  // transform 2cos -> -2 at chi=2
  auto rn = is_positive_definite(neg);
  CHECK(rn.even);
  CHECK_FALSE(rn.positive_definite);
  CHECK(rn.violations == std::vector<std::uint64_t>{2});
}

TEST_CASE("parseval and inversion") {
  CHECK(parseval_check(GroupFunction::delta(make_group({6}), 0)));
  auto z4 = make_group({4});
  CHECK(parseval_check(GroupFunction::indicator(ElementSet(z4, {0, 1}))));
  std::mt19937_64 rng(2);
  auto z12 = make_group({12});
  for (int it = 0; it < 10; ++it) {
    auto f = random_function(z12, rng, 7);
    CHECK(parseval_check(f));
    CHECK(inverse_transform(z12, full_transform(f)) == f);
  }
}
