#include <doctest.h>

#include "weaktile/group.hpp"

using namespace weaktile;
using cyclo::CyclotomicNumber;

TEST_CASE("make_group sizes") {
  auto g = make_group({6, 6, 6, 6, 6, 17});
  CHECK(g.size() == 132192);
  CHECK(g.exponent() == 102);
  CHECK(make_group({4}).exponent() == 4);
  CHECK(make_group({5, 5, 5, 5}).size() == 625);
  CHECK_THROWS(make_group({}));
  CHECK_THROWS(make_group({3, 0}));
}

TEST_CASE("product embeddings") {
  auto g = make_group({6, 6, 6, 6, 6, 17});
  auto pg = product(g, make_group({5, 5, 5, 5}));
  CHECK(pg.whole.rank() == 10);
  CHECK(pg.whole.exponent() == 510);
  CHECK(pg.join(pg.project_first(pg.embed_first(77)), 0) == pg.embed_first(77));
  CHECK(pg.project_second(pg.embed_second(311)) == 311);
  CHECK(pg.whole.add(pg.embed_first(0), pg.embed_second(0)) == 0);
  auto z4 = product(make_group({4}), make_group({1}));
  CHECK(z4.whole.size() == 4);
  // index layout agrees with coordinate concatenation
  Coords a{1, 2, 3, 4, 5, 16}, b{4, 3, 2, 1};
  Coords ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  CHECK(pg.join(g.index(a), pg.second.index(b)) == pg.whole.index(ab));
}

TEST_CASE("character evaluation") {
  auto z4 = make_group({4});
  CHECK(char_eval(z4, {{1}}, {{2}}) == CyclotomicNumber(-1));
  auto g = make_group({6, 6, 6, 6, 6});
  CHECK(char_eval(g, {{1, 2, 3, 4, 5}}, {{1, 1, 1, 1, 1}}) == CyclotomicNumber(-1));
  CHECK(char_eval(g, {{0, 0, 0, 0, 0}}, {{1, 5, 2, 1, 1}}) == CyclotomicNumber(1));
}

TEST_CASE("character orthogonality on small groups") {
  for (auto orders : std::vector<std::vector<std::uint32_t>>{{12}, {2, 6}, {3, 3, 3}, {4, 5}}) {
    auto g = make_group(orders);
    for (std::uint64_t chi = 0; chi < g.size(); ++chi) {
      cyclo::Accumulator acc(g.exponent());
      for (std::uint64_t z = 0; z < g.size(); ++z) acc.add_root(1, g.pairing(chi, z));
      auto s = acc.finish();
      if (chi == 0) {
        CHECK(s == CyclotomicNumber(static_cast<std::int64_t>(g.size())));
      } else {
        CHECK(s.is_zero());
      }
    }
  }
}

TEST_CASE("kernel of a linear form") {
  auto g = make_group({6, 6, 6, 6, 6});
  auto k = kernel_of_form(g, {1, 2, 3, 4, 5});
  CHECK(k.size() == 1296);
  REQUIRE(k.materialized());
  CHECK_FALSE(k.contains(g.index({1, 1, 1, 1, 1})));
  CHECK(k.contains(0));
  const auto& el = k.elements();
  bool closed = true;
  for (auto x : el)
    for (auto y : el)
      if (!k.contains(g.add(x, y))) closed = false;
  CHECK(closed);
  CHECK(kernel_of_form(g, {0, 0, 0, 0, 0}).full_group());
  CHECK(kernel_of_form(g, {2, 0, 0, 0, 0}).size() == 6 * 6 * 6 * 6 * 2);
}

TEST_CASE("annihilators") {
  auto z4 = make_group({4});
  auto trivial = Subgroup::from_elements(z4, {0}, {});
  CHECK(annihilator(trivial).size() == 4);
  auto whole = Subgroup::generated_by(z4, {1});
  CHECK(annihilator(whole).elements() == std::vector<std::uint64_t>{0});
  auto two = Subgroup::generated_by(z4, {2});
  CHECK(annihilator(two).elements() == std::vector<std::uint64_t>{0, 2});

  auto g = make_group({2, 6, 3});
  auto s = Subgroup::generated_by(g, {g.index({1, 2, 0}), g.index({0, 3, 1})});
  auto ann = annihilator(s);
  CHECK(s.size() * ann.size() == g.size());
  CHECK(annihilator(ann).elements() == s.elements());
}

TEST_CASE("enumeration") {
  std::size_t n = 0;
  for (auto e : enumerate(make_group({2, 2}))) {
    if (n == 0) CHECK(e.coords == Coords{0, 0});
    ++n;
  }
  CHECK(n == 4);
  n = 0;
  for (auto e : enumerate_dual(make_group({5, 5, 5, 5}))) (void)e, ++n;
  CHECK(n == 625);
  auto old = group_limits().enumeration_cap;
  group_limits().enumeration_cap = 100;
  CHECK_THROWS_AS(enumerate(make_group({5, 5, 5, 5})), CapExceeded);
  group_limits().enumeration_cap = old;
}

TEST_CASE("S5 enumeration") {
  const auto& perms = s5_enumeration();
  CHECK(perms.size() == 120);
  Coords v{1, 2, 3, 4, 5};
  CHECK(permute_vector(perms[0], v) == v);
  CHECK(permute_vector({1, 0, 2, 3, 4}, v) == Coords{2, 1, 3, 4, 5});
  CHECK(std::is_sorted(perms.begin(), perms.end()));
}

TEST_CASE("group spec parse") {
  auto g = GroupSpec::parse("6,6,17");
  CHECK(g.str() == "6,6,17");
  CHECK_THROWS(GroupSpec::parse("6,x"));
}
