#include <doctest.h>

#include "weaktile/lp.hpp"
#include "weaktile/search.hpp"

using namespace weaktile;

TEST_CASE("exact cover: Knuth's example") {
  ExactCover ec(7);
  ec.add_row({2, 4, 5});
  ec.add_row({0, 3, 6});
  ec.add_row({1, 2, 5});
  ec.add_row({0, 3});
  ec.add_row({1, 6});
  ec.add_row({3, 4, 6});
  auto r = ec.solve({});
  REQUIRE(r.status == SearchStatus::Found);
  std::sort(r.rows.begin(), r.rows.end());
  CHECK(r.rows == std::vector<std::size_t>{0, 3, 4});
  // matrix restored: solving again gives the same answer
  auto r2 = ec.solve({});
  CHECK(r2.status == SearchStatus::Found);
}

TEST_CASE("exact cover: infeasible and budget") {
  ExactCover ec(3);
  ec.add_row({0, 1});
  ec.add_row({1, 2});
  CHECK(ec.solve({}).status == SearchStatus::Exhausted);
  ExactCover big(4);
  big.add_row({0});
  big.add_row({1});
  big.add_row({2});
  big.add_row({3});
  CHECK(big.solve({Budget{2}}).status == SearchStatus::BudgetExceeded);
}

TEST_CASE("clique search") {
  // 5-cycle plus chord 0-2: triangle {0,1,2}, no 4-clique
  std::vector<Bitset> adj(5, Bitset(5));
  auto edge = [&](int a, int b) { adj[a].set(b), adj[b].set(a); };
  edge(0, 1), edge(1, 2), edge(2, 3), edge(3, 4), edge(4, 0), edge(0, 2);
  auto r = find_clique(adj, 3, {});
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.clique == std::vector<std::size_t>{0, 1, 2});
  CHECK(find_clique(adj, 4, {}).status == SearchStatus::Exhausted);
}

TEST_CASE("simplex feasibility") {
  lp::Problem p;
  p.variables = 2;
  p.eq = {{1, 1}};
  p.eq_rhs = {1};
  p.ge = {{1, -1}};
  p.ge_rhs = {0.25};
  auto r = lp::solve_feasibility(p);
  REQUIRE(r.status == lp::Status::Feasible);
  CHECK(r.x[0] + r.x[1] == doctest::Approx(1));
  CHECK(r.x[0] - r.x[1] >= 0.25 - 1e-9);
  p.ge = {{1, 1}};
  p.ge_rhs = {2};
  CHECK(lp::solve_feasibility(p).status == lp::Status::Infeasible);
}
