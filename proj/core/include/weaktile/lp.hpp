#pragma once

// Dense two-phase simplex:
//   find x >= 0 with A_eq x = b_eq and A_ge x >= b_ge,
// optionally maximizing c.x over that set (must be bounded).
// Floating point; callers are expected to re-verify answers exactly.

#include <cstdint>
#include <vector>

namespace weaktile::lp {

struct Problem {
  std::size_t variables = 0;
  std::vector<std::vector<double>> eq;
  std::vector<double> eq_rhs;
  std::vector<std::vector<double>> ge;
  std::vector<double> ge_rhs;
  std::vector<double> maximize;  // empty: feasibility only
};

enum class Status { Feasible, Infeasible, IterationLimit };

struct Result {
  Status status = Status::IterationLimit;
  std::vector<double> x;
  double infeasibility = 0;  // phase-one optimum
  double objective = 0;
  std::uint64_t iterations = 0;
};

Result solve_feasibility(const Problem& p, std::uint64_t max_iterations = 200'000, double tol = 1e-9);

}  // namespace weaktile::lp
