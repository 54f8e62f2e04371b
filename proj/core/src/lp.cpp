#include "weaktile/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace weaktile::lp {

namespace {

struct Tableau {
  std::vector<std::vector<double>> t;  // m constraint rows + objective row
  std::vector<std::size_t> basis;
  std::vector<char> blocked;  // columns never allowed to enter
  std::size_t m = 0, cols = 0;
  double tol = 1e-9;

  void pivot(std::size_t leave, std::size_t enter) {
    const std::size_t rhs = cols;
    double piv = t[leave][enter];
    for (std::size_t j = 0; j <= rhs; ++j) t[leave][j] /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      double f = t[i][enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= rhs; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  // Minimizes the objective row; returns false on the iteration limit.
  bool optimize(std::uint64_t& iterations, std::uint64_t max_iterations) {
    const std::size_t rhs = cols;
    auto& obj = t[m];
    double last = obj[rhs];
    int stall = 0;
    while (true) {
      if (iterations >= max_iterations) return false;
      // Dantzig, or Bland while stalling on degenerate pivots
      bool bland = stall > 50;
      std::size_t enter = cols;
      double best = -tol;
      for (std::size_t j = 0; j < cols; ++j) {
        if (blocked[j]) continue;
        if (obj[j] < best) {
          enter = j;
          if (bland) break;
          best = obj[j];
        }
      }
      if (enter == cols) return true;
      std::size_t leave = m;
      double ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][enter] > tol) {
          double r = t[i][rhs] / t[i][enter];
          if (r < ratio - 1e-12 || (std::abs(r - ratio) <= 1e-12 && leave < m && basis[i] < basis[leave])) {
            ratio = r;
            leave = i;
          }
        }
      }
      if (leave == m) throw std::runtime_error("lp: objective unbounded");
      pivot(leave, enter);
      ++iterations;
      // obj[rhs] holds minus the current objective value
      if (obj[rhs] > last + 1e-12) {
        last = obj[rhs];
        stall = 0;
      } else {
        ++stall;
      }
    }
  }
};

}  // namespace

// Columns: structural | surplus (one per ge row) | artificial (one per row) | rhs
Result solve_feasibility(const Problem& p, std::uint64_t max_iterations, double tol) {
  const std::size_t n = p.variables;
  const std::size_t m_eq = p.eq.size(), m_ge = p.ge.size(), m = m_eq + m_ge;
  if (p.eq_rhs.size() != m_eq || p.ge_rhs.size() != m_ge) throw std::invalid_argument("lp: rhs size mismatch");
  if (!p.maximize.empty() && p.maximize.size() != n) throw std::invalid_argument("lp: objective size mismatch");
  const std::size_t art = n + m_ge;
  const std::size_t cols = art + m;
  const std::size_t rhs = cols;
  Result res;
  if (m == 0) {
    res.status = Status::Feasible;
    res.x.assign(n, 0.0);
    return res;
  }

  Tableau tb;
  tb.m = m;
  tb.cols = cols;
  tb.tol = tol;
  tb.t.assign(m + 1, std::vector<double>(cols + 1, 0.0));
  tb.basis.resize(m);
  tb.blocked.assign(cols, 0);
  auto& t = tb.t;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = i < m_eq ? p.eq[i] : p.ge[i - m_eq];
    if (row.size() != n) throw std::invalid_argument("lp: row length mismatch");
    double b = i < m_eq ? p.eq_rhs[i] : p.ge_rhs[i - m_eq];
    for (std::size_t j = 0; j < n; ++j) t[i][j] = row[j];
    if (i >= m_eq) t[i][n + (i - m_eq)] = -1.0;
    t[i][rhs] = b;
    if (b < 0) {
      for (std::size_t j = 0; j <= rhs; ++j) t[i][j] = -t[i][j];
    }
    t[i][art + i] = 1.0;
    tb.basis[i] = art + i;
  }
  // phase one: minimize the sum of artificials
  auto& obj = t[m];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= rhs; ++j) obj[j] -= t[i][j];
  for (std::size_t i = 0; i < m; ++i) obj[art + i] = 0.0;

  if (!tb.optimize(res.iterations, max_iterations)) return res;
  res.infeasibility = -obj[rhs];
  if (res.infeasibility > 1e-7) {
    res.status = Status::Infeasible;
    return res;
  }

  if (!p.maximize.empty()) {
    // drive zero-level artificials out of the basis, then freeze them
    for (std::size_t i = 0; i < m; ++i) {
      if (tb.basis[i] < art) continue;
      for (std::size_t j = 0; j < art; ++j) {
        if (std::abs(t[i][j]) > 1e-7) {
          tb.pivot(i, j);
          break;
        }
      }
    }
    for (std::size_t j = art; j < cols; ++j) tb.blocked[j] = 1;
    // phase two: minimize -c.x, reduced costs against the current basis
    std::fill(obj.begin(), obj.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) obj[j] = -p.maximize[j];
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t b = tb.basis[i];
      double cb = b < n ? -p.maximize[b] : 0.0;
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= rhs; ++j) obj[j] -= cb * t[i][j];
    }
    if (!tb.optimize(res.iterations, max_iterations)) return res;
    res.objective = obj[rhs];
  }

  res.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (tb.basis[i] < n) res.x[tb.basis[i]] = t[i][rhs];
  res.status = Status::Feasible;
  return res;
}

}  // namespace weaktile::lp
