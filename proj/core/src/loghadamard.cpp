#include "weaktile/loghadamard.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace weaktile {

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint32_t r = 1;
  for (std::uint32_t e = p - 2, b = a % p; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

// Row-echelon basis over Z_p, one pivot per stored row.
struct Echelon {
  std::uint32_t p;
  std::vector<std::vector<std::uint32_t>> rows;
  std::vector<std::size_t> pivots;

  // Reduces v against the basis; returns true if v was independent (not added).
  [[nodiscard]] bool independent(std::vector<std::uint32_t> v) const {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      std::uint32_t c = v[pivots[k]];
      if (!c) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = (v[j] + (p - c) * rows[k][j]) % p;
    }
    return std::any_of(v.begin(), v.end(), [](auto x) { return x != 0; });
  }

  void add(std::vector<std::uint32_t> v) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      std::uint32_t c = v[pivots[k]];
      if (!c) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = (v[j] + (p - c) * rows[k][j]) % p;
    }
    std::size_t piv = 0;
    while (piv < v.size() && v[piv] == 0) ++piv;
    if (piv == v.size()) return;
    std::uint32_t inv = inv_mod(v[piv], p);
    for (auto& x : v) x = x * inv % p;
    rows.push_back(std::move(v));
    pivots.push_back(piv);
  }
};

struct Search {
  std::uint32_t p;
  std::size_t n, max_rank;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool out = false;
  Matrix m;
  // diff[k][d]: count of residue d in (row being built) - row k
  std::vector<std::vector<std::uint8_t>> diff;
  std::vector<std::uint8_t> own;
  std::vector<Echelon> echelon;  // echelon[i]: basis of rows 0..i-1

  bool columns_distinct() const {
    std::set<std::vector<std::uint32_t>> cols;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::uint32_t> c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = m[i][j];
      if (!cols.insert(std::move(c)).second) return false;
    }
    return true;
  }

  // fill row i from column j; tight = prefix still equal to row i-1
  bool fill(std::size_t i, std::size_t j, bool tight) {
    if (++nodes > budget) {
      out = true;
      return false;
    }
    if (j == n) {
      if (tight) return false;  // equal to previous row
      const Echelon& e = echelon[i];
      bool indep = e.independent(m[i]);
      if (indep && e.rows.size() >= max_rank) return false;
      if (i + 1 == n) return columns_distinct();
      echelon[i + 1] = e;
      if (indep) echelon[i + 1].add(m[i]);
      return row(i + 1);
    }
    std::uint32_t lo = tight ? m[i - 1][j] : 0;
    for (std::uint32_t v = lo; v < p; ++v) {
      if (own[v] >= 2) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) ok = diff[k][(v + p - m[k][j]) % p] < 2;
      if (!ok) continue;
      ++own[v];
      for (std::size_t k = 0; k < i; ++k) ++diff[k][(v + p - m[k][j]) % p];
      m[i][j] = v;
      bool r = fill(i, j + 1, tight && v == lo);
      if (r) return true;
      --own[v];
      for (std::size_t k = 0; k < i; ++k) --diff[k][(v + p - m[k][j]) % p];
      if (out) return false;
    }
    return false;
  }

  bool row(std::size_t i) {
    // counts belong to the row being filled; keep the caller's to restore
    auto saved_own = own;
    auto saved_diff = diff;
    std::fill(own.begin(), own.end(), 0);
    for (auto& d : diff) std::fill(d.begin(), d.end(), 0);
    m[i][0] = 0;
    own[0] = 1;
    for (std::size_t k = 0; k < i; ++k) ++diff[k][(p - m[k][0]) % p];
    bool r = fill(i, 1, true);
    if (!r) {
      own = std::move(saved_own);
      diff = std::move(saved_diff);
    }
    return r;
  }
};

}  // namespace

LogHadamardResult search_log_hadamard(std::uint32_t p, std::size_t max_rank, const Budget& budget) {
  if (p < 2 || !cyclo::is_prime(p)) throw std::invalid_argument("log-Hadamard search needs a prime p");
  const std::size_t n = 2 * p;
  Search s{p, n, max_rank, budget.nodes, 0, false, {}, {}, {}, {}};
  s.m.assign(n, std::vector<std::uint32_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j) s.m[1][j] = static_cast<std::uint32_t>(j / 2);
  s.diff.assign(n, std::vector<std::uint8_t>(p, 0));
  s.own.assign(p, 0);
  s.echelon.assign(n + 1, Echelon{p, {}, {}});
  s.echelon[2].add(s.m[1]);
  LogHadamardResult res;
  bool found = max_rank >= 1 && s.row(2);
  res.nodes = s.nodes;
  if (found) {
    res.status = SearchStatus::Found;
    res.matrix = s.m;
  } else {
    res.status = s.out ? SearchStatus::BudgetExceeded : SearchStatus::Exhausted;
  }
  return res;
}

bool is_log_hadamard(const Matrix& m, std::uint32_t p) {
  const std::size_t n = m.size();
  for (std::size_t a = 0; a < n; ++a) {
    if (m[a].size() != n) return false;
    for (std::size_t b = a + 1; b < n; ++b) {
      std::vector<std::size_t> cnt(p, 0);
      for (std::size_t j = 0; j < n; ++j) ++cnt[(m[a][j] + p - m[b][j]) % p];
      if (std::any_of(cnt.begin(), cnt.end(), [&](auto c) { return c * p != n; })) return false;
    }
  }
  return true;
}

std::size_t rank_mod_p(Matrix m, std::uint32_t p) {
  Echelon e{p, {}, {}};
  for (auto& r : m) e.add(r);
  return e.rows.size();
}

std::optional<SpectralPair> factor_log_hadamard(const Matrix& m, std::uint32_t p, std::size_t d) {
  const std::size_t n = m.size();
  // basis rows of M in order; coefficients by elimination on an augmented copy
  std::vector<std::size_t> basis;
  Echelon e{p, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    if (e.independent(m[i])) {
      basis.push_back(i);
      e.add(m[i]);
    }
  }
  const std::size_t r = basis.size();
  if (r > d) return std::nullopt;

  // solve c R = M[i]: eliminate on columns of [R^T | M^T]
  std::vector<std::vector<std::uint32_t>> coeffs(n, std::vector<std::uint32_t>(r, 0));
  for (std::size_t i = 0; i < n; ++i) {
    // Gaussian elimination on the n x (r+1) system R^T c = M[i]^T
    std::vector<std::vector<std::uint32_t>> a(n, std::vector<std::uint32_t>(r + 1));
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < r; ++k) a[j][k] = m[basis[k]][j];
      a[j][r] = m[i][j];
    }
    std::size_t row = 0;
    std::vector<std::size_t> piv_row(r, n);
    for (std::size_t c = 0; c < r; ++c) {
      std::size_t pr = row;
      while (pr < n && a[pr][c] == 0) ++pr;
      if (pr == n) return std::nullopt;  // cannot happen for independent rows
      std::swap(a[pr], a[row]);
      std::uint32_t inv = inv_mod(a[row][c], p);
      for (auto& x : a[row]) x = x * inv % p;
      for (std::size_t q = 0; q < n; ++q) {
        if (q == row || a[q][c] == 0) continue;
        std::uint32_t f = a[q][c];
        for (std::size_t k = 0; k <= r; ++k) a[q][k] = (a[q][k] + (p - f) * a[row][k]) % p;
      }
      piv_row[c] = row++;
    }
    for (std::size_t q = row; q < n; ++q)
      if (a[q][r] != 0) return std::nullopt;
    for (std::size_t c = 0; c < r; ++c) coeffs[i][c] = a[piv_row[c]][r];
  }

  GroupSpec spec(std::vector<std::uint32_t>(d, p));
  std::vector<std::uint64_t> pts, chars;
  for (std::size_t j = 0; j < n; ++j) {
    Coords x(d, 0);
    for (std::size_t k = 0; k < r; ++k) x[k] = m[basis[k]][j];
    pts.push_back(spec.index(x));
  }
  for (std::size_t i = 0; i < n; ++i) {
    Coords s(d, 0);
    for (std::size_t k = 0; k < r; ++k) s[k] = coeffs[i][k];
    chars.push_back(spec.index(s));
  }
  SpectralPair out{ElementSet(spec, pts), ElementSet(spec, chars)};
  if (out.points.size() != n || out.spectrum.size() != n) return std::nullopt;
  return out;
}

}  // namespace weaktile
