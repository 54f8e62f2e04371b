#include "weaktile/search.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

namespace weaktile {

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::Exhausted: return "exhausted";
    case SearchStatus::BudgetExceeded: return "budget_exceeded";
  }
  return "?";
}

// Node 0 is the root header, nodes 1..columns are column headers.
ExactCover::ExactCover(std::size_t columns) : size_(columns + 1, 0), columns_(columns) {
  nodes_.resize(columns + 1);
  for (std::size_t i = 0; i <= columns; ++i) {
    nodes_[i] = {i == 0 ? columns : i - 1, i == columns ? 0 : i + 1, i, i, i, SIZE_MAX};
  }
}

std::size_t ExactCover::add_row(const std::vector<std::size_t>& columns) {
  if (columns.empty()) throw std::invalid_argument("exact cover rows must be nonempty");
  std::size_t first = nodes_.size();
  for (std::size_t k = 0; k < columns.size(); ++k) {
    std::size_t c = columns[k] + 1;
    if (c > columns_) throw std::out_of_range("exact cover column out of range");
    std::size_t id = nodes_.size();
    Node n{};
    n.column = c;
    n.row = row_count_;
    n.down = c;
    n.up = nodes_[c].up;
    n.left = k == 0 ? id : id - 1;
    n.right = first;
    nodes_.push_back(n);
    nodes_[nodes_[c].up].down = id;
    nodes_[c].up = id;
    if (k > 0) nodes_[id - 1].right = id;
    nodes_[first].left = id;
    ++size_[c];
  }
  return row_count_++;
}

void ExactCover::cover(std::size_t c) {
  nodes_[nodes_[c].right].left = nodes_[c].left;
  nodes_[nodes_[c].left].right = nodes_[c].right;
  for (std::size_t i = nodes_[c].down; i != c; i = nodes_[i].down) {
    for (std::size_t j = nodes_[i].right; j != i; j = nodes_[j].right) {
      nodes_[nodes_[j].down].up = nodes_[j].up;
      nodes_[nodes_[j].up].down = nodes_[j].down;
      --size_[nodes_[j].column];
    }
  }
}

void ExactCover::uncover(std::size_t c) {
  for (std::size_t i = nodes_[c].up; i != c; i = nodes_[i].up) {
    for (std::size_t j = nodes_[i].left; j != i; j = nodes_[j].left) {
      ++size_[nodes_[j].column];
      nodes_[nodes_[j].down].up = j;
      nodes_[nodes_[j].up].down = j;
    }
  }
  nodes_[nodes_[c].right].left = c;
  nodes_[nodes_[c].left].right = c;
}

ExactCoverResult ExactCover::solve(const Budget& budget) {
  ExactCoverResult res;
  std::vector<std::size_t> stack;  // chosen row nodes

  // explicit-stack Algorithm X; each frame is the row node tried in a column
  auto choose_column = [&]() {
    std::size_t best = 0, best_size = std::numeric_limits<std::size_t>::max();
    for (std::size_t c = nodes_[0].right; c != 0; c = nodes_[c].right) {
      if (size_[c] < best_size) {
        best = c;
        best_size = size_[c];
        if (best_size <= 1) break;
      }
    }
    return best;
  };

  auto select = [&](std::size_t r) {
    for (std::size_t j = nodes_[r].right; j != r; j = nodes_[j].right) cover(nodes_[j].column);
  };
  auto unselect = [&](std::size_t r) {
    for (std::size_t j = nodes_[r].left; j != r; j = nodes_[j].left) uncover(nodes_[j].column);
  };

  bool descend = true;
  while (true) {
    if (descend) {
      if (nodes_[0].right == 0) {
        res.status = SearchStatus::Found;
        for (auto r : stack) res.rows.push_back(nodes_[r].row);
        break;
      }
      if (++res.nodes > budget.nodes) {
        res.status = SearchStatus::BudgetExceeded;
        break;
      }
      std::size_t c = choose_column();
      if (size_[c] == 0) {
        descend = false;
        continue;
      }
      cover(c);
      std::size_t r = nodes_[c].down;
      stack.push_back(r);
      select(r);
      continue;
    }
    // backtrack: advance the top row to its next alternative
    if (stack.empty()) {
      res.status = SearchStatus::Exhausted;
      break;
    }
    std::size_t r = stack.back();
    stack.pop_back();
    unselect(r);
    std::size_t c = nodes_[r].column;
    std::size_t next = nodes_[r].down;
    if (next == c) {
      uncover(c);
      continue;
    }
    stack.push_back(next);
    select(next);
    descend = true;
  }
  // restore the matrix so solve can be called again
  while (!stack.empty()) {
    std::size_t r = stack.back();
    stack.pop_back();
    unselect(r);
    uncover(nodes_[r].column);
  }
  return res;
}

// ---------------------------------------------------------------------------

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

Bitset& Bitset::operator&=(const Bitset& o) {
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  return *this;
}

bool Bitset::none() const {
  for (auto w : w_)
    if (w) return false;
  return true;
}

std::size_t Bitset::next(std::size_t i) const {
  if (i >= n_) return n_;
  std::size_t k = i >> 6;
  std::uint64_t w = w_[k] & (~0ull << (i & 63));
  while (true) {
    if (w) return std::min(n_, (k << 6) + static_cast<std::size_t>(std::countr_zero(w)));
    if (++k >= w_.size()) return n_;
    w = w_[k];
  }
}

namespace {

struct CliqueSearch {
  const std::vector<Bitset>& adj;
  std::size_t k;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::vector<std::size_t> current;
  bool out_of_budget = false;

  bool run(const Bitset& cand) {
    if (current.size() == k) return true;
    if (++nodes > budget) {
      out_of_budget = true;
      return false;
    }
    if (current.size() + cand.count() < k) return false;
    Bitset rest = cand;
    for (std::size_t v = rest.next(0); v < rest.size(); v = rest.next(v + 1)) {
      if (current.size() + rest.count() < k) return false;
      Bitset next = rest;
      next &= adj[v];
      current.push_back(v);
      if (run(next)) return true;
      current.pop_back();
      if (out_of_budget) return false;
      rest.reset(v);
    }
    return false;
  }
};

}  // namespace

CliqueResult find_clique(const std::vector<Bitset>& adjacency, std::size_t k, const Budget& budget) {
  CliqueResult res;
  const std::size_t n = adjacency.size();
  if (k == 0) {
    res.status = SearchStatus::Found;
    return res;
  }
  Bitset all(n);
  for (std::size_t i = 0; i < n; ++i) all.set(i);
  CliqueSearch s{adjacency, k, budget.nodes, 0, {}, false};
  bool ok = s.run(all);
  res.nodes = s.nodes;
  if (ok) {
    res.status = SearchStatus::Found;
    res.clique = s.current;
  } else {
    res.status = s.out_of_budget ? SearchStatus::BudgetExceeded : SearchStatus::Exhausted;
  }
  return res;
}

}  // namespace weaktile
