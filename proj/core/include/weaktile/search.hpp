#pragma once

// Backtracking engines: exact cover (dancing links) and fixed-size clique.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace weaktile {

enum class SearchStatus { Found, Exhausted, BudgetExceeded };

std::string to_string(SearchStatus s);

struct Budget {
  std::uint64_t nodes = 10'000'000;
};

struct ExactCoverResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::vector<std::size_t> rows;
  std::uint64_t nodes = 0;
};

class ExactCover {
 public:
  explicit ExactCover(std::size_t columns);

  /// Row ids are assigned in insertion order. Columns must be distinct.
  std::size_t add_row(const std::vector<std::size_t>& columns);
  [[nodiscard]] std::size_t rows() const { return row_count_; }

  /// First cover found, smallest-column-first branching.
  ExactCoverResult solve(const Budget& budget);

 private:
  struct Node {
    std::size_t left, right, up, down, column, row;
  };
  void cover(std::size_t c);
  void uncover(std::size_t c);

  std::vector<Node> nodes_;
  std::vector<std::size_t> size_;
  std::size_t columns_;
  std::size_t row_count_ = 0;
};

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i >> 6] |= 1ull << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(1ull << (i & 63)); }
  [[nodiscard]] bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  [[nodiscard]] std::size_t count() const;
  [[nodiscard]] std::size_t size() const { return n_; }
  Bitset& operator&=(const Bitset& o);
  [[nodiscard]] bool none() const;
  /// Lowest set bit at or after i, or size().
  [[nodiscard]] std::size_t next(std::size_t i) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct CliqueResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::vector<std::size_t> clique;
  std::uint64_t nodes = 0;
};

/// Clique of exactly k vertices. Vertices are branched on in increasing
/// index order, so callers relabel to control the search order.
CliqueResult find_clique(const std::vector<Bitset>& adjacency, std::size_t k, const Budget& budget);

}  // namespace weaktile
