#pragma once

// Search for 2p x 2p generalized log-Hadamard matrices over Z_p of rank at
// most d, and their factorization into a point set and a spectrum in Z_p^d.
//
// Row differences of such a matrix hit every residue exactly twice, which is
// exactly when a sum of 2p p-th roots of unity vanishes.

#include <cstdint>
#include <optional>
#include <vector>

#include "weaktile/group.hpp"
#include "weaktile/search.hpp"

namespace weaktile {

using Matrix = std::vector<std::vector<std::uint32_t>>;

struct LogHadamardResult {
  SearchStatus status = SearchStatus::Exhausted;
  Matrix matrix;
  std::uint64_t nodes = 0;
};

/// Rows: row 0 zero, row 1 = (0,0,1,1,...,p-1,p-1), the rest increasing.
/// Column 0 is zero. Requires distinct columns and rank <= max_rank.
LogHadamardResult search_log_hadamard(std::uint32_t p, std::size_t max_rank, const Budget& budget);

bool is_log_hadamard(const Matrix& m, std::uint32_t p);
std::size_t rank_mod_p(Matrix m, std::uint32_t p);

struct SpectralPair {
  ElementSet points;    // columns
  ElementSet spectrum;  // rows
};

/// M = S R over Z_p with S, R read off in dimension d; nullopt if the rank
/// exceeds d or the columns are not distinct.
std::optional<SpectralPair> factor_log_hadamard(const Matrix& m, std::uint32_t p, std::size_t d);

}  // namespace weaktile
