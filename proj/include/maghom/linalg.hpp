#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "maghom/integer.hpp"

namespace maghom {

/// Exact sparse integer matrix stored by columns. Stored entries are nonzero
/// and each column is sorted by row.
class SparseIntMatrix {
 public:
  using Entry = std::pair<std::uint32_t, Integer>;

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols);
  /// Row-major dense input; convenient for tests and small fixtures.
  static SparseIntMatrix from_dense(const std::vector<std::vector<long long>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  std::size_t nnz() const noexcept;
  bool is_zero() const noexcept { return nnz() == 0; }

  /// Replaces column `c`. Entries are sorted, duplicates summed, zeros dropped.
  void set_column(std::size_t c, std::vector<Entry> entries);
  std::span<const Entry> column(std::size_t c) const { return columns_.at(c); }
  Integer at(std::size_t r, std::size_t c) const;

  SparseIntMatrix transpose() const;
  /// (*this) * rhs; throws std::invalid_argument on a dimension mismatch.
  SparseIntMatrix multiply(const SparseIntMatrix& rhs) const;
  /// Entry (r, c) moves to (row_perm[r], col_perm[c]).
  SparseIntMatrix permuted(std::span<const std::uint32_t> row_perm, std::span<const std::uint32_t> col_perm) const;
  std::vector<std::vector<Integer>> to_dense() const;

  friend bool operator==(const SparseIntMatrix&, const SparseIntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<Entry>> columns_;
};

enum class RankMethod {
  Exact,    ///< fraction-free elimination over the integers
  Modular,  ///< elimination modulo one random 62-bit prime (may undercount with negligible probability)
  Both,     ///< exact, cross-checked against the modular result
};

struct RankOptions {
  RankMethod method = RankMethod::Exact;
  std::uint64_t seed = 0x6d61676e69747564ULL;
};

/// Rank over the rationals.
std::size_t rank(const SparseIntMatrix& m, const RankOptions& options = {});
/// Rank over Z/pZ; p must be prime and below 2^63.
std::size_t rank_mod_prime(const SparseIntMatrix& m, std::uint64_t p);
/// Random prime in [2^61, 2^62) derived from `seed`.
std::uint64_t random_prime(std::uint64_t seed);
bool is_prime_u64(std::uint64_t n);

struct SmithForm {
  /// Invariant factors d1 | d2 | ... | dr, all positive.
  std::vector<Integer> factors;
  std::size_t rank() const noexcept { return factors.size(); }
};

SmithForm smith_normal_form(const SparseIntMatrix& m);

struct HomologyGroup {
  std::size_t rank = 0;
  /// Invariant factors > 1, non-decreasing.
  std::vector<Integer> torsion;

  bool is_zero() const noexcept { return rank == 0 && torsion.empty(); }
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// ker(d_k) / im(d_{k+1}). Throws std::logic_error if the maps do not compose
/// or d_k * d_{k+1} != 0.
HomologyGroup homology_of_pair(const SparseIntMatrix& d_k, const SparseIntMatrix& d_k1, bool torsion = true);

/// Finite chain complex C_min <- ... <- C_max of free modules.
/// boundaries[i] maps degree min_degree+i+1 to min_degree+i; the map out of
/// C_min is taken to be zero.
struct ChainComplex {
  unsigned min_degree = 0;
  std::vector<std::size_t> sizes;
  std::vector<SparseIntMatrix> boundaries;

  unsigned max_degree() const noexcept { return min_degree + static_cast<unsigned>(sizes.size()) - 1; }
  std::size_t size(unsigned k) const { return sizes.at(k - min_degree); }
  /// Map out of degree k (min < k <= max).
  const SparseIntMatrix& boundary(unsigned k) const { return boundaries.at(k - min_degree - 1); }
};

/// Homology in every degree of the complex, index k - min_degree.
/// Ranks of each boundary are computed once; SNF only when `torsion`.
std::vector<HomologyGroup> complex_homology(const ChainComplex& c, bool torsion, const RankOptions& options = {});

}  // namespace maghom
