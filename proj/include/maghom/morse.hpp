#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "maghom/chain.hpp"
#include "maghom/linalg.hpp"

namespace maghom {

/// A matching was requested outside the girth range where it is known to be
/// a Morse matching, or reduce() was handed an invalid matching.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// `upper` (degree k) paired with `lower` (degree k-1); indices into the bases
/// of the complex the matching was built for.
struct MatchedPair {
  unsigned degree = 0;  ///< degree of the upper cell
  std::uint32_t upper = 0;
  std::uint32_t lower = 0;
  int coefficient = 0;  ///< entry of `lower` in the boundary of `upper`

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

struct MorseMatching {
  std::vector<MatchedPair> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
  bool empty() const noexcept { return pairs.empty(); }
};

enum class MatchingViolation { None, OutOfRange, Overlap, CoefficientMismatch, NonUnit, Cycle };

struct MatchingReport {
  MatchingViolation violation = MatchingViolation::None;
  std::string detail;

  bool ok() const noexcept { return violation == MatchingViolation::None; }
};

/// Disjointness, unit coefficients that agree with the boundary, and acyclicity
/// of the inverted-edge digraph between each pair of adjacent degrees.
MatchingReport validate_matching(const ChainComplex& c, const MorseMatching& m);

/// Complex spanned by the unmatched cells.
struct ReducedComplex {
  ChainComplex algebra;
  /// critical[k - algebra.min_degree] lists source indices, ascending.
  std::vector<std::vector<std::uint32_t>> critical;
  /// Lowest degree whose homology agrees with the source. Equals min_degree
  /// unless the source was a truncation with a nonzero map out of its bottom.
  unsigned valid_from = 0;

  std::span<const std::uint32_t> critical_cells(unsigned k) const { return critical.at(k - algebra.min_degree); }
};

/// Throws PreconditionError when validate_matching fails.
ReducedComplex reduce(const ChainComplex& c, const MorseMatching& m);

/// Deletes the first smooth point before the first gap in degrees l-i for
/// 0 <= i <= i_max. The complex must be start-restricted to x with gir_x >= 5.
MorseMatching build_f_matching(const ChainContext& ctx, const TupleComplex& c, unsigned i_max);

/// Deletes x_g from f-critical cells of conditions (ii)/(iii) whose x_g is
/// smooth, for 1 <= j <= i. `f_reduced` is the reduction of `c` by the
/// f-matching; `truncated` is its restriction to degrees l-i-1..l, which is
/// the complex the returned indices refer to. Requires gir_x >= 2i + 5.
MorseMatching build_h_matching(const ChainContext& ctx, const TupleComplex& c, const ReducedComplex& f_reduced,
                               const ChainComplex& truncated, unsigned i);

/// Degrees l-i-1..l of a reduced complex, as a standalone complex.
ChainComplex truncate(const ChainComplex& c, unsigned lo, unsigned hi);

enum class UnmatchedCondition { NoGapNoSmooth, LongGapLate, ShortGapLate, LongGapFirst, Matched };

/// Closed-form answer to "is t critical for the f-matching at x"; t must start at x.
UnmatchedCondition classify_unmatched(std::span<const VertexId> t, const ChainContext& ctx);

const char* to_string(UnmatchedCondition c) noexcept;

/// Largest i with gir_x >= 2i + 5, clamped to l - 1; nullopt if gir_x < 5.
std::optional<unsigned> h_depth(const Extended& girth_x, unsigned length);

// Debug dumps: one pair or one critical cell per line.
void dump_matching(std::ostream& os, const TupleComplex& c, const MorseMatching& m);
void dump_critical(std::ostream& os, const TupleComplex& c, const ReducedComplex& r);

}  // namespace maghom
