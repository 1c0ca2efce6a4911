#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "maghom/graph.hpp"
#include "maghom/linalg.hpp"

namespace maghom {

/// Optional fixed start and end vertices of generators.
struct Restriction {
  std::optional<VertexId> start;
  std::optional<VertexId> end;

  friend bool operator==(const Restriction&, const Restriction&) = default;
};

/// Generator enumeration stopped because the configured budget was reached.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Graph, metric and per-vertex balls shared by every chain-level operation.
/// Holds its own copy of the graph.
class ChainContext {
 public:
  /// `radius` bounds the lengths ℓ that may be requested later.
  ChainContext(Graph g, unsigned radius);

  const Graph& graph() const noexcept { return graph_; }
  const DistanceMatrix& distances() const noexcept { return dist_; }
  unsigned radius() const noexcept { return radius_; }
  /// Vertices y != x with d(x, y) <= radius, ascending.
  std::span<const VertexId> ball(VertexId x) const { return balls_.at(x); }

 private:
  Graph graph_;
  DistanceMatrix dist_;
  unsigned radius_;
  std::vector<std::vector<VertexId>> balls_;
};

/// A generator (x0, ..., xk) with its cached length.
class Tuple {
 public:
  Tuple() = default;
  /// Throws std::invalid_argument on repeated consecutive entries or infinite steps.
  Tuple(std::vector<VertexId> vertices, const DistanceMatrix& d);

  unsigned degree() const noexcept { return static_cast<unsigned>(vertices_.size()) - 1; }
  std::uint64_t length() const noexcept { return length_; }
  std::span<const VertexId> vertices() const noexcept { return vertices_; }
  VertexId operator[](std::size_t i) const { return vertices_.at(i); }

  friend bool operator==(const Tuple& a, const Tuple& b) { return a.vertices_ == b.vertices_; }
  friend auto operator<=>(const Tuple& a, const Tuple& b) { return a.vertices_ <=> b.vertices_; }

 private:
  std::vector<VertexId> vertices_;
  std::uint64_t length_ = 0;
};

/// Sum of consecutive distances; nullopt if a step is infinite or repeats a vertex.
std::optional<std::uint64_t> tuple_length(std::span<const VertexId> t, const DistanceMatrix& d);

/// d(x_{i-1}, x_{i+1}) = d(x_{i-1}, x_i) + d(x_i, x_{i+1}). Requires 1 <= i <= k-1.
bool is_smooth(std::span<const VertexId> t, std::size_t i, const DistanceMatrix& d);

struct Gap {
  std::size_t index = 0;        ///< g: the pair is (x_g, x_{g+1})
  std::uint32_t distance = 0;  ///< >= 2
  friend bool operator==(const Gap&, const Gap&) = default;
};

std::optional<Gap> first_gap(std::span<const VertexId> t, const DistanceMatrix& d);
/// Smallest smooth interior index strictly before the first gap (anywhere when there is no gap).
std::optional<std::size_t> first_smooth_before_gap(std::span<const VertexId> t, const DistanceMatrix& d);

/// Ordered generators of MC_{k,l} under a restriction, with O(1) lookup.
class ChainBasis {
 public:
  ChainBasis() = default;
  ChainBasis(unsigned k, unsigned length, Restriction restriction);

  unsigned degree() const noexcept { return k_; }
  unsigned length() const noexcept { return length_; }
  const Restriction& restriction() const noexcept { return restriction_; }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  std::span<const VertexId> operator[](std::size_t i) const {
    return {flat_.data() + i * (k_ + 1), static_cast<std::size_t>(k_) + 1};
  }
  Tuple tuple(std::size_t i, const DistanceMatrix& d) const;
  std::optional<std::size_t> find(std::span<const VertexId> t) const;

  /// Appends a generator; the caller guarantees it is new and well formed.
  void push_back(std::span<const VertexId> t);

  /// One tuple per line, entries separated by spaces.
  void dump(std::ostream& os) const;

 private:
  std::uint64_t hash(std::span<const VertexId> t) const noexcept;
  void insert_index(std::uint32_t pos);
  void rehash(std::size_t buckets);

  unsigned k_ = 0;
  unsigned length_ = 0;
  Restriction restriction_;
  std::size_t count_ = 0;
  std::vector<VertexId> flat_;
  std::vector<std::uint32_t> slots_;  // open addressing; kEmpty marks a free slot
};

/// Every generator of MC_{k,l} satisfying the restriction, in lexicographic order.
/// Throws BudgetExceeded when more than `budget` generators would be produced.
ChainBasis enumerate_basis(const ChainContext& ctx, unsigned k, unsigned length, const Restriction& restriction,
                           std::size_t budget = SIZE_MAX);
ChainBasis enumerate_basis(const Graph& g, unsigned k, unsigned length, const Restriction& restriction = {});

/// Matrix of the boundary from `source` (k, l) to `target` (k-1, l).
/// Throws std::invalid_argument on a bidegree or restriction mismatch.
SparseIntMatrix boundary(const ChainContext& ctx, const ChainBasis& source, const ChainBasis& target);

/// Bases and boundaries of MC_{*,l} restricted, for degrees min_degree..max_degree.
struct TupleComplex {
  unsigned length = 0;
  Restriction restriction;
  std::vector<ChainBasis> bases;  ///< index k - algebra.min_degree
  ChainComplex algebra;

  const ChainBasis& basis(unsigned k) const { return bases.at(k - algebra.min_degree); }
};

/// Full complex in degrees 0..l, built from one depth-first sweep.
TupleComplex build_complex(const ChainContext& ctx, unsigned length, const Restriction& restriction,
                           std::size_t budget = SIZE_MAX);

/// Subcomplex of degrees lo..hi (bases and boundaries between them).
TupleComplex truncate(const TupleComplex& c, unsigned lo, unsigned hi);

}  // namespace maghom
