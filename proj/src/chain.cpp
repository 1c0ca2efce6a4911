#include "maghom/chain.hpp"

#include <algorithm>
#include <string>

namespace maghom {

namespace {
constexpr std::uint32_t kEmpty = UINT32_MAX;
}

ChainContext::ChainContext(Graph g, unsigned radius)
    : graph_(std::move(g)), dist_(graph_), radius_(radius), balls_(graph_.vertex_count()) {
  const auto n = static_cast<VertexId>(graph_.vertex_count());
  for (VertexId x = 0; x < n; ++x) {
    for (VertexId y = 0; y < n; ++y) {
      if (y != x && dist_.finite(x, y) && dist_.hops(x, y) <= radius_) balls_[x].push_back(y);
    }
  }
}

Tuple::Tuple(std::vector<VertexId> vertices, const DistanceMatrix& d) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw std::invalid_argument("tuple must have at least one vertex");
  auto len = tuple_length(vertices_, d);
  if (!len) throw std::invalid_argument("tuple has a repeated consecutive vertex or an infinite step");
  length_ = *len;
}

std::optional<std::uint64_t> tuple_length(std::span<const VertexId> t, const DistanceMatrix& d) {
  std::uint64_t total = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] == t[i - 1] || !d.finite(t[i - 1], t[i])) return std::nullopt;
    total += d.hops(t[i - 1], t[i]);
  }
  return total;
}

bool is_smooth(std::span<const VertexId> t, std::size_t i, const DistanceMatrix& d) {
  if (i < 1 || i + 1 >= t.size()) {
    throw std::invalid_argument("interior index " + std::to_string(i) + " out of range for degree " +
                                std::to_string(t.size() - 1));
  }
  return d.hops(t[i - 1], t[i + 1]) == d.hops(t[i - 1], t[i]) + d.hops(t[i], t[i + 1]);
}

std::optional<Gap> first_gap(std::span<const VertexId> t, const DistanceMatrix& d) {
  for (std::size_t g = 0; g + 1 < t.size(); ++g) {
    std::uint32_t dist = d.hops(t[g], t[g + 1]);
    if (dist >= 2) return Gap{g, dist};
  }
  return std::nullopt;
}

std::optional<std::size_t> first_smooth_before_gap(std::span<const VertexId> t, const DistanceMatrix& d) {
  auto gap = first_gap(t, d);
  const std::size_t stop = gap ? gap->index : t.size() - 1;  // interior j < stop
  for (std::size_t j = 1; j < stop; ++j)
    if (is_smooth(t, j, d)) return j;
  return std::nullopt;
}

ChainBasis::ChainBasis(unsigned k, unsigned length, Restriction restriction)
    : k_(k), length_(length), restriction_(restriction), slots_(16, kEmpty) {}

Tuple ChainBasis::tuple(std::size_t i, const DistanceMatrix& d) const {
  auto s = (*this)[i];
  return Tuple(std::vector<VertexId>(s.begin(), s.end()), d);
}

std::uint64_t ChainBasis::hash(std::span<const VertexId> t) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (VertexId v : t) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ULL;
  }
  return h ^ (h >> 31);
}

std::optional<std::size_t> ChainBasis::find(std::span<const VertexId> t) const {
  if (t.size() != static_cast<std::size_t>(k_) + 1 || slots_.empty()) return std::nullopt;
  const std::size_t mask = slots_.size() - 1;
  for (std::size_t s = hash(t) & mask;; s = (s + 1) & mask) {
    std::uint32_t pos = slots_[s];
    if (pos == kEmpty) return std::nullopt;
    auto cand = (*this)[pos];
    if (std::equal(cand.begin(), cand.end(), t.begin())) return pos;
  }
}

void ChainBasis::insert_index(std::uint32_t pos) {
  const std::size_t mask = slots_.size() - 1;
  std::size_t s = hash((*this)[pos]) & mask;
  while (slots_[s] != kEmpty) s = (s + 1) & mask;
  slots_[s] = pos;
}

void ChainBasis::rehash(std::size_t buckets) {
  slots_.assign(buckets, kEmpty);
  for (std::uint32_t i = 0; i < count_; ++i) insert_index(i);
}

void ChainBasis::push_back(std::span<const VertexId> t) {
  if (t.size() != static_cast<std::size_t>(k_) + 1) throw std::invalid_argument("tuple degree does not match basis");
  if (count_ + 1 >= kEmpty) throw BudgetExceeded("basis too large to index");
  flat_.insert(flat_.end(), t.begin(), t.end());
  ++count_;
  if (slots_.size() < 16) slots_.assign(16, kEmpty);
  if (2 * count_ > slots_.size()) {
    rehash(slots_.size() * 2);
  } else {
    insert_index(static_cast<std::uint32_t>(count_ - 1));
  }
}

void ChainBasis::dump(std::ostream& os) const {
  for (std::size_t i = 0; i < count_; ++i) {
    auto t = (*this)[i];
    for (std::size_t j = 0; j < t.size(); ++j) os << (j ? " " : "") << t[j];
    os << '\n';
  }
}

namespace {

// Depth-first sweep over tuples of total length exactly `length`. Children are
// visited in ascending vertex order, so each degree comes out lexicographic.
class Sweep {
 public:
  Sweep(const ChainContext& ctx, unsigned length, const Restriction& r, std::optional<unsigned> only_degree,
        std::size_t budget)
      : ctx_(ctx), d_(ctx.distances()), length_(length), r_(r), only_(only_degree), budget_(budget) {
    if (length > ctx.radius()) throw std::invalid_argument("length exceeds the context radius");
    if (r.start && *r.start >= ctx.graph().vertex_count()) throw std::out_of_range("start vertex out of range");
    if (r.end && *r.end >= ctx.graph().vertex_count()) throw std::out_of_range("end vertex out of range");
    const unsigned top = only_ ? *only_ : length;
    for (unsigned k = 0; k <= top; ++k) bases.emplace_back(k, length, r);
  }

  void run() {
    if (only_ && *only_ > length_) return;
    const auto n = static_cast<VertexId>(ctx_.graph().vertex_count());
    VertexId lo = r_.start ? *r_.start : 0;
    VertexId hi = r_.start ? *r_.start + 1 : n;
    for (VertexId x = lo; x < hi; ++x) {
      if (r_.end && !d_.finite(x, *r_.end)) continue;
      path_.assign(1, x);
      extend(0);
    }
  }

  std::vector<ChainBasis> bases;

 private:
  void emit() {
    if (r_.end && path_.back() != *r_.end) return;
    const auto k = static_cast<unsigned>(path_.size() - 1);
    if (only_ && k != *only_) return;
    if (++emitted_ > budget_) throw BudgetExceeded("generator budget of " + std::to_string(budget_) + " exceeded");
    bases[k].push_back(path_);
  }

  void extend(unsigned used) {
    if (used == length_) {
      emit();
      return;
    }
    const unsigned k = static_cast<unsigned>(path_.size() - 1);
    const unsigned budget = length_ - used;
    // With a fixed degree, every remaining step must still cost at least one.
    unsigned max_step = budget;
    if (only_) {
      if (k >= *only_) return;
      max_step = budget - (*only_ - k - 1);
    }
    const VertexId cur = path_.back();
    for (VertexId v : ctx_.ball(cur)) {
      const std::uint32_t step = d_.hops(cur, v);
      if (step > max_step) continue;
      if (r_.end) {
        const unsigned rest = budget - step;
        if (!d_.finite(v, *r_.end) || d_.hops(v, *r_.end) > rest) continue;
      }
      path_.push_back(v);
      extend(used + step);
      path_.pop_back();
    }
  }

  const ChainContext& ctx_;
  const DistanceMatrix& d_;
  unsigned length_;
  Restriction r_;
  std::optional<unsigned> only_;
  std::size_t budget_;
  std::size_t emitted_ = 0;
  std::vector<VertexId> path_;
};

}  // namespace

ChainBasis enumerate_basis(const ChainContext& ctx, unsigned k, unsigned length, const Restriction& restriction,
                           std::size_t budget) {
  Sweep s(ctx, length, restriction, k, budget);
  s.run();
  return std::move(s.bases[k]);
}

ChainBasis enumerate_basis(const Graph& g, unsigned k, unsigned length, const Restriction& restriction) {
  ChainContext ctx(g, length);
  return enumerate_basis(ctx, k, length, restriction);
}

SparseIntMatrix boundary(const ChainContext& ctx, const ChainBasis& source, const ChainBasis& target) {
  if (source.length() != target.length() || source.degree() != target.degree() + 1) {
    throw std::invalid_argument("boundary needs bases at (k, l) and (k-1, l)");
  }
  if (!(source.restriction() == target.restriction())) throw std::invalid_argument("boundary bases differ in restriction");
  const DistanceMatrix& d = ctx.distances();
  const unsigned k = source.degree();
  SparseIntMatrix m(target.size(), source.size());
  std::vector<VertexId> scratch(k);
  for (std::size_t c = 0; c < source.size(); ++c) {
    auto t = source[c];
    std::vector<SparseIntMatrix::Entry> col;
    for (std::size_t i = 1; i + 1 <= k; ++i) {
      if (!is_smooth(t, i, d)) continue;
      std::copy(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i), scratch.begin());
      std::copy(t.begin() + static_cast<std::ptrdiff_t>(i) + 1, t.end(), scratch.begin() + static_cast<std::ptrdiff_t>(i));
      auto row = target.find(scratch);
      if (!row) throw std::logic_error("smooth deletion left the target basis");
      col.emplace_back(static_cast<std::uint32_t>(*row), Integer(i % 2 ? -1 : 1));
    }
    m.set_column(c, std::move(col));
  }
  return m;
}

TupleComplex build_complex(const ChainContext& ctx, unsigned length, const Restriction& restriction,
                           std::size_t budget) {
  Sweep s(ctx, length, restriction, std::nullopt, budget);
  s.run();
  TupleComplex out;
  out.length = length;
  out.restriction = restriction;
  out.bases = std::move(s.bases);
  out.algebra.min_degree = 0;
  for (const auto& b : out.bases) out.algebra.sizes.push_back(b.size());
  for (unsigned k = 1; k <= length; ++k) out.algebra.boundaries.push_back(boundary(ctx, out.bases[k], out.bases[k - 1]));
  return out;
}

TupleComplex truncate(const TupleComplex& c, unsigned lo, unsigned hi) {
  const unsigned min = c.algebra.min_degree;
  if (lo < min || hi > c.algebra.max_degree() || lo > hi) throw std::invalid_argument("truncation range out of bounds");
  TupleComplex out;
  out.length = c.length;
  out.restriction = c.restriction;
  out.algebra.min_degree = lo;
  for (unsigned k = lo; k <= hi; ++k) {
    out.bases.push_back(c.basis(k));
    out.algebra.sizes.push_back(c.algebra.size(k));
    if (k > lo) out.algebra.boundaries.push_back(c.algebra.boundary(k));
  }
  return out;
}

}  // namespace maghom
