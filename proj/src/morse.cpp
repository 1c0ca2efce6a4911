#include "maghom/morse.hpp"

#include <algorithm>
#include <unordered_map>

namespace maghom {

namespace {

constexpr std::uint32_t kNone = UINT32_MAX;

// Per-degree mate tables: up[k][cell] is the degree-(k+1) mate of a lower
// cell, down[k][cell] the degree-(k-1) mate of an upper cell.
struct Mates {
  std::vector<std::vector<std::uint32_t>> up, down;
  std::vector<std::vector<int>> coef_down;
};

unsigned offset(const ChainComplex& c, unsigned k) { return k - c.min_degree; }

}  // namespace

MatchingReport validate_matching(const ChainComplex& c, const MorseMatching& m) {
  MatchingReport rep;
  const std::size_t degrees = c.sizes.size();
  std::vector<std::vector<char>> used(degrees);
  for (std::size_t i = 0; i < degrees; ++i) used[i].assign(c.sizes[i], 0);
  std::vector<std::vector<std::uint32_t>> down(degrees);
  for (std::size_t i = 0; i < degrees; ++i) down[i].assign(c.sizes[i], kNone);
  for (const auto& p : m.pairs) {
    auto fail = [&](MatchingViolation v, const std::string& what) {
      rep.violation = v;
      rep.detail = what + " at degree " + std::to_string(p.degree) + " pair (" + std::to_string(p.upper) + ", " +
                   std::to_string(p.lower) + ")";
    };
    if (p.degree <= c.min_degree || p.degree > c.max_degree() || p.upper >= c.size(p.degree) ||
        p.lower >= c.size(p.degree - 1)) {
      fail(MatchingViolation::OutOfRange, "pair outside the complex");
      return rep;
    }
    const unsigned ku = offset(c, p.degree);
    if (used[ku][p.upper] || used[ku - 1][p.lower]) {
      fail(MatchingViolation::Overlap, "cell matched twice");
      return rep;
    }
    used[ku][p.upper] = used[ku - 1][p.lower] = 1;
    down[ku][p.upper] = p.lower;
    Integer entry = c.boundary(p.degree).at(p.lower, p.upper);
    if (!entry.is_unit()) {
      fail(MatchingViolation::NonUnit, "coefficient is not a unit");
      return rep;
    }
    if (entry != Integer(p.coefficient)) {
      fail(MatchingViolation::CoefficientMismatch, "recorded coefficient differs from the boundary");
      return rep;
    }
  }
  // Layer digraph on uppers of degree k: u -> u' when some w != mate(u) in the
  // boundary of u is the lower mate of u'.
  for (unsigned k = c.min_degree + 1; k <= c.max_degree(); ++k) {
    const unsigned ku = offset(c, k);
    std::vector<std::uint32_t> owner(c.size(k - 1), kNone);  // lower cell -> its upper
    for (std::uint32_t u = 0; u < c.size(k); ++u)
      if (down[ku][u] != kNone) owner[down[ku][u]] = u;
    const auto& bd = c.boundary(k);
    std::vector<char> state(c.size(k), 0);  // 0 new, 1 on stack, 2 done
    std::vector<std::pair<std::uint32_t, std::size_t>> stack;
    for (std::uint32_t root = 0; root < c.size(k); ++root) {
      if (down[ku][root] == kNone || state[root]) continue;
      stack.emplace_back(root, 0);
      state[root] = 1;
      while (!stack.empty()) {
        auto& [u, pos] = stack.back();
        auto col = bd.column(u);
        if (pos == col.size()) {
          state[u] = 2;
          stack.pop_back();
          continue;
        }
        std::uint32_t w = col[pos++].first;
        if (w == down[ku][u]) continue;
        std::uint32_t next = owner[w];
        if (next == kNone) continue;
        if (state[next] == 1) {
          rep.violation = MatchingViolation::Cycle;
          rep.detail = "cycle through upper cell " + std::to_string(next) + " at degree " + std::to_string(k);
          return rep;
        }
        if (state[next] == 0) {
          state[next] = 1;
          stack.emplace_back(next, 0);
        }
      }
    }
  }
  return rep;
}

ReducedComplex reduce(const ChainComplex& c, const MorseMatching& m) {
  if (auto rep = validate_matching(c, m); !rep.ok()) throw PreconditionError("invalid Morse matching: " + rep.detail);
  const std::size_t degrees = c.sizes.size();
  Mates mates;
  mates.up.resize(degrees);
  mates.down.resize(degrees);
  mates.coef_down.resize(degrees);
  for (std::size_t i = 0; i < degrees; ++i) {
    mates.up[i].assign(c.sizes[i], kNone);
    mates.down[i].assign(c.sizes[i], kNone);
    mates.coef_down[i].assign(c.sizes[i], 0);
  }
  for (const auto& p : m.pairs) {
    const unsigned ku = offset(c, p.degree);
    mates.down[ku][p.upper] = p.lower;
    mates.coef_down[ku][p.upper] = p.coefficient;
    mates.up[ku - 1][p.lower] = p.upper;
  }

  ReducedComplex out;
  out.algebra.min_degree = c.min_degree;
  out.valid_from = c.min_degree;
  out.critical.resize(degrees);
  std::vector<std::vector<std::uint32_t>> position(degrees);  // source index -> critical index
  for (std::size_t i = 0; i < degrees; ++i) {
    position[i].assign(c.sizes[i], kNone);
    for (std::uint32_t v = 0; v < c.sizes[i]; ++v) {
      if (mates.up[i][v] == kNone && mates.down[i][v] == kNone) {
        position[i][v] = static_cast<std::uint32_t>(out.critical[i].size());
        out.critical[i].push_back(v);
      }
    }
    out.algebra.sizes.push_back(out.critical[i].size());
  }

  using Vec = std::vector<SparseIntMatrix::Entry>;  // over critical cells of degree k-1
  for (unsigned k = c.min_degree + 1; k <= c.max_degree(); ++k) {
    const unsigned ku = offset(c, k);
    const unsigned kl = ku - 1;
    const auto& bd = c.boundary(k);
    // phi[w]: image of a degree-(k-1) cell in the critical cells. Critical
    // cells map to themselves, upper cells to zero, and a lower cell w with
    // mate u to -coef * sum over w' != w of bd(u, w') phi[w'].
    std::vector<std::optional<Vec>> phi(c.size(k - 1));
    auto accumulate = [](std::unordered_map<std::uint32_t, Integer>& acc, const Vec& v, const Integer& s) {
      for (const auto& [r, x] : v) acc[r] += s * x;
    };
    auto to_vec = [](std::unordered_map<std::uint32_t, Integer>& acc) {
      Vec v;
      for (auto& [r, x] : acc)
        if (!x.is_zero()) v.emplace_back(r, std::move(x));
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      return v;
    };
    auto resolve = [&](std::uint32_t root) {
      if (phi[root]) return;
      std::vector<std::uint32_t> stack{root};
      while (!stack.empty()) {
        std::uint32_t w = stack.back();
        if (phi[w]) {
          stack.pop_back();
          continue;
        }
        if (position[kl][w] != kNone) {
          phi[w] = Vec{{position[kl][w], Integer(1)}};
          stack.pop_back();
          continue;
        }
        std::uint32_t u = mates.up[kl][w];
        if (u == kNone) {  // upper cell of a lower pair, or unreachable: projects to zero
          phi[w] = Vec{};
          stack.pop_back();
          continue;
        }
        bool ready = true;
        for (const auto& [w2, x] : bd.column(u)) {
          if (w2 != w && !phi[w2]) {
            stack.push_back(w2);
            ready = false;
          }
        }
        if (!ready) continue;  // acyclicity (validated) guarantees progress
        std::unordered_map<std::uint32_t, Integer> acc;
        const Integer scale(-mates.coef_down[ku][u]);
        for (const auto& [w2, x] : bd.column(u))
          if (w2 != w) accumulate(acc, *phi[w2], scale * x);
        phi[w] = to_vec(acc);
        stack.pop_back();
      }
    };
    SparseIntMatrix red(out.critical[kl].size(), out.critical[ku].size());
    for (std::size_t a = 0; a < out.critical[ku].size(); ++a) {
      std::unordered_map<std::uint32_t, Integer> acc;
      for (const auto& [w, x] : bd.column(out.critical[ku][a])) {
        resolve(w);
        accumulate(acc, *phi[w], x);
      }
      red.set_column(a, to_vec(acc));
    }
    out.algebra.boundaries.push_back(std::move(red));
  }
  return out;
}

std::optional<unsigned> h_depth(const Extended& girth_x, unsigned length) {
  if (girth_x < Extended(5)) return std::nullopt;
  if (length == 0) return 0;
  if (girth_x.is_infinite()) return length - 1;
  const auto i = static_cast<unsigned>(std::min<std::uint64_t>((girth_x.value() - 5) / 2, length - 1));
  return i;
}

namespace {

VertexId start_of(const TupleComplex& c) {
  if (!c.restriction.start) throw PreconditionError("girth matchings need a start-restricted complex");
  return *c.restriction.start;
}

std::vector<VertexId> delete_at(std::span<const VertexId> t, std::size_t j) {
  std::vector<VertexId> out;
  out.reserve(t.size() - 1);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (i != j) out.push_back(t[i]);
  return out;
}

}  // namespace

MorseMatching build_f_matching(const ChainContext& ctx, const TupleComplex& c, unsigned i_max) {
  const VertexId x = start_of(c);
  if (girth_vertex(ctx.graph(), x) < Extended(5)) {
    throw PreconditionError("f-matching needs local girth >= 5 at vertex " + std::to_string(x));
  }
  const unsigned length = c.length;
  if (length > 0 && i_max > length - 1) throw std::invalid_argument("f-matching depth exceeds l - 1");
  MorseMatching m;
  if (length == 0 || c.algebra.min_degree != 0) return m;
  const DistanceMatrix& d = ctx.distances();
  for (unsigned i = 0; i <= i_max; ++i) {
    const unsigned k = length - i;
    if (k < 2) break;
    const ChainBasis& up = c.basis(k);
    const ChainBasis& low = c.basis(k - 1);
    for (std::size_t u = 0; u < up.size(); ++u) {
      auto j = first_smooth_before_gap(up[u], d);
      if (!j) continue;
      auto w = low.find(delete_at(up[u], *j));
      if (!w) throw std::logic_error("f-matching target missing from basis");
      m.pairs.push_back(MatchedPair{k, static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(*w), *j % 2 ? -1 : 1});
    }
  }
  return m;
}

ChainComplex truncate(const ChainComplex& c, unsigned lo, unsigned hi) {
  if (lo < c.min_degree || hi > c.max_degree() || lo > hi) throw std::invalid_argument("truncation range out of bounds");
  ChainComplex out;
  out.min_degree = lo;
  for (unsigned k = lo; k <= hi; ++k) {
    out.sizes.push_back(c.size(k));
    if (k > lo) out.boundaries.push_back(c.boundary(k));
  }
  return out;
}

MorseMatching build_h_matching(const ChainContext& ctx, const TupleComplex& c, const ReducedComplex& f_reduced,
                               const ChainComplex& truncated, unsigned i) {
  const VertexId x = start_of(c);
  MorseMatching m;
  if (i == 0) return m;
  const unsigned length = c.length;
  if (i > length - 1) throw std::invalid_argument("h-matching depth exceeds l - 1");
  Extended gx = girth_vertex(ctx.graph(), x);
  if (gx < Extended(2 * i + 5)) {
    throw PreconditionError("h-matching of depth " + std::to_string(i) + " needs local girth >= " +
                            std::to_string(2 * i + 5) + " at vertex " + std::to_string(x));
  }
  if (truncated.min_degree != length - i - 1 || truncated.max_degree() != length) {
    throw std::invalid_argument("h-matching expects the truncation to degrees l-i-1..l");
  }
  const DistanceMatrix& d = ctx.distances();
  for (unsigned j = 1; j <= i; ++j) {
    const unsigned k = length - j;
    auto crit_up = f_reduced.critical_cells(k);
    auto crit_low = f_reduced.critical_cells(k - 1);
    const auto& bd = truncated.boundary(k);
    for (std::uint32_t a = 0; a < crit_up.size(); ++a) {
      auto t = c.basis(k)[crit_up[a]];
      auto cond = classify_unmatched(t, ctx);
      if (cond != UnmatchedCondition::LongGapLate && cond != UnmatchedCondition::ShortGapLate) continue;
      const std::size_t g = first_gap(t, d)->index;
      if (!is_smooth(t, g, d)) continue;
      auto w = c.basis(k - 1).find(delete_at(t, g));
      if (!w) throw std::logic_error("h-matching target missing from basis");
      auto it = std::lower_bound(crit_low.begin(), crit_low.end(), static_cast<std::uint32_t>(*w));
      if (it == crit_low.end() || *it != *w) {
        throw PreconditionError("h-matching target is not critical for the f-matching");
      }
      auto b = static_cast<std::uint32_t>(it - crit_low.begin());
      Integer coef = bd.at(b, a);
      if (!coef.is_unit()) throw PreconditionError("h-matching coefficient is not a unit");
      m.pairs.push_back(MatchedPair{k, a, b, static_cast<int>(coef.small_value())});
    }
  }
  return m;
}

UnmatchedCondition classify_unmatched(std::span<const VertexId> t, const ChainContext& ctx) {
  const DistanceMatrix& d = ctx.distances();
  auto gap = first_gap(t, d);
  auto smooth = first_smooth_before_gap(t, d);
  if (smooth) return UnmatchedCondition::Matched;
  if (!gap) return UnmatchedCondition::NoGapNoSmooth;
  const std::size_t g = gap->index;
  if (g == 0) return gap->distance >= 3 ? UnmatchedCondition::LongGapFirst : UnmatchedCondition::Matched;
  if (gap->distance >= 3) return UnmatchedCondition::LongGapLate;
  // Distance two: matched iff inserting some common neighbour z makes z the
  // first smooth point before the first gap.
  std::vector<VertexId> inserted(t.begin(), t.end());
  inserted.insert(inserted.begin() + static_cast<std::ptrdiff_t>(g) + 1, 0);
  const Graph& gr = ctx.graph();
  auto nx = gr.neighbors(t[g]);
  auto ny = gr.neighbors(t[g + 1]);
  std::vector<VertexId> common;
  std::set_intersection(nx.begin(), nx.end(), ny.begin(), ny.end(), std::back_inserter(common));
  for (VertexId z : common) {
    inserted[g + 1] = z;
    auto j = first_smooth_before_gap(inserted, d);
    if (j && *j == g + 1) return UnmatchedCondition::Matched;
  }
  return UnmatchedCondition::ShortGapLate;
}

const char* to_string(UnmatchedCondition c) noexcept {
  switch (c) {
    case UnmatchedCondition::NoGapNoSmooth:
      return "(i)";
    case UnmatchedCondition::LongGapLate:
      return "(ii)";
    case UnmatchedCondition::ShortGapLate:
      return "(iii)";
    case UnmatchedCondition::LongGapFirst:
      return "(iv)";
    case UnmatchedCondition::Matched:
      return "matched";
  }
  return "?";
}

namespace {
void write_tuple(std::ostream& os, std::span<const VertexId> t) {
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ')';
}
}  // namespace

void dump_matching(std::ostream& os, const TupleComplex& c, const MorseMatching& m) {
  for (const auto& p : m.pairs) {
    os << p.degree << ' ';
    write_tuple(os, c.basis(p.degree)[p.upper]);
    os << " -> ";
    write_tuple(os, c.basis(p.degree - 1)[p.lower]);
    os << ' ' << (p.coefficient > 0 ? "+1" : "-1") << '\n';
  }
}

void dump_critical(std::ostream& os, const TupleComplex& c, const ReducedComplex& r) {
  for (unsigned k = r.algebra.min_degree; k <= r.algebra.max_degree(); ++k) {
    for (auto idx : r.critical_cells(k)) {
      os << k << ' ';
      write_tuple(os, c.basis(k)[idx]);
      os << '\n';
    }
  }
}

}  // namespace maghom
