#include "maghom/linalg.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>

namespace maghom {

SparseIntMatrix::SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<long long>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  SparseIntMatrix m(r, c);
  for (std::size_t j = 0; j < c; ++j) {
    std::vector<Entry> col;
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("ragged dense matrix");
      if (rows[i][j] != 0) col.emplace_back(static_cast<std::uint32_t>(i), Integer(rows[i][j]));
    }
    m.columns_[j] = std::move(col);
  }
  return m;
}

std::size_t SparseIntMatrix::nnz() const noexcept {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

void SparseIntMatrix::set_column(std::size_t c, std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  std::vector<Entry> merged;
  merged.reserve(entries.size());
  for (auto& e : entries) {
    if (e.first >= rows_) throw std::out_of_range("row index out of range");
    if (!merged.empty() && merged.back().first == e.first) {
      merged.back().second += e.second;
    } else {
      merged.push_back(std::move(e));
    }
  }
  std::erase_if(merged, [](const Entry& e) { return e.second.is_zero(); });
  columns_.at(c) = std::move(merged);
}

Integer SparseIntMatrix::at(std::size_t r, std::size_t c) const {
  const auto& col = columns_.at(c);
  auto it = std::lower_bound(col.begin(), col.end(), r, [](const Entry& e, std::size_t row) { return e.first < row; });
  if (it != col.end() && it->first == r) return it->second;
  return Integer();
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  SparseIntMatrix t(cols(), rows_);
  for (std::size_t c = 0; c < cols(); ++c)
    for (const auto& [r, v] : columns_[c]) t.columns_[r].emplace_back(static_cast<std::uint32_t>(c), v);
  return t;
}

SparseIntMatrix SparseIntMatrix::multiply(const SparseIntMatrix& rhs) const {
  if (cols() != rhs.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  SparseIntMatrix out(rows_, rhs.cols());
  std::vector<Integer> acc(rows_);
  std::vector<char> touched(rows_, 0);
  std::vector<std::uint32_t> rows_touched;
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    rows_touched.clear();
    for (const auto& [k, b] : rhs.columns_[j]) {
      for (const auto& [i, a] : columns_[k]) {
        if (!touched[i]) {
          touched[i] = 1;
          rows_touched.push_back(i);
          acc[i] = Integer();
        }
        acc[i] += a * b;
      }
    }
    std::sort(rows_touched.begin(), rows_touched.end());
    std::vector<Entry> col;
    for (auto i : rows_touched) {
      touched[i] = 0;
      if (!acc[i].is_zero()) col.emplace_back(i, std::move(acc[i]));
    }
    out.columns_[j] = std::move(col);
  }
  return out;
}

SparseIntMatrix SparseIntMatrix::permuted(std::span<const std::uint32_t> row_perm,
                                          std::span<const std::uint32_t> col_perm) const {
  if (row_perm.size() != rows_ || col_perm.size() != cols()) throw std::invalid_argument("permutation size mismatch");
  SparseIntMatrix out(rows_, cols());
  for (std::size_t c = 0; c < cols(); ++c) {
    std::vector<Entry> col;
    col.reserve(columns_[c].size());
    for (const auto& [r, v] : columns_[c]) col.emplace_back(row_perm[r], v);
    out.set_column(col_perm[c], std::move(col));
  }
  return out;
}

std::vector<std::vector<Integer>> SparseIntMatrix::to_dense() const {
  std::vector<std::vector<Integer>> d(rows_, std::vector<Integer>(cols()));
  for (std::size_t c = 0; c < cols(); ++c)
    for (const auto& [r, v] : columns_[c]) d[r][c] = v;
  return d;
}

namespace {

// ---------------------------------------------------------------------------
// Sparse elimination shared by the exact, modular and unit-pivot (SNF) paths.
//
// Works on column vectors. Each step takes the live vector with the fewest
// entries, pivots on its entry whose row occurs in the fewest live vectors
// (ties: smallest magnitude, then lowest row), and clears that row from every
// other live vector. The pivot vector is then retired.
// ---------------------------------------------------------------------------

template <class T>
using SparseVec = std::vector<std::pair<std::uint32_t, T>>;

template <class T, class Ops>
class Eliminator {
 public:
  Eliminator(std::size_t rows, std::vector<SparseVec<T>> vecs, Ops ops)
      : vecs_(std::move(vecs)), alive_(vecs_.size(), 1), row_count_(rows, 0), row_occ_(rows), ops_(std::move(ops)) {
    for (std::uint32_t v = 0; v < vecs_.size(); ++v) {
      for (const auto& e : vecs_[v]) {
        ++row_count_[e.first];
        row_occ_[e.first].push_back(v);
      }
      queue_.emplace(vecs_[v].size(), v);
    }
  }

  /// Returns the number of pivots taken.
  std::size_t run() {
    std::size_t pivots = 0;
    while (!queue_.empty()) {
      auto [len, v] = queue_.top();
      queue_.pop();
      if (!alive_[v] || len != vecs_[v].size()) continue;  // stale entry
      if (vecs_[v].empty()) {
        alive_[v] = 0;
        continue;
      }
      auto pivot = choose_pivot(v);
      if (!pivot) continue;  // no admissible pivot; left for the caller
      eliminate(v, *pivot);
      ++pivots;
    }
    return pivots;
  }

  /// Live, nonzero vectors left after run().
  std::vector<SparseVec<T>> remainder() {
    std::vector<SparseVec<T>> out;
    for (std::size_t v = 0; v < vecs_.size(); ++v)
      if (alive_[v] && !vecs_[v].empty()) out.push_back(std::move(vecs_[v]));
    return out;
  }

 private:
  std::optional<std::size_t> choose_pivot(std::uint32_t v) const {
    std::optional<std::size_t> best;
    const auto& vec = vecs_[v];
    for (std::size_t i = 0; i < vec.size(); ++i) {
      if (!ops_.admissible(vec[i].second)) continue;
      if (!best) {
        best = i;
        continue;
      }
      const auto& b = vec[*best];
      const auto& c = vec[i];
      auto rc = row_count_[c.first], rb = row_count_[b.first];
      if (rc != rb) {
        if (rc < rb) best = i;
        continue;
      }
      if (ops_.less_cost(c.second, b.second)) best = i;
    }
    return best;
  }

  void eliminate(std::uint32_t v, std::size_t pivot_pos) {
    alive_[v] = 0;
    for (const auto& e : vecs_[v]) --row_count_[e.first];
    const std::uint32_t r = vecs_[v][pivot_pos].first;
    const T a = vecs_[v][pivot_pos].second;
    std::vector<std::uint32_t> occ;
    occ.swap(row_occ_[r]);
    for (std::uint32_t u : occ) {
      if (!alive_[u] || u == v) continue;
      auto& uv = vecs_[u];
      auto it = std::lower_bound(uv.begin(), uv.end(), r, [](const auto& e, std::uint32_t row) { return e.first < row; });
      if (it == uv.end() || it->first != r) continue;
      T b = it->second;
      combine(u, v, a, b);
      queue_.emplace(vecs_[u].size(), u);
    }
  }

  // u <- ops.combine(u, v) with bookkeeping of row occupancy.
  void combine(std::uint32_t u, std::uint32_t v, const T& a, const T& b) {
    typename Ops::Scale s = ops_.scale(a, b);
    const auto& uv = vecs_[u];
    const auto& vv = vecs_[v];
    SparseVec<T> out;
    out.reserve(uv.size() + vv.size());
    std::size_t i = 0, j = 0;
    while (i < uv.size() || j < vv.size()) {
      if (j == vv.size() || (i < uv.size() && uv[i].first < vv[j].first)) {
        out.emplace_back(uv[i].first, ops_.apply_u_only(s, uv[i].second));
        ++i;
      } else if (i == uv.size() || vv[j].first < uv[i].first) {
        const std::uint32_t row = vv[j].first;
        out.emplace_back(row, ops_.apply_v_only(s, vv[j].second));
        ++row_count_[row];
        row_occ_[row].push_back(u);
        ++j;
      } else {
        T val = ops_.apply_both(s, uv[i].second, vv[j].second);
        if (ops_.is_zero(val)) {
          --row_count_[uv[i].first];
        } else {
          out.emplace_back(uv[i].first, std::move(val));
        }
        ++i;
        ++j;
      }
    }
    ops_.normalize(out);
    vecs_[u] = std::move(out);
  }

  std::vector<SparseVec<T>> vecs_;
  std::vector<char> alive_;
  std::vector<std::uint32_t> row_count_;
  std::vector<std::vector<std::uint32_t>> row_occ_;
  std::priority_queue<std::pair<std::size_t, std::uint32_t>, std::vector<std::pair<std::size_t, std::uint32_t>>,
                      std::greater<>>
      queue_;
  Ops ops_;
};

// Fraction-free: u <- (a/g) u - (b/g) v, then divide out the content of u.
// Only the rank survives these operations.
struct IntegerRankOps {
  struct Scale {
    Integer ua, vb;
  };
  static bool admissible(const Integer&) { return true; }
  static bool less_cost(const Integer& x, const Integer& y) { return compare_abs(x, y) < 0; }
  static bool is_zero(const Integer& x) { return x.is_zero(); }
  static Scale scale(const Integer& a, const Integer& b) {
    Integer g = gcd(a, b);
    return {a.divexact(g), b.divexact(g)};
  }
  static Integer apply_u_only(const Scale& s, const Integer& x) { return s.ua * x; }
  static Integer apply_v_only(const Scale& s, const Integer& y) { return -(s.vb * y); }
  static Integer apply_both(const Scale& s, const Integer& x, const Integer& y) { return s.ua * x - s.vb * y; }
  static void normalize(SparseVec<Integer>& vec) {
    if (vec.empty()) return;
    Integer g = vec[0].second.abs();
    for (std::size_t i = 1; i < vec.size() && !g.is_unit(); ++i) g = gcd(g, vec[i].second);
    if (g.is_unit()) return;
    for (auto& e : vec) e.second = e.second.divexact(g);
  }
};

// Unimodular column operations with unit pivots: u <- u - (b * a) v where a = ±1.
struct UnitPivotOps {
  struct Scale {
    Integer factor;
  };
  static bool admissible(const Integer& x) { return x.is_unit(); }
  static bool less_cost(const Integer&, const Integer&) { return false; }
  static bool is_zero(const Integer& x) { return x.is_zero(); }
  static Scale scale(const Integer& a, const Integer& b) { return {b * a}; }
  static Integer apply_u_only(const Scale&, const Integer& x) { return x; }
  static Integer apply_v_only(const Scale& s, const Integer& y) { return -(s.factor * y); }
  static Integer apply_both(const Scale& s, const Integer& x, const Integer& y) { return x - s.factor * y; }
  static void normalize(SparseVec<Integer>&) {}
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

struct ModularOps {
  std::uint64_t p;
  struct Scale {
    std::uint64_t factor;  // b / a mod p
  };
  static bool admissible(std::uint64_t) { return true; }
  static bool less_cost(std::uint64_t, std::uint64_t) { return false; }
  static bool is_zero(std::uint64_t x) { return x == 0; }
  Scale scale(std::uint64_t a, std::uint64_t b) const { return {mulmod(b, powmod(a, p - 2, p), p)}; }
  static std::uint64_t apply_u_only(const Scale&, std::uint64_t x) { return x; }
  std::uint64_t apply_v_only(const Scale& s, std::uint64_t y) const {
    std::uint64_t t = mulmod(s.factor, y, p);
    return t == 0 ? 0 : p - t;
  }
  std::uint64_t apply_both(const Scale& s, std::uint64_t x, std::uint64_t y) const {
    std::uint64_t t = mulmod(s.factor, y, p);
    return x >= t ? x - t : x + (p - t);
  }
  static void normalize(SparseVec<std::uint64_t>&) {}
};

std::vector<SparseVec<Integer>> integer_columns(const SparseIntMatrix& m) {
  std::vector<SparseVec<Integer>> vecs(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    auto col = m.column(c);
    vecs[c].assign(col.begin(), col.end());
  }
  return vecs;
}

std::size_t exact_rank(const SparseIntMatrix& m) {
  Eliminator<Integer, IntegerRankOps> e(m.rows(), integer_columns(m), IntegerRankOps{});
  return e.run();
}

// Dense Smith normal form by repeated gcd reduction; returns factors of a
// nonzero-free dense block (no zero handling needed by callers beyond rank).
std::vector<Integer> dense_smith(std::vector<std::vector<Integer>> a) {
  std::vector<Integer> factors;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero magnitude in the trailing block goes to (t, t).
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (!a[i][j].is_zero() && (pr == rows || compare_abs(a[i][j], a[pr][pc]) < 0)) {
            pr = i;
            pc = j;
          }
      if (pr == rows) return factors;
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);
      bool clean = true;
      Integer q, r;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t].is_zero()) continue;
        Integer::floor_divmod(a[i][t], a[t][t], q, r);
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (!a[i][t].is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j].is_zero()) continue;
        Integer::floor_divmod(a[t][j], a[t][t], q, r);
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (!a[t][j].is_zero()) clean = false;
      }
      if (!clean) continue;
      // Enforce the divisibility chain: fold an offending row into row t.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j) {
          Integer::floor_divmod(a[i][j], a[t][t], q, r);
          if (!r.is_zero()) {
            bad = i;
            break;
          }
        }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) a[t][j] += a[bad][j];
    }
    factors.push_back(a[t][t].abs());
  }
  return factors;
}

}  // namespace

std::size_t rank_mod_prime(const SparseIntMatrix& m, std::uint64_t p) {
  if (p < 2 || p >= (std::uint64_t{1} << 63)) throw std::invalid_argument("modulus out of range");
  std::vector<SparseVec<std::uint64_t>> vecs(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (const auto& [r, v] : m.column(c)) {
      std::uint64_t x = v.mod(p);
      if (x != 0) vecs[c].emplace_back(r, x);
    }
  }
  Eliminator<std::uint64_t, ModularOps> e(m.rows(), std::move(vecs), ModularOps{p});
  return e.run();
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for all 64-bit n.
  for (std::uint64_t base : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(base, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t random_prime(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (;;) {
    std::uint64_t c = (rng() >> 3) | (std::uint64_t{1} << 61) | 1;
    if (is_prime_u64(c)) return c;
  }
}

std::size_t rank(const SparseIntMatrix& m, const RankOptions& options) {
  switch (options.method) {
    case RankMethod::Exact:
      return exact_rank(m);
    case RankMethod::Modular:
      return rank_mod_prime(m, random_prime(options.seed));
    case RankMethod::Both: {
      std::size_t exact = exact_rank(m);
      std::size_t modular = rank_mod_prime(m, random_prime(options.seed));
      // Reduction mod p can only lose rank; a larger modular rank is a bug.
      if (modular > exact) throw std::logic_error("modular rank exceeds exact rank");
      if (modular != exact) throw std::logic_error("modular rank disagrees with exact rank");
      return exact;
    }
  }
  throw std::invalid_argument("unknown rank method");
}

SmithForm smith_normal_form(const SparseIntMatrix& m) {
  Eliminator<Integer, UnitPivotOps> e(m.rows(), integer_columns(m), UnitPivotOps{});
  std::size_t units = e.run();
  SmithForm out;
  out.factors.assign(units, Integer(1));
  auto rest = e.remainder();
  if (rest.empty()) return out;
  std::vector<std::uint32_t> used_rows;
  for (const auto& v : rest)
    for (const auto& entry : v) used_rows.push_back(entry.first);
  std::sort(used_rows.begin(), used_rows.end());
  used_rows.erase(std::unique(used_rows.begin(), used_rows.end()), used_rows.end());
  std::vector<std::vector<Integer>> dense(used_rows.size(), std::vector<Integer>(rest.size()));
  for (std::size_t j = 0; j < rest.size(); ++j) {
    for (const auto& [r, v] : rest[j]) {
      auto i = std::lower_bound(used_rows.begin(), used_rows.end(), r) - used_rows.begin();
      dense[static_cast<std::size_t>(i)][j] = v;
    }
  }
  for (auto& f : dense_smith(std::move(dense))) out.factors.push_back(std::move(f));
  return out;
}

namespace {

void check_composable(const SparseIntMatrix& d_k, const SparseIntMatrix& d_k1) {
  if (d_k.cols() != d_k1.rows()) {
    throw std::logic_error("boundary maps do not compose: " + std::to_string(d_k.cols()) + " vs " +
                           std::to_string(d_k1.rows()));
  }
}

HomologyGroup group_from(std::size_t dim, std::size_t rank_out, const SmithForm* in) {
  HomologyGroup h;
  std::size_t rank_in = in ? in->rank() : 0;
  h.rank = dim - rank_out - rank_in;
  if (in) {
    for (const auto& f : in->factors)
      if (!f.is_unit()) h.torsion.push_back(f);
  }
  return h;
}

}  // namespace

HomologyGroup homology_of_pair(const SparseIntMatrix& d_k, const SparseIntMatrix& d_k1, bool torsion) {
  check_composable(d_k, d_k1);
  if (!d_k.multiply(d_k1).is_zero()) throw std::logic_error("boundary maps compose to a nonzero map");
  std::size_t r_out = rank(d_k);
  if (torsion) {
    SmithForm in = smith_normal_form(d_k1);
    return group_from(d_k.cols(), r_out, &in);
  }
  HomologyGroup h;
  h.rank = d_k.cols() - r_out - rank(d_k1);
  return h;
}

std::vector<HomologyGroup> complex_homology(const ChainComplex& c, bool torsion, const RankOptions& options) {
  const std::size_t degrees = c.sizes.size();
  if (c.boundaries.size() + 1 != degrees && !(degrees == 0 && c.boundaries.empty())) {
    throw std::logic_error("chain complex has inconsistent boundary count");
  }
  std::vector<std::size_t> ranks(c.boundaries.size());
  std::vector<SmithForm> snf(torsion ? c.boundaries.size() : 0);
  for (std::size_t i = 0; i < c.boundaries.size(); ++i) {
    const auto& b = c.boundaries[i];
    if (b.rows() != c.sizes[i] || b.cols() != c.sizes[i + 1]) throw std::logic_error("boundary shape mismatch");
    if (torsion) {
      snf[i] = smith_normal_form(b);
      ranks[i] = snf[i].rank();
    } else {
      ranks[i] = rank(b, options);
    }
  }
  std::vector<HomologyGroup> out(degrees);
  for (std::size_t i = 0; i < degrees; ++i) {
    std::size_t r_out = i > 0 ? ranks[i - 1] : 0;
    const SmithForm* in = (torsion && i < c.boundaries.size()) ? &snf[i] : nullptr;
    if (torsion) {
      out[i] = group_from(c.sizes[i], r_out, in);
    } else {
      out[i].rank = c.sizes[i] - r_out - (i < ranks.size() ? ranks[i] : 0);
    }
  }
  return out;
}

}  // namespace maghom
