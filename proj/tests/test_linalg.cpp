#include <doctest.h>

#include <random>

#include "maghom/linalg.hpp"
#include "support.hpp"

using namespace maghom;

namespace {

SparseIntMatrix random_sparse(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density, int range) {
  std::vector<std::vector<long long>> d(rows, std::vector<long long>(cols, 0));
  for (auto& row : d)
    for (auto& v : row)
      if (uniform01(rng) < density) v = static_cast<long long>(uniform01(rng) * (2 * range + 1)) - range;
  return SparseIntMatrix::from_dense(d);
}

// Low-rank product so rank deficiency actually occurs.
SparseIntMatrix random_low_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t r) {
  SparseIntMatrix a = random_sparse(rng, rows, r, 0.5, 2);
  SparseIntMatrix b = random_sparse(rng, r, cols, 0.5, 2);
  return a.multiply(b);
}

std::vector<std::uint32_t> random_perm(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[static_cast<std::size_t>(uniform01(rng) * i)]);
  return p;
}

}  // namespace

TEST_CASE("integer arithmetic crosses into big values") {
  Integer a(static_cast<long long>(INT64_MAX));
  Integer b = a + Integer(1);
  CHECK_FALSE(b.is_small());
  CHECK(b.to_string() == "9223372036854775808");
  CHECK((b - Integer(1)) == a);
  CHECK((b - Integer(1)).is_small());
  Integer big = b * b;
  CHECK(big.divexact(b) == b);
  CHECK(gcd(big, Integer(6)) == Integer(2));
  CHECK(Integer("-123456789012345678901234567890").to_string() == "-123456789012345678901234567890");
  Integer q, r;
  Integer::floor_divmod(Integer(-7), Integer(2), q, r);
  CHECK(q == Integer(-4));
  CHECK(r == Integer(1));
  CHECK(Integer(-7).mod(5) == 3);
  CHECK((Integer(static_cast<long long>(INT64_MIN)) * Integer(-1)).to_string() == "9223372036854775808");
}

TEST_CASE("sparse matrix basics") {
  SparseIntMatrix m = SparseIntMatrix::from_dense({{1, 0, 2}, {0, 0, -3}});
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK(m.nnz() == 3);
  CHECK(m.at(1, 2) == Integer(-3));
  CHECK(m.transpose().transpose() == m);
  m.set_column(0, {{1, Integer(4)}, {1, Integer(-4)}, {0, Integer(0)}});
  CHECK(m.column(0).empty());
  SparseIntMatrix id = SparseIntMatrix::from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(m.multiply(id) == m);
  CHECK_THROWS_AS(id.multiply(m), std::invalid_argument);
}

TEST_CASE("rank examples") {
  CHECK(rank(SparseIntMatrix(4, 5)) == 0);
  std::vector<std::vector<long long>> id(5, std::vector<long long>(5, 0));
  for (int i = 0; i < 5; ++i) id[i][i] = 1;
  CHECK(rank(SparseIntMatrix::from_dense(id)) == 5);
  CHECK(rank(SparseIntMatrix::from_dense({{2, 4}, {4, 8}})) == 1);
  CHECK(rank(SparseIntMatrix(0, 0)) == 0);
}

TEST_CASE("rank agrees with dense elimination and is permutation invariant") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 120; ++t) {
    const std::size_t rows = 1 + static_cast<std::size_t>(uniform01(rng) * 14);
    const std::size_t cols = 1 + static_cast<std::size_t>(uniform01(rng) * 14);
    SparseIntMatrix m = t % 2 ? random_sparse(rng, rows, cols, 0.3, 3)
                              : random_low_rank(rng, rows, cols, 1 + static_cast<std::size_t>(uniform01(rng) * 4));
    const std::size_t want = maghom::testing::dense_rank(m.to_dense());
    CHECK(rank(m) == want);
    CHECK(rank(m.transpose()) == want);
    auto rp = random_perm(rng, rows);
    auto cp = random_perm(rng, cols);
    CHECK(rank(m.permuted(rp, cp)) == want);
  }
}

TEST_CASE("rank survives entry growth beyond 64 bits") {
  // Vandermonde columns with entries far past 64 bits; rank is full.
  SparseIntMatrix m(6, 6);
  for (long long x = 2; x <= 7; ++x) {
    std::vector<SparseIntMatrix::Entry> col;
    Integer v(1000003);
    for (std::uint32_t j = 0; j < 6; ++j) {
      col.emplace_back(j, v);
      v *= Integer(x * 1000003);
    }
    m.set_column(static_cast<std::size_t>(x - 2), col);
  }
  CHECK_FALSE(m.at(5, 0).is_small());
  CHECK(rank(m) == 6);
  CHECK(maghom::testing::dense_rank(m.to_dense()) == 6);
}

TEST_CASE("modular rank agrees with exact rank") {
  std::mt19937_64 rng(99);
  const std::uint64_t p = random_prime(5);
  CHECK(is_prime_u64(p));
  CHECK(p >= (1ULL << 61));
  CHECK(p < (1ULL << 62));
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = 1 + static_cast<std::size_t>(uniform01(rng) * 50);
    const std::size_t cols = 1 + static_cast<std::size_t>(uniform01(rng) * 50);
    SparseIntMatrix m = t % 3 ? random_sparse(rng, rows, cols, 0.08, 2)
                              : random_low_rank(rng, rows, cols, 1 + static_cast<std::size_t>(uniform01(rng) * 10));
    const std::size_t exact = rank(m);
    CHECK(rank_mod_prime(m, p) == exact);
    CHECK(rank(m, RankOptions{RankMethod::Both, static_cast<std::uint64_t>(t)}) == exact);
  }
}

TEST_CASE("primality") {
  CHECK_FALSE(is_prime_u64(0));
  CHECK_FALSE(is_prime_u64(1));
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(2305843009213693951ULL));  // 2^61 - 1
  CHECK_FALSE(is_prime_u64(3215031751ULL));     // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(random_prime(1) != random_prime(2));
}

TEST_CASE("smith normal form examples") {
  SmithForm a = smith_normal_form(SparseIntMatrix::from_dense({{2, 0}, {0, 6}}));
  CHECK(a.factors == std::vector<Integer>{2, 6});
  SmithForm b = smith_normal_form(SparseIntMatrix::from_dense({{2, 4}, {4, 8}}));
  CHECK(b.factors == std::vector<Integer>{2});
  CHECK(b.rank() == 1);
  CHECK(smith_normal_form(SparseIntMatrix(0, 0)).factors.empty());
  SmithForm c = smith_normal_form(SparseIntMatrix::from_dense({{2, 0}, {0, 3}}));
  CHECK(c.factors == std::vector<Integer>{1, 6});
}

TEST_CASE("smith normal form matches the gcd-of-minors oracle") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 150; ++t) {
    const std::size_t rows = 1 + static_cast<std::size_t>(uniform01(rng) * 5);
    const std::size_t cols = 1 + static_cast<std::size_t>(uniform01(rng) * 5);
    SparseIntMatrix m = random_sparse(rng, rows, cols, 0.6, 6);
    SmithForm s = smith_normal_form(m);
    CHECK(s.rank() == rank(m));
    for (std::size_t i = 0; i + 1 < s.factors.size(); ++i) {
      Integer q, r;
      Integer::floor_divmod(s.factors[i + 1], s.factors[i], q, r);
      CHECK(r.is_zero());
    }
    auto g = maghom::testing::minor_gcds(m.to_dense());
    Integer prod(1);
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (j < s.factors.size()) {
        prod *= s.factors[j];
        CHECK(prod == g[j]);
      } else {
        CHECK(g[j].is_zero());
      }
    }
  }
}

TEST_CASE("homology_of_pair") {
  // Zero maps: everything survives.
  CHECK(homology_of_pair(SparseIntMatrix(0, 3), SparseIntMatrix(3, 0)).rank == 3);
  // Exact: Z --2--> Z is injective with cokernel Z/2.
  HomologyGroup h = homology_of_pair(SparseIntMatrix(0, 1), SparseIntMatrix::from_dense({{2}}));
  CHECK(h.rank == 0);
  CHECK(h.torsion == std::vector<Integer>{2});
  CHECK(homology_of_pair(SparseIntMatrix(0, 1), SparseIntMatrix::from_dense({{1}})).is_zero());
  CHECK_THROWS_AS(homology_of_pair(SparseIntMatrix(1, 2), SparseIntMatrix(3, 1)), std::logic_error);
  CHECK_THROWS_AS(homology_of_pair(SparseIntMatrix::from_dense({{1}}), SparseIntMatrix::from_dense({{1}})),
                  std::logic_error);
}

TEST_CASE("complex homology of a triangle boundary") {
  // Simplicial circle: 3 vertices, 3 edges.
  ChainComplex c;
  c.min_degree = 0;
  c.sizes = {3, 3};
  c.boundaries = {SparseIntMatrix::from_dense({{-1, 0, 1}, {1, -1, 0}, {0, 1, -1}})};
  auto h = complex_homology(c, true);
  CHECK(h[0].rank == 1);
  CHECK(h[1].rank == 1);
}
