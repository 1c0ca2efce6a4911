#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace maghom {

/// Arbitrary-precision signed integer.
///
/// Values that fit in 64 bits live inline; every operation checks for
/// overflow and promotes to a GMP integer instead of wrapping. Results are
/// demoted back to the inline form whenever they fit, so the ±1-dominated
/// arithmetic of boundary matrices never touches the heap.
class Integer {
 public:
  Integer() noexcept = default;
  Integer(long long v) noexcept : small_(v) {}  // NOLINT(implicit)
  Integer(int v) noexcept : small_(v) {}        // NOLINT(implicit)
  explicit Integer(const mpz_class& v);
  explicit Integer(std::string_view decimal);

  Integer(const Integer& other);
  Integer(Integer&& other) noexcept = default;
  Integer& operator=(const Integer& other);
  Integer& operator=(Integer&& other) noexcept = default;
  ~Integer() = default;

  bool is_zero() const noexcept { return !big_ && small_ == 0; }
  bool is_unit() const noexcept { return !big_ && (small_ == 1 || small_ == -1); }
  bool is_small() const noexcept { return !big_; }
  int sign() const noexcept;

  /// Value as int64; precondition: is_small().
  std::int64_t small_value() const noexcept { return small_; }
  mpz_class to_mpz() const;
  double to_double() const;
  std::string to_string() const;

  Integer operator-() const;
  Integer abs() const;

  Integer& operator+=(const Integer& rhs);
  Integer& operator-=(const Integer& rhs);
  Integer& operator*=(const Integer& rhs);

  friend Integer operator+(Integer lhs, const Integer& rhs) { return lhs += rhs; }
  friend Integer operator-(Integer lhs, const Integer& rhs) { return lhs -= rhs; }
  friend Integer operator*(Integer lhs, const Integer& rhs) { return lhs *= rhs; }

  /// Exact quotient; precondition: divisor divides *this.
  Integer divexact(const Integer& divisor) const;
  /// Floor division and the matching non-negative remainder (divisor != 0).
  static void floor_divmod(const Integer& a, const Integer& b, Integer& q, Integer& r);
  /// Residue in [0, modulus).
  std::uint64_t mod(std::uint64_t modulus) const;

  friend Integer gcd(const Integer& a, const Integer& b);
  friend bool operator==(const Integer& a, const Integer& b) noexcept;
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept;
  /// Compares absolute values.
  friend std::strong_ordering compare_abs(const Integer& a, const Integer& b) noexcept;

  friend std::ostream& operator<<(std::ostream& os, const Integer& v);

 private:
  void assign(mpz_class&& v);

  std::int64_t small_ = 0;
  std::unique_ptr<mpz_class> big_;
};

}  // namespace maghom
