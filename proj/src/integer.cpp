#include "maghom/integer.hpp"

#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace maghom {

namespace {

mpz_class mpz_from_int64(std::int64_t v) {
  mpz_class z;
  if (v >= std::numeric_limits<long>::min() && v <= std::numeric_limits<long>::max()) {
    z = static_cast<long>(v);
  } else {
    z = std::to_string(v);
  }
  return z;
}

}  // namespace

Integer::Integer(const mpz_class& v) { assign(mpz_class(v)); }

Integer::Integer(std::string_view decimal) {
  mpz_class z;
  if (z.set_str(std::string(decimal), 10) != 0) {
    throw std::invalid_argument("not a decimal integer: " + std::string(decimal));
  }
  assign(std::move(z));
}

Integer::Integer(const Integer& other) : small_(other.small_) {
  if (other.big_) big_ = std::make_unique<mpz_class>(*other.big_);
}

Integer& Integer::operator=(const Integer& other) {
  if (this == &other) return *this;
  small_ = other.small_;
  if (other.big_) {
    big_ = std::make_unique<mpz_class>(*other.big_);
  } else {
    big_.reset();
  }
  return *this;
}

void Integer::assign(mpz_class&& v) {
  if (mpz_fits_slong_p(v.get_mpz_t()) != 0) {
    small_ = v.get_si();
    big_.reset();
  } else {
    small_ = 0;
    big_ = std::make_unique<mpz_class>(std::move(v));
  }
}

int Integer::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (small_ > 0) - (small_ < 0);
}

mpz_class Integer::to_mpz() const { return big_ ? *big_ : mpz_from_int64(small_); }

double Integer::to_double() const { return big_ ? big_->get_d() : static_cast<double>(small_); }

std::string Integer::to_string() const { return big_ ? big_->get_str() : std::to_string(small_); }

Integer Integer::operator-() const {
  if (!big_ && small_ != std::numeric_limits<std::int64_t>::min()) return Integer(static_cast<long long>(-small_));
  Integer r;
  r.assign(-to_mpz());
  return r;
}

Integer Integer::abs() const { return sign() < 0 ? -*this : *this; }

Integer& Integer::operator+=(const Integer& rhs) {
  if (!big_ && !rhs.big_) {
    std::int64_t out;
    if (!__builtin_add_overflow(small_, rhs.small_, &out)) {
      small_ = out;
      return *this;
    }
  }
  assign(to_mpz() + rhs.to_mpz());
  return *this;
}

Integer& Integer::operator-=(const Integer& rhs) {
  if (!big_ && !rhs.big_) {
    std::int64_t out;
    if (!__builtin_sub_overflow(small_, rhs.small_, &out)) {
      small_ = out;
      return *this;
    }
  }
  assign(to_mpz() - rhs.to_mpz());
  return *this;
}

Integer& Integer::operator*=(const Integer& rhs) {
  if (!big_ && !rhs.big_) {
    std::int64_t out;
    if (!__builtin_mul_overflow(small_, rhs.small_, &out)) {
      small_ = out;
      return *this;
    }
  }
  assign(to_mpz() * rhs.to_mpz());
  return *this;
}

Integer Integer::divexact(const Integer& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("division by zero");
  if (!big_ && !divisor.big_ &&
      !(small_ == std::numeric_limits<std::int64_t>::min() && divisor.small_ == -1)) {
    return Integer(static_cast<long long>(small_ / divisor.small_));
  }
  mpz_class q;
  mpz_class a = to_mpz();
  mpz_class b = divisor.to_mpz();
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Integer r;
  r.assign(std::move(q));
  return r;
}

void Integer::floor_divmod(const Integer& a, const Integer& b, Integer& q, Integer& r) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.big_ && !b.big_ && !(a.small_ == std::numeric_limits<std::int64_t>::min() && b.small_ == -1)) {
    std::int64_t qq = a.small_ / b.small_;
    std::int64_t rr = a.small_ % b.small_;
    if (rr != 0 && ((rr < 0) != (b.small_ < 0))) {
      qq -= 1;
      rr += b.small_;
    }
    // Keep the remainder non-negative for negative divisors as well.
    if (rr < 0) {
      qq += 1;
      rr -= b.small_;
    }
    q = Integer(static_cast<long long>(qq));
    r = Integer(static_cast<long long>(rr));
    return;
  }
  mpz_class qq, rr;
  mpz_class za = a.to_mpz();
  mpz_class zb = b.to_mpz();
  mpz_fdiv_qr(qq.get_mpz_t(), rr.get_mpz_t(), za.get_mpz_t(), zb.get_mpz_t());
  if (sgn(rr) < 0) {
    rr -= zb;
    qq += 1;
  }
  q.assign(std::move(qq));
  r.assign(std::move(rr));
}

std::uint64_t Integer::mod(std::uint64_t modulus) const {
  if (!big_) {
    auto m = static_cast<__int128>(modulus);
    auto v = static_cast<__int128>(small_) % m;
    if (v < 0) v += m;
    return static_cast<std::uint64_t>(v);
  }
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return mpz_fdiv_ui(big_->get_mpz_t(), static_cast<unsigned long>(modulus));
}

Integer gcd(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_ && a.small_ != std::numeric_limits<std::int64_t>::min() &&
      b.small_ != std::numeric_limits<std::int64_t>::min()) {
    return Integer(static_cast<long long>(std::gcd(a.small_, b.small_)));
  }
  mpz_class g;
  mpz_class za = a.to_mpz();
  mpz_class zb = b.to_mpz();
  mpz_gcd(g.get_mpz_t(), za.get_mpz_t(), zb.get_mpz_t());
  Integer r;
  r.assign(std::move(g));
  return r;
}

bool operator==(const Integer& a, const Integer& b) noexcept {
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  if (a.big_ && b.big_) return cmp(*a.big_, *b.big_) == 0;
  return false;  // normalized: a big value never fits in 64 bits
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept {
  if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
  int c = cmp(a.to_mpz(), b.to_mpz());
  return c <=> 0;
}

std::strong_ordering compare_abs(const Integer& a, const Integer& b) noexcept {
  if (!a.big_ && !b.big_ && a.small_ != std::numeric_limits<std::int64_t>::min() &&
      b.small_ != std::numeric_limits<std::int64_t>::min()) {
    auto x = a.small_ < 0 ? -a.small_ : a.small_;
    auto y = b.small_ < 0 ? -b.small_ : b.small_;
    return x <=> y;
  }
  mpz_class za = a.to_mpz();
  mpz_class zb = b.to_mpz();
  int c = mpz_cmpabs(za.get_mpz_t(), zb.get_mpz_t());
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }

}  // namespace maghom
