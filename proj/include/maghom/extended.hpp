#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace maghom {

/// A non-negative integer or Infinity. Infinity compares greater than every
/// finite value and absorbs addition. Serialized as "inf".
class Extended {
 public:
  constexpr Extended() noexcept = default;  // zero
  constexpr Extended(std::uint64_t v) noexcept : value_(v) {}  // NOLINT(implicit)

  static constexpr Extended infinity() noexcept {
    Extended e;
    e.value_.reset();
    return e;
  }

  constexpr bool is_finite() const noexcept { return value_.has_value(); }
  constexpr bool is_infinite() const noexcept { return !value_.has_value(); }

  std::uint64_t value() const {
    if (!value_) throw std::domain_error("Extended::value of Infinity");
    return *value_;
  }

  friend constexpr bool operator==(const Extended& a, const Extended& b) noexcept = default;
  friend constexpr std::strong_ordering operator<=>(const Extended& a, const Extended& b) noexcept {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() <=> b.is_infinite();
    return *a.value_ <=> *b.value_;
  }

  friend constexpr Extended operator+(const Extended& a, const Extended& b) noexcept {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return Extended(*a.value_ + *b.value_);
  }

  std::string to_string() const { return value_ ? std::to_string(*value_) : std::string("inf"); }
  friend std::ostream& operator<<(std::ostream& os, const Extended& e) { return os << e.to_string(); }

 private:
  std::optional<std::uint64_t> value_ = 0;
};

inline constexpr Extended kInfinity = Extended::infinity();

}  // namespace maghom
