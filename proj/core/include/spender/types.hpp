#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "spender/errors.hpp"

namespace spender {

using ItemId = std::uint64_t;
using OrderId = std::uint64_t;
using Tick = std::uint64_t;

// Account identifier. Printable ASCII, no whitespace and no '/', at most 128
// characters, so it can travel unescaped in a URL path segment.
class Address {
 public:
  explicit Address(std::string value);

  const std::string& str() const noexcept { return value_; }

  friend auto operator<=>(const Address&, const Address&) = default;

 private:
  std::string value_;
};

bool is_valid_address(std::string_view value) noexcept;

// Non-negative integer token amount in the smallest unit. All arithmetic is
// checked: overflow and negative results throw instead of wrapping.
class TokenAmount {
 public:
  constexpr TokenAmount() noexcept = default;
  constexpr explicit TokenAmount(std::uint64_t value) noexcept : value_(value) {}

  constexpr std::uint64_t value() const noexcept { return value_; }
  constexpr bool is_zero() const noexcept { return value_ == 0; }

  // Strict decimal form: digits only, no sign, no whitespace.
  static TokenAmount parse(std::string_view text);
  std::string to_string() const { return std::to_string(value_); }

  TokenAmount& operator+=(TokenAmount rhs);
  TokenAmount& operator-=(TokenAmount rhs);

  friend TokenAmount operator+(TokenAmount lhs, TokenAmount rhs) { return lhs += rhs; }
  friend TokenAmount operator-(TokenAmount lhs, TokenAmount rhs) { return lhs -= rhs; }
  friend TokenAmount operator*(std::uint64_t factor, TokenAmount amount);

  friend constexpr auto operator<=>(TokenAmount, TokenAmount) noexcept = default;

 private:
  std::uint64_t value_ = 0;
};

}  // namespace spender

template <>
struct std::hash<spender::Address> {
  std::size_t operator()(const spender::Address& a) const noexcept {
    return std::hash<std::string>{}(a.str());
  }
};
