#include "spender/types.hpp"

#include <charconv>
#include <limits>
#include <utility>

namespace spender {

bool is_valid_address(std::string_view value) noexcept {
  if (value.empty() || value.size() > 128) return false;
  for (char c : value) {
    if (c <= ' ' || c > '~' || c == '/') return false;
  }
  return true;
}

Address::Address(std::string value) : value_(std::move(value)) {
  if (!is_valid_address(value_)) {
    throw Error(ErrorCode::InvalidAddress, "'" + value_ + "'");
  }
}

TokenAmount TokenAmount::parse(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::MalformedMessage, "empty amount");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw Error(ErrorCode::MalformedMessage, "amount is not a decimal integer: " + std::string(text));
    }
  }
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc::result_out_of_range) {
    throw Error(ErrorCode::AmountOverflow, std::string(text));
  }
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::MalformedMessage, std::string(text));
  }
  return TokenAmount{v};
}

TokenAmount& TokenAmount::operator+=(TokenAmount rhs) {
  if (value_ > std::numeric_limits<std::uint64_t>::max() - rhs.value_) {
    throw Error(ErrorCode::AmountOverflow, to_string() + " + " + rhs.to_string());
  }
  value_ += rhs.value_;
  return *this;
}

TokenAmount& TokenAmount::operator-=(TokenAmount rhs) {
  if (rhs.value_ > value_) {
    throw Error(ErrorCode::AmountUnderflow, to_string() + " - " + rhs.to_string());
  }
  value_ -= rhs.value_;
  return *this;
}

TokenAmount operator*(std::uint64_t factor, TokenAmount amount) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(factor, amount.value_, &out)) {
    throw Error(ErrorCode::AmountOverflow, std::to_string(factor) + " * " + amount.to_string());
  }
  return TokenAmount{out};
}

}  // namespace spender
