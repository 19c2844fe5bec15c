#include "spender/errors.hpp"

#include <array>
#include <utility>

namespace spender {
namespace {

constexpr std::array<std::pair<ErrorCode, std::string_view>, 39> kNames{{
    {ErrorCode::InvalidAddress, "InvalidAddress"},
    {ErrorCode::DuplicateAddress, "DuplicateAddress"},
    {ErrorCode::UnknownAddress, "UnknownAddress"},
    {ErrorCode::InsufficientFunds, "InsufficientFunds"},
    {ErrorCode::AmountOverflow, "AmountOverflow"},
    {ErrorCode::AmountUnderflow, "AmountUnderflow"},
    {ErrorCode::ZeroAdvance, "ZeroAdvance"},
    {ErrorCode::FundsNotExpected, "FundsNotExpected"},
    {ErrorCode::InvalidPrice, "InvalidPrice"},
    {ErrorCode::UnknownItem, "UnknownItem"},
    {ErrorCode::UnknownOrder, "UnknownOrder"},
    {ErrorCode::NotSeller, "NotSeller"},
    {ErrorCode::NotBuyer, "NotBuyer"},
    {ErrorCode::NotParty, "NotParty"},
    {ErrorCode::NotChosenShipper, "NotChosenShipper"},
    {ErrorCode::ItemLocked, "ItemLocked"},
    {ErrorCode::ItemUnavailable, "ItemUnavailable"},
    {ErrorCode::SelfDeal, "SelfDeal"},
    {ErrorCode::ConflictOfInterest, "ConflictOfInterest"},
    {ErrorCode::WrongDeposit, "WrongDeposit"},
    {ErrorCode::WrongState, "WrongState"},
    {ErrorCode::DuplicateBid, "DuplicateBid"},
    {ErrorCode::InvalidBid, "InvalidBid"},
    {ErrorCode::NoSuchBid, "NoSuchBid"},
    {ErrorCode::AlreadyUploaded, "AlreadyUploaded"},
    {ErrorCode::EnvelopeMismatch, "EnvelopeMismatch"},
    {ErrorCode::NothingToConfirm, "NothingToConfirm"},
    {ErrorCode::AlreadyReviewed, "AlreadyReviewed"},
    {ErrorCode::InvalidRating, "InvalidRating"},
    {ErrorCode::UnsupportedScheme, "UnsupportedScheme"},
    {ErrorCode::MalformedKey, "MalformedKey"},
    {ErrorCode::DecryptionFailure, "DecryptionFailure"},
    {ErrorCode::SchemeMismatch, "SchemeMismatch"},
    {ErrorCode::CorruptLog, "CorruptLog"},
    {ErrorCode::FaucetDisabled, "FaucetDisabled"},
    {ErrorCode::MalformedMessage, "MalformedMessage"},
    {ErrorCode::ParseError, "ParseError"},
    {ErrorCode::StepRejected, "StepRejected"},
    {ErrorCode::ExpectationFailed, "ExpectationFailed"},
}};

std::string compose(ErrorCode code, const std::string& detail) {
  std::string msg{to_string(code)};
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "Unknown";
}

std::optional<ErrorCode> parse_error_code(std::string_view name) noexcept {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

Error::Error(ErrorCode code) : Error(code, std::string{}) {}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(compose(code, detail)), code_(code), detail_(detail) {}

}  // namespace spender
