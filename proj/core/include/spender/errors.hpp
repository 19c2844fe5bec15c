#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spender {

// Closed enumeration of every rejection the system can produce. The string
// form (to_string) is the stable machine-readable code used on the wire and
// in the event log; never renumber or rename an existing entry.
enum class ErrorCode {
  // ledger
  InvalidAddress,
  DuplicateAddress,
  UnknownAddress,
  InsufficientFunds,
  AmountOverflow,
  AmountUnderflow,
  ZeroAdvance,
  // escrow contract
  FundsNotExpected,
  InvalidPrice,
  UnknownItem,
  UnknownOrder,
  NotSeller,
  NotBuyer,
  NotParty,
  NotChosenShipper,
  ItemLocked,
  ItemUnavailable,
  SelfDeal,
  ConflictOfInterest,
  WrongDeposit,
  WrongState,
  DuplicateBid,
  InvalidBid,
  NoSuchBid,
  AlreadyUploaded,
  EnvelopeMismatch,
  NothingToConfirm,
  AlreadyReviewed,
  InvalidRating,
  // address crypto
  UnsupportedScheme,
  MalformedKey,
  DecryptionFailure,
  SchemeMismatch,
  // node / wire
  CorruptLog,
  FaucetDisabled,
  MalformedMessage,
  // scenario harness
  ParseError,
  StepRejected,
  ExpectationFailed,
};

std::string_view to_string(ErrorCode code) noexcept;
std::optional<ErrorCode> parse_error_code(std::string_view name) noexcept;

class Error : public std::runtime_error {
 public:
  explicit Error(ErrorCode code);
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace spender
