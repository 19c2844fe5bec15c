#pragma once

#include <map>
#include <vector>

#include "spender/types.hpp"

namespace spender {

struct Transfer {
  Address from;
  Address to;
  TokenAmount amount;

  friend bool operator==(const Transfer&, const Transfer&) = default;
};

// Token accounting substrate. Minting happens only through create_account
// and credit; every other mutation moves tokens between existing accounts,
// so the sum of all balances equals total_supply() at all times.
//
// Not internally synchronized: callers serialize mutations.
class Ledger {
 public:
  // The fee sink account is created with a zero balance.
  Ledger(Address fee_sink, TokenAmount gas_fee);

  void create_account(const Address& addr, TokenAmount initial);
  // Create-or-credit; the only mint path after genesis.
  void credit(const Address& addr, TokenAmount amount);

  // Atomic: on error no balance changes.
  void transfer(const Address& from, const Address& to, TokenAmount amount);
  // Moves gas_fee from actor to the fee sink and returns the transfer
  // performed (amount zero when gas is free).
  Transfer charge_gas(const Address& actor);
  void advance_clock(Tick dt);

  TokenAmount balance(const Address& addr) const;
  bool contains(const Address& addr) const { return accounts_.contains(addr); }

  Tick clock() const noexcept { return clock_; }
  const Address& fee_sink() const noexcept { return fee_sink_; }
  TokenAmount gas_fee() const noexcept { return gas_fee_; }
  TokenAmount total_supply() const noexcept { return total_supply_; }
  const std::map<Address, TokenAmount>& accounts() const noexcept { return accounts_; }

  friend bool operator==(const Ledger&, const Ledger&) = default;

 private:
  std::map<Address, TokenAmount> accounts_;
  Tick clock_ = 0;
  Address fee_sink_;
  TokenAmount gas_fee_;
  TokenAmount total_supply_;
};

}  // namespace spender
