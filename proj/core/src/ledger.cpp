#include "spender/ledger.hpp"

#include <limits>
#include <utility>

namespace spender {

Ledger::Ledger(Address fee_sink, TokenAmount gas_fee)
    : fee_sink_(std::move(fee_sink)), gas_fee_(gas_fee) {
  accounts_.emplace(fee_sink_, TokenAmount{});
}

void Ledger::create_account(const Address& addr, TokenAmount initial) {
  if (accounts_.contains(addr)) throw Error(ErrorCode::DuplicateAddress, addr.str());
  TokenAmount supply = total_supply_ + initial;
  accounts_.emplace(addr, initial);
  total_supply_ = supply;
}

void Ledger::credit(const Address& addr, TokenAmount amount) {
  auto it = accounts_.find(addr);
  if (it == accounts_.end()) {
    create_account(addr, amount);
    return;
  }
  TokenAmount supply = total_supply_ + amount;
  TokenAmount bal = it->second + amount;
  it->second = bal;
  total_supply_ = supply;
}

void Ledger::transfer(const Address& from, const Address& to, TokenAmount amount) {
  auto src = accounts_.find(from);
  if (src == accounts_.end()) throw Error(ErrorCode::UnknownAddress, from.str());
  auto dst = accounts_.find(to);
  if (dst == accounts_.end()) throw Error(ErrorCode::UnknownAddress, to.str());
  if (src->second < amount) {
    throw Error(ErrorCode::InsufficientFunds,
                from.str() + " has " + src->second.to_string() + ", needs " + amount.to_string());
  }
  if (src == dst) return;
  // Cannot overflow: both balances are bounded by total_supply_.
  src->second -= amount;
  dst->second += amount;
}

Transfer Ledger::charge_gas(const Address& actor) {
  transfer(actor, fee_sink_, gas_fee_);
  return Transfer{actor, fee_sink_, gas_fee_};
}

void Ledger::advance_clock(Tick dt) {
  if (dt == 0) throw Error(ErrorCode::ZeroAdvance);
  if (clock_ > std::numeric_limits<Tick>::max() - dt) {
    throw Error(ErrorCode::AmountOverflow, "clock");
  }
  clock_ += dt;
}

TokenAmount Ledger::balance(const Address& addr) const {
  auto it = accounts_.find(addr);
  if (it == accounts_.end()) throw Error(ErrorCode::UnknownAddress, addr.str());
  return it->second;
}

}  // namespace spender
