#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "spender/contract.hpp"
#include "spender/crypto.hpp"

namespace spender::testing {

inline Address addr(const char* name) { return Address(name); }

// Fresh contract with funded accounts and the given gas fee.
Contract make_contract(std::uint64_t gas, std::initializer_list<std::pair<const char*, std::uint64_t>> accounts);

// Deterministic keypair per name.
const crypto::KeyPair& key_for(const std::string& name);

crypto::SealedEnvelope seal_for(const crypto::KeyPair& recipient, std::initializer_list<std::string> lines);

inline Outcome exec(Contract& c, const char* sender, const ExecuteMsg& msg, std::uint64_t funds = 0) {
  return c.execute(Address(sender), msg, TokenAmount(funds));
}

BidOrder bid_msg(OrderId order, std::uint64_t v_ship, std::uint64_t v_time, Tick promised, const std::string& shipper);

// Drives one order from posting to AddressesReady: seller posts at v_item,
// buyer buys, each listed shipper bids, the buyer chooses `chosen` and both
// parties upload. Returns the order id. Every step must be accepted.
struct Lifecycle {
  std::uint64_t v_item = 100;
  std::uint64_t v_time = 5;
  Tick promised = 10;
  std::vector<std::pair<std::string, std::uint64_t>> bids{{"shipper", 8}};
  std::size_t chosen = 0;
};
OrderId drive_to_addresses_ready(Contract& c, const Lifecycle& l, const char* seller = "seller",
                                 const char* buyer = "buyer");

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace spender::testing
