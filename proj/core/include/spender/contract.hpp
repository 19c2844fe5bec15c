#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spender/crypto.hpp"
#include "spender/ledger.hpp"
#include "spender/messages.hpp"

namespace spender {

enum class ItemStatus { Available, Locked, Delisted };

enum class OrderState {
  Created,
  BidChosen,
  AddressesReady,
  InTransit,
  Delivered,
  Completed,
  Discarded,
  LossBroken,
  Returning,
  Returned,
};

std::string_view to_string(ItemStatus s) noexcept;
std::string_view to_string(OrderState s) noexcept;
std::optional<ItemStatus> parse_item_status(std::string_view s) noexcept;
std::optional<OrderState> parse_order_state(std::string_view s) noexcept;
bool is_terminal(OrderState s) noexcept;

struct ItemListing {
  ItemId item_id = 0;
  Address seller;
  std::string title;
  std::string description;
  TokenAmount price;
  std::string seller_obscured_address;
  ItemStatus status = ItemStatus::Available;

  friend bool operator==(const ItemListing&, const ItemListing&) = default;
};

struct Bid {
  Address shipper;
  TokenAmount v_ship;
  TokenAmount v_time;
  Tick promised_delivery = 0;
  crypto::Bytes shipper_public_key;
  std::string scheme_id;
  bool deposit_held = false;

  friend bool operator==(const Bid&, const Bid&) = default;
};

struct Review {
  int rating = 0;
  std::string text;
  Address author;

  friend bool operator==(const Review&, const Review&) = default;
};

struct Order {
  OrderId order_id = 0;
  ItemId item_id = 0;
  Address buyer;
  Address seller;
  // Price locked in at Buy; ResetPrice cannot touch a Locked item.
  TokenAmount v_item;
  std::string buyer_obscured_address;
  OrderState state = OrderState::Created;
  std::vector<Bid> bids;
  std::optional<std::size_t> chosen;
  std::optional<crypto::SealedEnvelope> encrypted_buyer_address;
  std::optional<crypto::SealedEnvelope> encrypted_seller_address;
  bool seller_confirmed_shipped = false;
  bool shipper_confirmed_shipped = false;
  bool shipper_confirmed_delivered = false;
  bool buyer_confirmed_received = false;
  Tick created_tick = 0;
  std::optional<Tick> shipped_tick;
  std::optional<Tick> delivered_tick;
  TokenAmount escrow;
  std::optional<Review> review;

  const Bid* chosen_bid() const { return chosen ? &bids.at(*chosen) : nullptr; }
  // Set once delivered: delivered_tick - shipped_tick <= promised_delivery.
  std::optional<bool> on_time() const;

  friend bool operator==(const Order&, const Order&) = default;
};

struct OrderSummary {
  OrderId order_id = 0;
  ItemId item_id = 0;
  Address buyer;
  Address seller;
  TokenAmount v_item;
  OrderState state = OrderState::Created;
  std::size_t bid_count = 0;
  std::optional<std::size_t> chosen;
  TokenAmount escrow;
};

struct AddressesView {
  std::string buyer_obscured_address;
  std::string seller_obscured_address;
  std::optional<crypto::SealedEnvelope> encrypted_buyer_address;
  std::optional<crypto::SealedEnvelope> encrypted_seller_address;
};

// Exact rational; denominator zero means "no data yet".
struct Ratio {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;

  friend bool operator==(const Ratio&, const Ratio&) = default;
};

struct ParticipantStats {
  // As chosen shipper: on-time Completed orders over all orders where chosen.
  std::uint64_t shipper_completed = 0;
  std::uint64_t shipper_total_chosen = 0;
  // As seller: Completed orders over all terminal orders.
  std::uint64_t seller_satisfied = 0;
  std::uint64_t seller_total_sold = 0;

  Ratio perfect_ratio() const { return {shipper_completed, shipper_total_chosen}; }
  Ratio satisfied_ratio() const { return {seller_satisfied, seller_total_sold}; }

  friend bool operator==(const ParticipantStats&, const ParticipantStats&) = default;
};

struct Event {
  std::string name;
  std::map<std::string, std::string> attributes;

  friend bool operator==(const Event&, const Event&) = default;
};

struct ExecuteReceipt {
  std::vector<Event> events;
  // Exactly the ledger mutations performed, gas included.
  std::vector<Transfer> transfers;

  friend bool operator==(const ExecuteReceipt&, const ExecuteReceipt&) = default;
};

struct Rejection {
  ErrorCode code;
  std::string detail;

  friend bool operator==(const Rejection&, const Rejection&) = default;
};

struct Outcome {
  ExecuteReceipt receipt;
  std::optional<Rejection> rejection;
  // New item id, order id or bid index, for the messages that create one.
  std::optional<std::uint64_t> value;

  bool accepted() const noexcept { return !rejection.has_value(); }

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

// The escrow state machine. Owns the ledger it settles against; the contract
// account holds every order's escrow. Value type: copy it to snapshot.
//
// execute() charges gas first, then validates, then applies. A rejected
// message leaves the state untouched apart from the gas transfer; a message
// whose sender cannot pay gas is rejected with no effect at all.
class Contract {
 public:
  static constexpr std::string_view kDefaultContractAccount = "spender-contract";

  explicit Contract(Ledger ledger, Address contract_account = Address(std::string(kDefaultContractAccount)));

  Outcome execute(const Address& sender, const ExecuteMsg& msg, TokenAmount attached);

  std::vector<ItemListing> goods() const;
  std::vector<OrderSummary> orders() const;
  const Order& order(OrderId id) const;  // throws UnknownOrder
  const ItemListing& item(ItemId id) const;  // throws UnknownItem
  AddressesView addresses(OrderId id) const;
  TokenAmount balance(const Address& addr) const { return ledger_.balance(addr); }
  ParticipantStats stats(const Address& addr) const;

  const Ledger& ledger() const noexcept { return ledger_; }
  // Administrative access (genesis, faucet, clock).
  Ledger& ledger() noexcept { return ledger_; }
  const Address& contract_account() const noexcept { return contract_account_; }

  const std::map<ItemId, ItemListing>& items() const noexcept { return items_; }
  const std::map<OrderId, Order>& all_orders() const noexcept { return orders_; }
  const std::map<Address, ParticipantStats>& all_stats() const noexcept { return stats_; }
  ItemId next_item_id() const noexcept { return next_item_id_; }
  OrderId next_order_id() const noexcept { return next_order_id_; }

  TokenAmount total_escrow() const;

  friend bool operator==(const Contract&, const Contract&) = default;

 private:
  class Executor;
  friend class Executor;

  Ledger ledger_;
  Address contract_account_;
  std::map<ItemId, ItemListing> items_;
  std::map<OrderId, Order> orders_;
  std::map<Address, ParticipantStats> stats_;
  ItemId next_item_id_ = 1;
  OrderId next_order_id_ = 1;
};

}  // namespace spender
