#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "spender/crypto.hpp"
#include "spender/types.hpp"

namespace spender {

// Execute messages, one per contract operation. Each is sent together with a
// sender address and an attached token amount.

struct PostItem {
  std::string title;
  std::string description;
  TokenAmount price;
  std::string obscured_address;

  friend bool operator==(const PostItem&, const PostItem&) = default;
};

struct ResetPrice {
  ItemId item_id = 0;
  TokenAmount new_price;

  friend bool operator==(const ResetPrice&, const ResetPrice&) = default;
};

struct Buy {
  ItemId item_id = 0;
  std::string buyer_obscured_address;

  friend bool operator==(const Buy&, const Buy&) = default;
};

struct BidOrder {
  OrderId order_id = 0;
  TokenAmount v_ship;
  TokenAmount v_time;
  Tick promised_delivery = 0;
  crypto::Bytes public_key;
  std::string scheme_id;

  friend bool operator==(const BidOrder&, const BidOrder&) = default;
};

struct ChooseBid {
  OrderId order_id = 0;
  std::uint64_t bid_index = 0;

  friend bool operator==(const ChooseBid&, const ChooseBid&) = default;
};

struct UploadAddress {
  OrderId order_id = 0;
  crypto::SealedEnvelope envelope;

  friend bool operator==(const UploadAddress&, const UploadAddress&) = default;
};

struct DiscardOrder {
  OrderId order_id = 0;

  friend bool operator==(const DiscardOrder&, const DiscardOrder&) = default;
};

// Meaning depends on the sender's role and the order state.
struct Confirm {
  OrderId order_id = 0;

  friend bool operator==(const Confirm&, const Confirm&) = default;
};

struct ItemLossBroken {
  OrderId order_id = 0;

  friend bool operator==(const ItemLossBroken&, const ItemLossBroken&) = default;
};

struct ItemUnsatisfied {
  OrderId order_id = 0;

  friend bool operator==(const ItemUnsatisfied&, const ItemUnsatisfied&) = default;
};

struct ReturnConfirm {
  OrderId order_id = 0;

  friend bool operator==(const ReturnConfirm&, const ReturnConfirm&) = default;
};

struct SubmitReview {
  OrderId order_id = 0;
  int rating = 0;
  std::string text;

  friend bool operator==(const SubmitReview&, const SubmitReview&) = default;
};

using ExecuteMsg = std::variant<PostItem, ResetPrice, Buy, BidOrder, ChooseBid, UploadAddress,
                                DiscardOrder, Confirm, ItemLossBroken, ItemUnsatisfied,
                                ReturnConfirm, SubmitReview>;

// Wire tag of the message ("post_item", "bid_order", ...).
std::string_view message_tag(const ExecuteMsg& msg) noexcept;

// Query messages. Free, read-only, never logged.

struct GetGoods {
  friend bool operator==(const GetGoods&, const GetGoods&) = default;
};
struct GetOrders {
  friend bool operator==(const GetOrders&, const GetOrders&) = default;
};
struct GetOrderDetail {
  OrderId order_id = 0;

  friend bool operator==(const GetOrderDetail&, const GetOrderDetail&) = default;
};
struct GetAddresses {
  OrderId order_id = 0;

  friend bool operator==(const GetAddresses&, const GetAddresses&) = default;
};
struct GetBalance {
  Address addr;

  friend bool operator==(const GetBalance&, const GetBalance&) = default;
};
struct GetStats {
  Address addr;

  friend bool operator==(const GetStats&, const GetStats&) = default;
};

using QueryMsg = std::variant<GetGoods, GetOrders, GetOrderDetail, GetAddresses, GetBalance, GetStats>;

}  // namespace spender
