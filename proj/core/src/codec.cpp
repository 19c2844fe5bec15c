#include "spender/codec.hpp"

#include <limits>
#include <type_traits>

namespace spender::codec {
namespace {

json optional_u64(const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); }

json optional_envelope(const std::optional<crypto::SealedEnvelope>& env) {
  return env ? encode(*env) : json(nullptr);
}

crypto::Bytes decode_bytes(const json& obj, const char* name) {
  return crypto::from_base64(decode_string(obj, name));
}

int decode_int(const json& obj, const char* name) {
  const json& v = field(obj, name);
  if (!v.is_number_integer()) throw Error(ErrorCode::MalformedMessage, std::string(name) + " must be an integer");
  auto n = v.get<std::int64_t>();
  if (n < std::numeric_limits<int>::min() || n > std::numeric_limits<int>::max()) {
    throw Error(ErrorCode::MalformedMessage, std::string(name) + " out of range");
  }
  return static_cast<int>(n);
}

}  // namespace

const json& field(const json& obj, const char* name) {
  if (!obj.is_object()) throw Error(ErrorCode::MalformedMessage, "expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) throw Error(ErrorCode::MalformedMessage, std::string("missing field '") + name + "'");
  return *it;
}

std::string decode_string(const json& obj, const char* name) {
  const json& v = field(obj, name);
  if (!v.is_string()) throw Error(ErrorCode::MalformedMessage, std::string(name) + " must be a string");
  return v.get<std::string>();
}

std::uint64_t decode_u64(const json& obj, const char* name) {
  const json& v = field(obj, name);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  throw Error(ErrorCode::MalformedMessage, std::string(name) + " must be a non-negative integer");
}

json amount(TokenAmount a) { return a.to_string(); }

TokenAmount decode_amount(const json& obj, const char* name) {
  const json& v = field(obj, name);
  if (v.is_string()) return TokenAmount::parse(v.get_ref<const std::string&>());
  if (v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    return TokenAmount{v.get<std::uint64_t>()};
  }
  throw Error(ErrorCode::MalformedMessage, std::string(name) + " must be a decimal amount string");
}

json encode(const ExecuteMsg& msg) {
  json body = std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PostItem>) {
          return {{"title", m.title}, {"description", m.description}, {"price", amount(m.price)},
                  {"obscured_address", m.obscured_address}};
        } else if constexpr (std::is_same_v<T, ResetPrice>) {
          return {{"item_id", m.item_id}, {"new_price", amount(m.new_price)}};
        } else if constexpr (std::is_same_v<T, Buy>) {
          return {{"item_id", m.item_id}, {"buyer_obscured_address", m.buyer_obscured_address}};
        } else if constexpr (std::is_same_v<T, BidOrder>) {
          return {{"order_id", m.order_id},
                  {"v_ship", amount(m.v_ship)},
                  {"v_time", amount(m.v_time)},
                  {"promised_delivery", m.promised_delivery},
                  {"public_key", crypto::to_base64(m.public_key)},
                  {"scheme_id", m.scheme_id}};
        } else if constexpr (std::is_same_v<T, ChooseBid>) {
          return {{"order_id", m.order_id}, {"bid_index", m.bid_index}};
        } else if constexpr (std::is_same_v<T, UploadAddress>) {
          return {{"order_id", m.order_id}, {"envelope", encode(m.envelope)}};
        } else if constexpr (std::is_same_v<T, SubmitReview>) {
          return {{"order_id", m.order_id}, {"rating", m.rating}, {"text", m.text}};
        } else {
          return {{"order_id", m.order_id}};
        }
      },
      msg);
  return {{std::string(message_tag(msg)), std::move(body)}};
}

ExecuteMsg decode_execute(const json& j) {
  if (!j.is_object() || j.size() != 1) {
    throw Error(ErrorCode::MalformedMessage, "message must be an object with exactly one tag");
  }
  const std::string& tag = j.begin().key();
  const json& b = j.begin().value();
  if (!b.is_object()) throw Error(ErrorCode::MalformedMessage, "message body must be an object");

  if (tag == "post_item") {
    return PostItem{decode_string(b, "title"), decode_string(b, "description"), decode_amount(b, "price"),
                    decode_string(b, "obscured_address")};
  }
  if (tag == "reset_price") return ResetPrice{decode_u64(b, "item_id"), decode_amount(b, "new_price")};
  if (tag == "buy") return Buy{decode_u64(b, "item_id"), decode_string(b, "buyer_obscured_address")};
  if (tag == "bid_order") {
    return BidOrder{decode_u64(b, "order_id"),      decode_amount(b, "v_ship"),     decode_amount(b, "v_time"),
                    decode_u64(b, "promised_delivery"), decode_bytes(b, "public_key"), decode_string(b, "scheme_id")};
  }
  if (tag == "choose_bid") return ChooseBid{decode_u64(b, "order_id"), decode_u64(b, "bid_index")};
  if (tag == "upload_address") {
    return UploadAddress{decode_u64(b, "order_id"), decode_envelope(field(b, "envelope"))};
  }
  if (tag == "discard_order") return DiscardOrder{decode_u64(b, "order_id")};
  if (tag == "confirm") return Confirm{decode_u64(b, "order_id")};
  if (tag == "item_loss_broken") return ItemLossBroken{decode_u64(b, "order_id")};
  if (tag == "item_unsatisfied") return ItemUnsatisfied{decode_u64(b, "order_id")};
  if (tag == "return_confirm") return ReturnConfirm{decode_u64(b, "order_id")};
  if (tag == "submit_review") {
    return SubmitReview{decode_u64(b, "order_id"), decode_int(b, "rating"), decode_string(b, "text")};
  }
  throw Error(ErrorCode::MalformedMessage, "unknown message tag '" + tag + "'");
}

json encode(const crypto::SealedEnvelope& env) {
  return {{"scheme", env.scheme},
          {"recipient_key_fingerprint", crypto::to_base64(env.recipient_key_fingerprint)},
          {"ciphertext", crypto::to_base64(env.ciphertext)}};
}

crypto::SealedEnvelope decode_envelope(const json& j) {
  return crypto::SealedEnvelope{decode_string(j, "scheme"), decode_bytes(j, "recipient_key_fingerprint"),
                                decode_bytes(j, "ciphertext")};
}

json encode(const Transfer& t) { return {{"from", t.from.str()}, {"to", t.to.str()}, {"amount", amount(t.amount)}}; }

json encode(const Event& e) { return {{"name", e.name}, {"attributes", e.attributes}}; }

json encode(const ExecuteReceipt& r) {
  json events = json::array();
  for (const auto& e : r.events) events.push_back(encode(e));
  json transfers = json::array();
  for (const auto& t : r.transfers) transfers.push_back(encode(t));
  return {{"events", std::move(events)}, {"transfers", std::move(transfers)}};
}

json encode(const Rejection& r) { return {{"code", std::string(to_string(r.code))}, {"detail", r.detail}}; }

json encode(const Outcome& o, const ExecuteMsg& msg) {
  json out{{"accepted", o.accepted()}, {"receipt", encode(o.receipt)}};
  if (o.rejection) out["error"] = encode(*o.rejection);
  if (o.value) {
    const char* key = std::holds_alternative<PostItem>(msg) ? "item_id"
                      : std::holds_alternative<Buy>(msg)    ? "order_id"
                                                            : "bid_index";
    out["result"] = {{key, *o.value}};
  }
  return out;
}

json encode(const ItemListing& item) {
  return {{"item_id", item.item_id},
          {"seller", item.seller.str()},
          {"title", item.title},
          {"description", item.description},
          {"price", amount(item.price)},
          {"seller_obscured_address", item.seller_obscured_address},
          {"status", std::string(to_string(item.status))}};
}

json encode(const Bid& bid) {
  return {{"shipper", bid.shipper.str()},
          {"v_ship", amount(bid.v_ship)},
          {"v_time", amount(bid.v_time)},
          {"promised_delivery", bid.promised_delivery},
          {"shipper_public_key", crypto::to_base64(bid.shipper_public_key)},
          {"scheme_id", bid.scheme_id},
          {"deposit_held", bid.deposit_held}};
}

json encode(const Order& o) {
  json bids = json::array();
  for (const auto& b : o.bids) bids.push_back(encode(b));
  json review = nullptr;
  if (o.review) review = {{"rating", o.review->rating}, {"text", o.review->text}, {"author", o.review->author.str()}};
  return {{"order_id", o.order_id},
          {"item_id", o.item_id},
          {"buyer", o.buyer.str()},
          {"seller", o.seller.str()},
          {"v_item", amount(o.v_item)},
          {"buyer_obscured_address", o.buyer_obscured_address},
          {"state", std::string(to_string(o.state))},
          {"bids", std::move(bids)},
          {"chosen", o.chosen ? json(*o.chosen) : json(nullptr)},
          {"encrypted_buyer_address", optional_envelope(o.encrypted_buyer_address)},
          {"encrypted_seller_address", optional_envelope(o.encrypted_seller_address)},
          {"seller_confirmed_shipped", o.seller_confirmed_shipped},
          {"shipper_confirmed_shipped", o.shipper_confirmed_shipped},
          {"shipper_confirmed_delivered", o.shipper_confirmed_delivered},
          {"buyer_confirmed_received", o.buyer_confirmed_received},
          {"created_tick", o.created_tick},
          {"shipped_tick", optional_u64(o.shipped_tick)},
          {"delivered_tick", optional_u64(o.delivered_tick)},
          {"escrow", amount(o.escrow)},
          {"review", std::move(review)}};
}

json encode(const OrderSummary& s) {
  return {{"order_id", s.order_id},
          {"item_id", s.item_id},
          {"buyer", s.buyer.str()},
          {"seller", s.seller.str()},
          {"v_item", amount(s.v_item)},
          {"state", std::string(to_string(s.state))},
          {"bid_count", s.bid_count},
          {"chosen", s.chosen ? json(*s.chosen) : json(nullptr)},
          {"escrow", amount(s.escrow)}};
}

json encode(const AddressesView& v) {
  return {{"buyer_obscured_address", v.buyer_obscured_address},
          {"seller_obscured_address", v.seller_obscured_address},
          {"encrypted_buyer_address", optional_envelope(v.encrypted_buyer_address)},
          {"encrypted_seller_address", optional_envelope(v.encrypted_seller_address)}};
}

json encode(const ParticipantStats& s, const Address& addr) {
  auto ratio = [](Ratio r) { return json{{"numerator", r.numerator}, {"denominator", r.denominator}}; };
  return {{"addr", addr.str()},
          {"as_shipper",
           {{"completed", s.shipper_completed},
            {"total_chosen", s.shipper_total_chosen},
            {"perfect_ratio", ratio(s.perfect_ratio())}}},
          {"as_seller",
           {{"satisfied", s.seller_satisfied},
            {"total_sold", s.seller_total_sold},
            {"satisfied_ratio", ratio(s.satisfied_ratio())}}}};
}

json encode_state(const Contract& c) {
  const Ledger& l = c.ledger();
  json accounts = json::object();
  for (const auto& [addr, bal] : l.accounts()) accounts[addr.str()] = amount(bal);
  json items = json::array();
  for (const auto& [_, item] : c.items()) items.push_back(encode(item));
  json orders = json::array();
  for (const auto& [_, o] : c.all_orders()) orders.push_back(encode(o));
  json stats = json::object();
  for (const auto& [addr, s] : c.all_stats()) stats[addr.str()] = encode(s, addr);
  return {{"ledger",
           {{"accounts", std::move(accounts)},
            {"clock", l.clock()},
            {"fee_sink", l.fee_sink().str()},
            {"gas_fee", amount(l.gas_fee())},
            {"total_supply", amount(l.total_supply())}}},
          {"contract_account", c.contract_account().str()},
          {"next_item_id", c.next_item_id()},
          {"next_order_id", c.next_order_id()},
          {"items", std::move(items)},
          {"orders", std::move(orders)},
          {"stats", std::move(stats)}};
}

std::string state_hash(const Contract& c) { return crypto::sha256_hex(encode_state(c).dump()); }

}  // namespace spender::codec
