#include "spender/contract.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace spender {
namespace {

constexpr std::array<std::pair<ItemStatus, std::string_view>, 3> kItemStatusNames{{
    {ItemStatus::Available, "Available"},
    {ItemStatus::Locked, "Locked"},
    {ItemStatus::Delisted, "Delisted"},
}};

constexpr std::array<std::pair<OrderState, std::string_view>, 10> kOrderStateNames{{
    {OrderState::Created, "Created"},
    {OrderState::BidChosen, "BidChosen"},
    {OrderState::AddressesReady, "AddressesReady"},
    {OrderState::InTransit, "InTransit"},
    {OrderState::Delivered, "Delivered"},
    {OrderState::Completed, "Completed"},
    {OrderState::Discarded, "Discarded"},
    {OrderState::LossBroken, "LossBroken"},
    {OrderState::Returning, "Returning"},
    {OrderState::Returned, "Returned"},
}};

void require(bool cond, ErrorCode code, const std::string& detail = {}) {
  if (!cond) throw Error(code, detail);
}

std::string state_detail(const Order& o) { return "order " + std::to_string(o.order_id) + " is " + std::string(to_string(o.state)); }

}  // namespace

std::string_view to_string(ItemStatus s) noexcept {
  for (const auto& [v, name] : kItemStatusNames) {
    if (v == s) return name;
  }
  return "?";
}

std::string_view to_string(OrderState s) noexcept {
  for (const auto& [v, name] : kOrderStateNames) {
    if (v == s) return name;
  }
  return "?";
}

std::optional<ItemStatus> parse_item_status(std::string_view s) noexcept {
  for (const auto& [v, name] : kItemStatusNames) {
    if (name == s) return v;
  }
  return std::nullopt;
}

std::optional<OrderState> parse_order_state(std::string_view s) noexcept {
  for (const auto& [v, name] : kOrderStateNames) {
    if (name == s) return v;
  }
  return std::nullopt;
}

bool is_terminal(OrderState s) noexcept {
  return s == OrderState::Completed || s == OrderState::Discarded || s == OrderState::LossBroken ||
         s == OrderState::Returned;
}

std::optional<bool> Order::on_time() const {
  const Bid* bid = chosen_bid();
  if (bid == nullptr || !shipped_tick || !delivered_tick) return std::nullopt;
  return *delivered_tick - *shipped_tick <= bid->promised_delivery;
}

// Applies one execute message. Every handler validates completely before its
// first mutation, so a thrown spender::Error means nothing but gas moved.
// Failures inside the effect phase are invariant violations and surface as
// std::logic_error.
class Contract::Executor {
 public:
  Executor(Contract& c, const Address& sender, TokenAmount attached, Outcome& out)
      : c_(c), sender_(sender), attached_(attached), out_(out) {}

  void operator()(const PostItem& m) {
    no_funds();
    require(m.price >= TokenAmount{1}, ErrorCode::InvalidPrice, "price must be at least 1");
    require(!m.obscured_address.empty(), ErrorCode::MalformedMessage, "obscured_address is empty");

    ItemId id = c_.next_item_id_++;
    c_.items_.emplace(id, ItemListing{id, sender_, m.title, m.description, m.price, m.obscured_address,
                                      ItemStatus::Available});
    out_.value = id;
    emit("item_posted", {{"item_id", std::to_string(id)}, {"seller", sender_.str()}, {"price", m.price.to_string()}});
  }

  void operator()(const ResetPrice& m) {
    no_funds();
    ItemListing& item = item_mut(m.item_id);
    require(item.seller == sender_, ErrorCode::NotSeller, sender_.str() + " is not the seller of item " + std::to_string(item.item_id));
    require(item.status != ItemStatus::Locked, ErrorCode::ItemLocked, "item has an open order");
    require(item.status == ItemStatus::Available, ErrorCode::ItemUnavailable, "item is delisted");
    require(m.new_price >= TokenAmount{1}, ErrorCode::InvalidPrice, "price must be at least 1");

    item.price = m.new_price;
    emit("price_reset", {{"item_id", std::to_string(item.item_id)}, {"price", m.new_price.to_string()}});
  }

  void operator()(const Buy& m) {
    ItemListing& item = item_mut(m.item_id);
    require(item.status == ItemStatus::Available, ErrorCode::ItemUnavailable,
            "item " + std::to_string(item.item_id) + " is " + std::string(to_string(item.status)));
    require(item.seller != sender_, ErrorCode::SelfDeal, "seller cannot buy their own item");
    require(!m.buyer_obscured_address.empty(), ErrorCode::MalformedMessage, "buyer_obscured_address is empty");
    require_deposit(item.price);

    OrderId id = c_.next_order_id_++;
    Order order{.order_id = id, .item_id = item.item_id, .buyer = sender_, .seller = item.seller, .v_item = item.price};
    order.buyer_obscured_address = m.buyer_obscured_address;
    order.created_tick = c_.ledger_.clock();
    Order& o = c_.orders_.emplace(id, std::move(order)).first->second;
    item.status = ItemStatus::Locked;
    collect(o);
    out_.value = id;
    emit("order_created", {{"order_id", std::to_string(id)}, {"item_id", std::to_string(item.item_id)},
                           {"buyer", sender_.str()}});
  }

  void operator()(const BidOrder& m) {
    Order& o = order_mut(m.order_id);
    require(sender_ != o.buyer && sender_ != o.seller, ErrorCode::ConflictOfInterest,
            "buyer and seller cannot ship their own order");
    require(o.state == OrderState::Created, ErrorCode::WrongState, state_detail(o));
    for (const Bid& b : o.bids) {
      require(b.shipper != sender_, ErrorCode::DuplicateBid, sender_.str() + " already bid on this order");
    }
    require(m.v_ship >= TokenAmount{1}, ErrorCode::InvalidBid, "v_ship must be at least 1");
    require(m.promised_delivery >= 1, ErrorCode::InvalidBid, "promised_delivery must be at least 1");
    crypto::find_scheme(m.scheme_id).validate_public_key(m.public_key);
    TokenAmount deposit = o.v_item + m.v_time;
    // Pre-check the settlement sums so no later arithmetic on this order can overflow.
    (void)(deposit + 2 * m.v_ship + o.v_item);
    require_deposit(deposit);

    o.bids.push_back(Bid{sender_, m.v_ship, m.v_time, m.promised_delivery, m.public_key, m.scheme_id, true});
    collect(o);
    std::uint64_t index = o.bids.size() - 1;
    out_.value = index;
    emit("bid_placed", {{"order_id", std::to_string(o.order_id)}, {"bid_index", std::to_string(index)},
                        {"shipper", sender_.str()}, {"v_ship", m.v_ship.to_string()}});
  }

  void operator()(const ChooseBid& m) {
    Order& o = order_mut(m.order_id);
    require(sender_ == o.buyer, ErrorCode::NotBuyer, sender_.str() + " is not the buyer of order " + std::to_string(o.order_id));
    require(o.state == OrderState::Created, ErrorCode::WrongState, state_detail(o));
    require(m.bid_index < o.bids.size(), ErrorCode::NoSuchBid,
            "order has " + std::to_string(o.bids.size()) + " bids");
    require_deposit(2 * o.bids[m.bid_index].v_ship);

    collect(o);
    o.chosen = static_cast<std::size_t>(m.bid_index);
    for (std::size_t i = 0; i < o.bids.size(); ++i) {
      Bid& b = o.bids[i];
      if (i == m.bid_index || !b.deposit_held) continue;
      pay_out(o, b.shipper, o.v_item + b.v_time);
      b.deposit_held = false;
      emit("bid_refunded", {{"order_id", std::to_string(o.order_id)}, {"bid_index", std::to_string(i)}});
    }
    o.state = OrderState::BidChosen;
    c_.stats_[o.bids[m.bid_index].shipper].shipper_total_chosen += 1;
    emit("bid_chosen", {{"order_id", std::to_string(o.order_id)}, {"bid_index", std::to_string(m.bid_index)},
                        {"shipper", o.bids[m.bid_index].shipper.str()}});
  }

  void operator()(const UploadAddress& m) {
    no_funds();
    Order& o = order_mut(m.order_id);
    bool is_buyer = sender_ == o.buyer;
    require(is_buyer || sender_ == o.seller, ErrorCode::NotParty, "only buyer and seller upload addresses");
    require(o.state == OrderState::BidChosen || o.state == OrderState::AddressesReady, ErrorCode::WrongState,
            state_detail(o));
    auto& slot = is_buyer ? o.encrypted_buyer_address : o.encrypted_seller_address;
    require(!slot.has_value(), ErrorCode::AlreadyUploaded, "address already uploaded by " + sender_.str());
    const Bid& bid = *o.chosen_bid();
    require(m.envelope.scheme == bid.scheme_id, ErrorCode::EnvelopeMismatch,
            "envelope scheme differs from the chosen shipper's declared scheme");
    require(m.envelope.recipient_key_fingerprint == crypto::find_scheme(bid.scheme_id).fingerprint(bid.shipper_public_key),
            ErrorCode::EnvelopeMismatch, "envelope is not sealed for the chosen shipper");
    require(!m.envelope.ciphertext.empty(), ErrorCode::EnvelopeMismatch, "empty ciphertext");

    slot = m.envelope;
    emit("address_uploaded", {{"order_id", std::to_string(o.order_id)}, {"party", is_buyer ? "buyer" : "seller"}});
    if (o.encrypted_buyer_address && o.encrypted_seller_address) {
      o.state = OrderState::AddressesReady;
      emit("addresses_ready", {{"order_id", std::to_string(o.order_id)}});
    }
  }

  void operator()(const DiscardOrder& m) {
    no_funds();
    Order& o = order_mut(m.order_id);
    require(is_chosen_shipper(o), ErrorCode::NotChosenShipper, sender_.str() + " is not the chosen shipper");
    require(o.state == OrderState::AddressesReady && !o.shipper_confirmed_shipped, ErrorCode::WrongState,
            state_detail(o) + (o.shipper_confirmed_shipped ? " and pickup is confirmed" : ""));

    Bid& bid = o.bids[*o.chosen];
    pay_out(o, o.buyer, o.v_item + 2 * bid.v_ship);
    pay_out(o, bid.shipper, o.v_item + bid.v_time);
    bid.deposit_held = false;
    close(o, OrderState::Discarded, ItemStatus::Available);
    emit("order_discarded", {{"order_id", std::to_string(o.order_id)}});
  }

  void operator()(const Confirm& m) {
    no_funds();
    Order& o = order_mut(m.order_id);
    std::string id = std::to_string(o.order_id);
    switch (o.state) {
      case OrderState::AddressesReady: {
        if (sender_ == o.seller && !o.seller_confirmed_shipped) {
          o.seller_confirmed_shipped = true;
          emit("shipped_confirmed", {{"order_id", id}, {"party", "seller"}});
        } else if (is_chosen_shipper(o) && !o.shipper_confirmed_shipped) {
          o.shipper_confirmed_shipped = true;
          emit("shipped_confirmed", {{"order_id", id}, {"party", "shipper"}});
        } else {
          throw Error(ErrorCode::NothingToConfirm, state_detail(o));
        }
        if (o.seller_confirmed_shipped && o.shipper_confirmed_shipped) {
          o.state = OrderState::InTransit;
          o.shipped_tick = c_.ledger_.clock();
          emit("in_transit", {{"order_id", id}, {"tick", std::to_string(*o.shipped_tick)}});
        }
        return;
      }
      case OrderState::InTransit: {
        require(is_chosen_shipper(o), ErrorCode::NothingToConfirm, state_detail(o));
        o.shipper_confirmed_delivered = true;
        o.delivered_tick = c_.ledger_.clock();
        o.state = OrderState::Delivered;
        emit("delivered", {{"order_id", id}, {"tick", std::to_string(*o.delivered_tick)}});
        return;
      }
      case OrderState::Delivered: {
        require(sender_ == o.buyer, ErrorCode::NothingToConfirm, state_detail(o));
        settle_received(o);
        return;
      }
      case OrderState::Created:
      case OrderState::BidChosen:
      case OrderState::Returning:
        throw Error(ErrorCode::NothingToConfirm, state_detail(o));
      default:
        throw Error(ErrorCode::WrongState, state_detail(o));
    }
  }

  void operator()(const ItemLossBroken& m) {
    no_funds();
    Order& o = order_mut(m.order_id);
    require(sender_ == o.buyer || is_chosen_shipper(o), ErrorCode::NotParty,
            "only the buyer or the chosen shipper may declare loss");
    require(o.state == OrderState::InTransit || o.state == OrderState::Delivered, ErrorCode::WrongState,
            state_detail(o));

    Bid& bid = o.bids[*o.chosen];
    pay_out(o, o.buyer, o.v_item + 2 * bid.v_ship);
    pay_out(o, bid.shipper, bid.v_time);
    pay_out(o, o.seller, o.v_item);
    bid.deposit_held = false;
    close(o, OrderState::LossBroken, ItemStatus::Delisted);
    emit("loss_broken", {{"order_id", std::to_string(o.order_id)}, {"declared_by", sender_.str()}});
  }

  void operator()(const ItemUnsatisfied& m) {
    no_funds();
    Order& o = order_mut(m.order_id);
    require(sender_ == o.buyer, ErrorCode::NotBuyer, sender_.str() + " is not the buyer of order " + std::to_string(o.order_id));
    require(o.state == OrderState::Delivered, ErrorCode::WrongState, state_detail(o));

    o.state = OrderState::Returning;
    emit("return_requested", {{"order_id", std::to_string(o.order_id)}});
  }

  void operator()(const ReturnConfirm& m) {
    no_funds();
    Order& o = order_mut(m.order_id);
    require(sender_ == o.seller, ErrorCode::NotSeller, sender_.str() + " is not the seller of order " + std::to_string(o.order_id));
    require(o.state == OrderState::Returning, ErrorCode::WrongState, state_detail(o));

    Bid& bid = o.bids[*o.chosen];
    pay_out(o, o.buyer, o.v_item);
    pay_out(o, bid.shipper, 2 * bid.v_ship);
    // The shipper's collateral comes back as well.
    pay_out(o, bid.shipper, o.v_item + bid.v_time);
    bid.deposit_held = false;
    close(o, OrderState::Returned, ItemStatus::Available);
    emit("order_returned", {{"order_id", std::to_string(o.order_id)}});
  }

  void operator()(const SubmitReview& m) {
    no_funds();
    Order& o = order_mut(m.order_id);
    require(sender_ == o.buyer, ErrorCode::NotBuyer, sender_.str() + " is not the buyer of order " + std::to_string(o.order_id));
    require(m.rating >= 1 && m.rating <= 5, ErrorCode::InvalidRating, "rating must be in [1,5]");
    require(o.state == OrderState::Completed || o.state == OrderState::Returned, ErrorCode::WrongState,
            state_detail(o));
    require(!o.review.has_value(), ErrorCode::AlreadyReviewed, "order " + std::to_string(o.order_id) + " already has a review");

    o.review = Review{m.rating, m.text, sender_};
    emit("review_submitted", {{"order_id", std::to_string(o.order_id)}, {"rating", std::to_string(m.rating)}});
  }

 private:
  void settle_received(Order& o) {
    Bid& bid = o.bids[*o.chosen];
    bool on_time = o.on_time().value();
    o.buyer_confirmed_received = true;
    pay_out(o, o.buyer, bid.v_ship);
    pay_out(o, bid.shipper, bid.v_ship + o.v_item);
    pay_out(o, o.seller, o.v_item);
    pay_out(o, on_time ? bid.shipper : o.buyer, bid.v_time);
    bid.deposit_held = false;
    close(o, OrderState::Completed, ItemStatus::Delisted);
    c_.stats_[o.seller].seller_satisfied += 1;
    if (on_time) c_.stats_[bid.shipper].shipper_completed += 1;
    emit("order_completed", {{"order_id", std::to_string(o.order_id)}, {"on_time", on_time ? "true" : "false"}});
  }

  void close(Order& o, OrderState terminal, ItemStatus item_status) {
    if (!o.escrow.is_zero()) {
      throw std::logic_error("order " + std::to_string(o.order_id) + " closed with escrow " + o.escrow.to_string());
    }
    o.state = terminal;
    c_.items_.at(o.item_id).status = item_status;
    c_.stats_[o.seller].seller_total_sold += 1;
  }

  void no_funds() const {
    require(attached_.is_zero(), ErrorCode::FundsNotExpected, "message takes no attached funds");
  }

  void require_deposit(TokenAmount expected) const {
    require(attached_ == expected, ErrorCode::WrongDeposit,
            "attached " + attached_.to_string() + ", required " + expected.to_string());
    TokenAmount available = c_.ledger_.balance(sender_);
    require(available >= attached_, ErrorCode::InsufficientFunds,
            sender_.str() + " has " + available.to_string() + ", needs " + attached_.to_string());
  }

  ItemListing& item_mut(ItemId id) {
    auto it = c_.items_.find(id);
    require(it != c_.items_.end(), ErrorCode::UnknownItem, std::to_string(id));
    return it->second;
  }

  Order& order_mut(OrderId id) {
    auto it = c_.orders_.find(id);
    require(it != c_.orders_.end(), ErrorCode::UnknownOrder, std::to_string(id));
    return it->second;
  }

  bool is_chosen_shipper(const Order& o) const {
    const Bid* b = o.chosen_bid();
    return b != nullptr && b->shipper == sender_;
  }

  void collect(Order& o) {
    move(sender_, c_.contract_account_, attached_);
    o.escrow += attached_;
  }

  void pay_out(Order& o, const Address& to, TokenAmount amount) {
    if (amount > o.escrow) {
      throw std::logic_error("payout " + amount.to_string() + " exceeds escrow of order " + std::to_string(o.order_id));
    }
    move(c_.contract_account_, to, amount);
    o.escrow -= amount;
  }

  void move(const Address& from, const Address& to, TokenAmount amount) {
    try {
      c_.ledger_.transfer(from, to, amount);
    } catch (const Error& e) {
      throw std::logic_error(std::string("ledger rejected a validated transfer: ") + e.what());
    }
    out_.receipt.transfers.push_back(Transfer{from, to, amount});
  }

  void emit(std::string name, std::map<std::string, std::string> attrs) {
    out_.receipt.events.push_back(Event{std::move(name), std::move(attrs)});
  }

  Contract& c_;
  const Address& sender_;
  TokenAmount attached_;
  Outcome& out_;
};

Contract::Contract(Ledger ledger, Address contract_account)
    : ledger_(std::move(ledger)), contract_account_(std::move(contract_account)) {
  if (!ledger_.contains(contract_account_)) ledger_.create_account(contract_account_, TokenAmount{});
}

Outcome Contract::execute(const Address& sender, const ExecuteMsg& msg, TokenAmount attached) {
  Outcome out;
  if (!ledger_.contains(sender)) {
    out.rejection = Rejection{ErrorCode::UnknownAddress, sender.str()};
    return out;
  }
  if (sender == contract_account_) {
    out.rejection = Rejection{ErrorCode::NotParty, "the contract account cannot send messages"};
    return out;
  }
  try {
    Transfer gas = ledger_.charge_gas(sender);
    if (!gas.amount.is_zero()) out.receipt.transfers.push_back(std::move(gas));
  } catch (const Error& e) {
    out.rejection = Rejection{e.code(), "cannot pay gas: " + e.detail()};
    return out;
  }
  const std::size_t gas_legs = out.receipt.transfers.size();
  try {
    std::visit(Executor{*this, sender, attached, out}, msg);
  } catch (const Error& e) {
    out.rejection = Rejection{e.code(), e.detail()};
    out.value.reset();
    out.receipt.events.clear();
    // Keep only the gas leg, which is all that was applied.
    out.receipt.transfers.erase(out.receipt.transfers.begin() + static_cast<std::ptrdiff_t>(gas_legs),
                                out.receipt.transfers.end());
  }
  return out;
}

std::vector<ItemListing> Contract::goods() const {
  std::vector<ItemListing> out;
  out.reserve(items_.size());
  for (const auto& [_, item] : items_) out.push_back(item);
  return out;
}

std::vector<OrderSummary> Contract::orders() const {
  std::vector<OrderSummary> out;
  out.reserve(orders_.size());
  for (const auto& [_, o] : orders_) {
    out.push_back(OrderSummary{o.order_id, o.item_id, o.buyer, o.seller, o.v_item, o.state, o.bids.size(),
                               o.chosen, o.escrow});
  }
  return out;
}

const Order& Contract::order(OrderId id) const {
  auto it = orders_.find(id);
  if (it == orders_.end()) throw Error(ErrorCode::UnknownOrder, std::to_string(id));
  return it->second;
}

const ItemListing& Contract::item(ItemId id) const {
  auto it = items_.find(id);
  if (it == items_.end()) throw Error(ErrorCode::UnknownItem, std::to_string(id));
  return it->second;
}

AddressesView Contract::addresses(OrderId id) const {
  const Order& o = order(id);
  return AddressesView{o.buyer_obscured_address, items_.at(o.item_id).seller_obscured_address,
                       o.encrypted_buyer_address, o.encrypted_seller_address};
}

ParticipantStats Contract::stats(const Address& addr) const {
  auto it = stats_.find(addr);
  return it == stats_.end() ? ParticipantStats{} : it->second;
}

TokenAmount Contract::total_escrow() const {
  TokenAmount sum;
  for (const auto& [_, o] : orders_) sum += o.escrow;
  return sum;
}

}  // namespace spender
