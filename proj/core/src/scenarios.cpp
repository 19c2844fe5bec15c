// Built-in scenarios. Each encodes one lifecycle path or one adversarial
// coalition; expected deltas are written out leg by leg so a reader can audit
// them against the settlement rules.

#include <array>
#include <utility>

#include "spender/harness.hpp"

namespace spender::harness {
namespace {

constexpr std::string_view kHonestHappyPath = R"json({
  "name": "honest_happy_path",
  "description": "Two shippers bid; the buyer takes the cheaper bid and the order completes on time.",
  "params": {"v_item": 100, "v_ship_a": 10, "v_ship_b": 8, "v_time": 5, "gas": 1, "promised_delivery": 10},
  "actors": {"seller": 1000, "buyer": 1000, "shipper_a": 1000, "shipper_b": 1000},
  "steps": [
    {"sender": "seller", "msg": {"post_item": {"title": "Desk lamp", "description": "Brass, working", "price": "${v_item}", "obscured_address": "Montreal, QC"}}},
    {"sender": "buyer", "msg": {"buy": {"item_id": 1, "buyer_obscured_address": "Toronto, ON"}}, "funds": "v_item"},
    {"sender": "shipper_a", "msg": {"bid_order": {"order_id": 1, "v_ship": "${v_ship_a}", "v_time": "${v_time}", "promised_delivery": "${promised_delivery}", "public_key": "${key:shipper_a}", "scheme_id": "sealed-envelope-v1"}}, "funds": "v_item + v_time"},
    {"sender": "shipper_b", "msg": {"bid_order": {"order_id": 1, "v_ship": "${v_ship_b}", "v_time": "${v_time}", "promised_delivery": "${promised_delivery}", "public_key": "${key:shipper_b}", "scheme_id": "sealed-envelope-v1"}}, "funds": "v_item + v_time"},
    {"sender": "buyer", "msg": {"choose_bid": {"order_id": 1, "bid_index": 1}}, "funds": "2*v_ship_b"},
    {"sender": "buyer", "msg": {"upload_address": {"order_id": 1, "envelope": {"seal_for": "shipper_b", "lines": ["88 Queen St W", "Unit 4", "Toronto ON M5H"]}}}},
    {"sender": "seller", "msg": {"upload_address": {"order_id": 1, "envelope": {"seal_for": "shipper_b", "lines": ["1200 Rue Sherbrooke", "Montreal QC H3A"]}}}},
    {"sender": "seller", "msg": {"confirm": {"order_id": 1}}},
    {"sender": "shipper_b", "msg": {"confirm": {"order_id": 1}}},
    {"advance": 7, "sender": "shipper_b", "msg": {"confirm": {"order_id": 1}}},
    {"sender": "buyer", "msg": {"confirm": {"order_id": 1}}},
    {"sender": "buyer", "msg": {"submit_review": {"order_id": 1, "rating": 5, "text": "Arrived early"}}}
  ],
  "expect": {
    "deltas": {
      "seller": "v_item - 3*gas",
      "buyer": "-v_item - 2*v_ship_b + v_ship_b - 5*gas",
      "shipper_a": "-v_item - v_time + v_item + v_time - 1*gas",
      "shipper_b": "-v_item - v_time + v_ship_b + v_item + v_time - 3*gas"
    },
    "orders": {"1": "Completed"}
  }
})json";

constexpr std::string_view kLateDelivery = R"json({
  "name": "late_delivery",
  "description": "Same as the happy path, but delivery takes 12 ticks against a promise of 10: v_time goes to the buyer.",
  "params": {"v_item": 100, "v_ship_a": 10, "v_ship_b": 8, "v_time": 5, "gas": 1, "promised_delivery": 10},
  "actors": {"seller": 1000, "buyer": 1000, "shipper_a": 1000, "shipper_b": 1000},
  "steps": [
    {"sender": "seller", "msg": {"post_item": {"title": "Desk lamp", "description": "Brass, working", "price": "${v_item}", "obscured_address": "Montreal, QC"}}},
    {"sender": "buyer", "msg": {"buy": {"item_id": 1, "buyer_obscured_address": "Toronto, ON"}}, "funds": "v_item"},
    {"sender": "shipper_a", "msg": {"bid_order": {"order_id": 1, "v_ship": "${v_ship_a}", "v_time": "${v_time}", "promised_delivery": "${promised_delivery}", "public_key": "${key:shipper_a}", "scheme_id": "sealed-envelope-v1"}}, "funds": "v_item + v_time"},
    {"sender": "shipper_b", "msg": {"bid_order": {"order_id": 1, "v_ship": "${v_ship_b}", "v_time": "${v_time}", "promised_delivery": "${promised_delivery}", "public_key": "${key:shipper_b}", "scheme_id": "sealed-envelope-v1"}}, "funds": "v_item + v_time"},
    {"sender": "buyer", "msg": {"choose_bid": {"order_id": 1, "bid_index": 1}}, "funds": "2*v_ship_b"},
    {"sender": "buyer", "msg": {"upload_address": {"order_id": 1, "envelope": {"seal_for": "shipper_b", "lines": ["88 Queen St W", "Unit 4", "Toronto ON M5H"]}}}},
    {"sender": "seller", "msg": {"upload_address": {"order_id": 1, "envelope": {"seal_for": "shipper_b", "lines": ["1200 Rue Sherbrooke", "Montreal QC H3A"]}}}},
    {"sender": "seller", "msg": {"confirm": {"order_id": 1}}},
    {"sender": "shipper_b", "msg": {"confirm": {"order_id": 1}}},
    {"advance": 12, "sender": "shipper_b", "msg": {"confirm": {"order_id": 1}}},
    {"sender": "buyer", "msg": {"confirm": {"order_id": 1}}},
    {"sender": "buyer", "msg": {"submit_review": {"order_id": 1, "rating": 3, "text": "Two ticks late"}}}
  ],
  "expect": {
    "deltas": {
      "seller": "v_item - 3*gas",
      "buyer": "-v_item - 2*v_ship_b + v_ship_b + v_time - 5*gas",
      "shipper_a": "-1*gas",
      "shipper_b": "-v_item - v_time + v_ship_b + v_item - 3*gas"
    },
    "orders": {"1": "Completed"}
  }
})json";

constexpr std::string_view kShipperDiscard = R"json({
  "name": "shipper_discard",
  "description": "A seller lists a fake item. The shipper inspects it at pickup and discards the order; the seller's early shipped-confirmation cannot block that. Buyer and shipper get their deposits back, the seller is left with the gas bill.",
  "params": {"v_item": 100, "v_ship": 8, "v_time": 5, "gas": 1, "promised_delivery": 10},
  "actors": {"seller": 1000, "buyer": 1000, "shipper": 1000},
  "steps": [
    {"sender": "seller", "msg": {"post_item": {"title": "Designer watch", "description": "Genuine (it is not)", "price": "${v_item}", "obscured_address": "Laval, QC"}}},
    {"sender": "buyer", "msg": {"buy": {"item_id": 1, "buyer_obscured_address": "Ottawa, ON"}}, "funds": "v_item"},
    {"sender": "shipper", "msg": {"bid_order": {"order_id": 1, "v_ship": "${v_ship}", "v_time": "${v_time}", "promised_delivery": "${promised_delivery}", "public_key": "${key:shipper}", "scheme_id": "sealed-envelope-v1"}}, "funds": "v_item + v_time"},
    {"sender": "buyer", "msg": {"choose_bid": {"order_id": 1, "bid_index": 0}}, "funds": "2*v_ship"},
    {"sender": "buyer", "msg": {"upload_address": {"order_id": 1, "envelope": {"seal_for": "shipper", "lines": ["5 Elgin St", "Ottawa ON"]}}}},
    {"sender": "seller", "msg": {"upload_address": {"order_id": 1, "envelope": {"seal_for": "shipper", "lines": ["300 Boul Cartier", "Laval QC"]}}}},
    {"sender": "seller", "msg": {"confirm": {"order_id": 1}}},
    {"sender": "shipper", "msg": {"discard_order": {"order_id": 1}}}
  ],
  "expect": {
    "deltas": {
      "seller": "-3*gas",
      "buyer": "-v_item - 2*v_ship + v_item + 2*v_ship - 3*gas",
      "shipper": "-v_item - v_time + v_item + v_time - 2*gas"
    },
    "orders": {"1": "Discarded"}
  }
})json";

constexpr std::string_view kBuyerForcedReturn = R"json({
  "name": "buyer_forced_return",
  "description": "A malicious buyer returns a perfectly good item to hurt the shipper. The buyer forfeits 2*v_ship, the shipper is paid for both legs, the seller loses no principal.",
  "params": {"v_item": 100, "v_ship": 8, "v_time": 5, "gas": 1, "promised_delivery": 10},
  "actors": {"seller": 1000, "buyer": 1000, "shipper": 1000},
  "steps": [
    {"sender": "seller", "msg": {"post_item": {"title": "Bookshelf", "description": "Oak, 5 shelves", "price": "${v_item}", "obscured_address": "Quebec City, QC"}}},
    {"sender": "buyer", "msg": {"buy": {"item_id": 1, "buyer_obscured_address": "Levis, QC"}}, "funds": "v_item"},
    {"sender": "shipper", "msg": {"bid_order": {"order_id": 1, "v_ship": "${v_ship}", "v_time": "${v_time}", "promised_delivery": "${promised_delivery}", "public_key": "${key:shipper}", "scheme_id": "sealed-envelope-v1"}}, "funds": "v_item + v_time"},
    {"sender": "buyer", "msg": {"choose_bid": {"order_id": 1, "bid_index": 0}}, "funds": "2*v_ship"},
    {"sender": "buyer", "msg": {"upload_address": {"order_id": 1, "envelope": {"seal_for": "shipper", "lines": ["14 Rue Commerciale", "Levis QC"]}}}},
    {"sender": "seller", "msg": {"upload_address": {"order_id": 1, "envelope": {"seal_for": "shipper", "lines": ["9 Rue Saint-Jean", "Quebec QC"]}}}},
    {"sender": "seller", "msg": {"confirm": {"order_id": 1}}},
    {"sender": "shipper", "msg": {"confirm": {"order_id": 1}}},
    {"advance": 3, "sender": "shipper", "msg": {"confirm": {"order_id": 1}}},
    {"sender": "buyer", "msg": {"item_unsatisfied": {"order_id": 1}}},
    {"sender": "buyer", "msg": {"confirm": {"order_id": 1}}, "expect": "NothingToConfirm"},
    {"sender": "seller", "msg": {"return_confirm": {"order_id": 1}}},
    {"sender": "buyer", "msg": {"submit_review": {"order_id": 1, "rating": 1, "text": "Changed my mind"}}}
  ],
  "expect": {
    "deltas": {
      "seller": "-4*gas",
      "buyer": "-v_item - 2*v_ship + v_item - 6*gas",
      "shipper": "-v_item - v_time + 2*v_ship + v_item + v_time - 3*gas"
    },
    "orders": {"1": "Returned"}
  }
})json";

constexpr std::string_view kLossBroken = R"json({
  "name": "loss_broken_in_transit",
  "description": "The shipper breaks the item in transit and declares it. The buyer is made whole, the seller is paid from the shipper's collateral.",
  "params": {"v_item": 100, "v_ship": 8, "v_time": 5, "gas": 1, "promised_delivery": 10},
  "actors": {"seller": 1000, "buyer": 1000, "shipper": 1000},
  "steps": [
    {"sender": "seller", "msg": {"post_item": {"title": "Ceramic vase", "description": "Fragile", "price": "${v_item}", "obscured_address": "Gatineau, QC"}}},
    {"sender": "buyer", "msg": {"buy": {"item_id": 1, "buyer_obscured_address": "Kingston, ON"}}, "funds": "v_item"},
    {"sender": "shipper", "msg": {"bid_order": {"order_id": 1, "v_ship": "${v_ship}", "v_time": "${v_time}", "promised_delivery": "${promised_delivery}", "public_key": "${key:shipper}", "scheme_id": "sealed-envelope-v1"}}, "funds": "v_item + v_time"},
    {"sender": "buyer", "msg": {"choose_bid": {"order_id": 1, "bid_index": 0}}, "funds": "2*v_ship"},
    {"sender": "buyer", "msg": {"upload_address": {"order_id": 1, "envelope": {"seal_for": "shipper", "lines": ["2 Princess St", "Kingston ON"]}}}},
    {"sender": "seller", "msg": {"upload_address": {"order_id": 1, "envelope": {"seal_for": "shipper", "lines": ["77 Rue Laurier", "Gatineau QC"]}}}},
    {"sender": "seller", "msg": {"confirm": {"order_id": 1}}},
    {"sender": "shipper", "msg": {"confirm": {"order_id": 1}}},
    {"advance": 2, "sender": "shipper", "msg": {"item_loss_broken": {"order_id": 1}}},
    {"sender": "buyer", "msg": {"submit_review": {"order_id": 1, "rating": 2, "text": "Never arrived"}}, "expect": "WrongState"}
  ],
  "expect": {
    "deltas": {
      "seller": "v_item - 3*gas",
      "buyer": "-v_item - 2*v_ship + v_item + 2*v_ship - 4*gas",
      "shipper": "-v_item - v_time + v_time - 3*gas"
    },
    "orders": {"1": "LossBroken"}
  }
})json";

constexpr std::string_view kSellerShipperCollusion = R"json({
  "name": "seller_shipper_collusion_return",
  "description": "A colluding shipper underbids, skips verification of a wrong item, and the buyer must return it. The coalition's take is at most 2*v_ship of its own low bid minus gas; the seller loses no principal.",
  "params": {"v_item": 100, "v_ship_colluder": 3, "v_ship_honest": 10, "v_time": 5, "gas": 1, "promised_delivery": 10},
  "actors": {"seller": 1000, "buyer": 1000, "colluder": 1000, "honest_shipper": 1000},
  "steps": [
    {"sender": "seller", "msg": {"post_item": {"title": "Headphones", "description": "Noise cancelling", "price": "${v_item}", "obscured_address": "Sherbrooke, QC"}}},
    {"sender": "buyer", "msg": {"buy": {"item_id": 1, "buyer_obscured_address": "Magog, QC"}}, "funds": "v_item"},
    {"sender": "honest_shipper", "msg": {"bid_order": {"order_id": 1, "v_ship": "${v_ship_honest}", "v_time": "${v_time}", "promised_delivery": "${promised_delivery}", "public_key": "${key:honest_shipper}", "scheme_id": "sealed-envelope-v1"}}, "funds": "v_item + v_time"},
    {"sender": "colluder", "msg": {"bid_order": {"order_id": 1, "v_ship": "${v_ship_colluder}", "v_time": "${v_time}", "promised_delivery": "${promised_delivery}", "public_key": "${key:colluder}", "scheme_id": "sealed-envelope-v1"}}, "funds": "v_item + v_time"},
    {"sender": "buyer", "msg": {"choose_bid": {"order_id": 1, "bid_index": 1}}, "funds": "2*v_ship_colluder"},
    {"sender": "buyer", "msg": {"upload_address": {"order_id": 1, "envelope": {"seal_for": "colluder", "lines": ["31 Rue Principale", "Magog QC"]}}}},
    {"sender": "seller", "msg": {"upload_address": {"order_id": 1, "envelope": {"seal_for": "colluder", "lines": ["400 Rue King", "Sherbrooke QC"]}}}},
    {"sender": "seller", "msg": {"confirm": {"order_id": 1}}},
    {"sender": "colluder", "msg": {"confirm": {"order_id": 1}}},
    {"advance": 4, "sender": "colluder", "msg": {"confirm": {"order_id": 1}}},
    {"sender": "buyer", "msg": {"item_unsatisfied": {"order_id": 1}}},
    {"sender": "seller", "msg": {"return_confirm": {"order_id": 1}}}
  ],
  "expect": {
    "deltas": {
      "seller": "-4*gas",
      "buyer": "-2*v_ship_colluder - 4*gas",
      "colluder": "2*v_ship_colluder - 3*gas",
      "honest_shipper": "-1*gas"
    },
    "orders": {"1": "Returned"}
  }
})json";

constexpr std::string_view kBuyerSellerPhishing = R"json({
  "name": "buyer_seller_phishing",
  "description": "Seller and buyer collude on an absurdly priced listing hoping a shipper will stake it as collateral. Shippers decline to bid, so no collateral is ever at risk; the order stays in Created with the buyer's payment parked in escrow.",
  "params": {"v_item": 90000, "gas": 1},
  "actors": {"seller": 1000, "buyer": 100000, "shipper": 1000},
  "steps": [
    {"sender": "seller", "msg": {"post_item": {"title": "Used pencil", "description": "Slightly chewed", "price": "${v_item}", "obscured_address": "Trois-Rivieres, QC"}}},
    {"sender": "buyer", "msg": {"buy": {"item_id": 1, "buyer_obscured_address": "Drummondville, QC"}}, "funds": "v_item"},
    {"sender": "buyer", "msg": {"choose_bid": {"order_id": 1, "bid_index": 0}}, "expect": "NoSuchBid"}
  ],
  "expect": {
    "deltas": {
      "seller": "-1*gas",
      "buyer": "-v_item - 2*gas",
      "shipper": 0
    },
    "orders": {"1": "Created"}
  }
})json";

constexpr std::string_view kBrushingCost = R"json({
  "name": "brushing_cost",
  "description": "A seller runs a fake order through accomplice buyer and shipper accounts to farm a five-star review. Every token returns to the ring except the gas, which is the price of the fake review.",
  "params": {"v_item": 100, "v_ship": 8, "v_time": 5, "gas": 1, "promised_delivery": 10},
  "actors": {"seller": 1000, "fake_buyer": 1000, "fake_shipper": 1000},
  "steps": [
    {"sender": "seller", "msg": {"post_item": {"title": "Phone case", "description": "Best seller", "price": "${v_item}", "obscured_address": "Montreal, QC"}}},
    {"sender": "fake_buyer", "msg": {"buy": {"item_id": 1, "buyer_obscured_address": "Montreal, QC"}}, "funds": "v_item"},
    {"sender": "fake_shipper", "msg": {"bid_order": {"order_id": 1, "v_ship": "${v_ship}", "v_time": "${v_time}", "promised_delivery": "${promised_delivery}", "public_key": "${key:fake_shipper}", "scheme_id": "sealed-envelope-v1"}}, "funds": "v_item + v_time"},
    {"sender": "fake_buyer", "msg": {"choose_bid": {"order_id": 1, "bid_index": 0}}, "funds": "2*v_ship"},
    {"sender": "fake_buyer", "msg": {"upload_address": {"order_id": 1, "envelope": {"seal_for": "fake_shipper", "lines": ["1 Fake St"]}}}},
    {"sender": "seller", "msg": {"upload_address": {"order_id": 1, "envelope": {"seal_for": "fake_shipper", "lines": ["2 Fake St"]}}}},
    {"sender": "seller", "msg": {"confirm": {"order_id": 1}}},
    {"sender": "fake_shipper", "msg": {"confirm": {"order_id": 1}}},
    {"advance": 1, "sender": "fake_shipper", "msg": {"confirm": {"order_id": 1}}},
    {"sender": "fake_buyer", "msg": {"confirm": {"order_id": 1}}},
    {"sender": "fake_buyer", "msg": {"submit_review": {"order_id": 1, "rating": 5, "text": "Amazing!!!"}}}
  ],
  "expect": {
    "deltas": {
      "seller": "v_item - 3*gas",
      "fake_buyer": "-v_item - v_ship - 5*gas",
      "fake_shipper": "v_ship - 3*gas"
    },
    "orders": {"1": "Completed"}
  }
})json";

constexpr std::array<std::pair<std::string_view, std::string_view>, 8> kBuiltins{{
    {"honest_happy_path", kHonestHappyPath},
    {"late_delivery", kLateDelivery},
    {"shipper_discard", kShipperDiscard},
    {"buyer_forced_return", kBuyerForcedReturn},
    {"loss_broken_in_transit", kLossBroken},
    {"seller_shipper_collusion_return", kSellerShipperCollusion},
    {"buyer_seller_phishing", kBuyerSellerPhishing},
    {"brushing_cost", kBrushingCost},
}};

}  // namespace

std::vector<std::string> list_builtin() {
  std::vector<std::string> names;
  for (const auto& [name, _] : kBuiltins) names.emplace_back(name);
  return names;
}

std::string_view builtin_source(std::string_view name) {
  for (const auto& [n, src] : kBuiltins) {
    if (n == name) return src;
  }
  throw Error(ErrorCode::ParseError, "no built-in scenario named '" + std::string(name) + "'");
}

}  // namespace spender::harness
