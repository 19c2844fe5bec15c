#include "spender/wallet_cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <ostream>

#include "spender/codec.hpp"
#include "spender/keystore.hpp"
#include "spender/node_client.hpp"

namespace spender {
namespace {

using nlohmann::json;

enum class OutputMode { Text, Structured };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::filesystem::path default_keystore(const EnvLookup& env) {
  if (auto home = env("HOME")) return std::filesystem::path(*home) / ".spender" / "keystore.json";
  return "spender-keystore.json";
}

class Wallet {
 public:
  Wallet(std::ostream& out, std::ostream& err, const EnvLookup& env)
      : node_url_(env("SPENDER_NODE").value_or("http://127.0.0.1:8645")),
        keystore_(env("SPENDER_KEYSTORE").value_or(default_keystore(env).string())),
        sender_(env("SPENDER_ADDRESS").value_or("")),
        out_(out),
        err_(err) {}

  std::string node_url_;
  std::string keystore_;
  std::string sender_;
  std::string output_ = "text";

  OutputMode mode() const { return output_ == "structured" ? OutputMode::Structured : OutputMode::Text; }

  Address sender() const {
    if (sender_.empty()) throw UsageError("no sender: pass --as or set SPENDER_ADDRESS");
    if (!is_valid_address(sender_)) throw UsageError("invalid sender address '" + sender_ + "'");
    return Address(sender_);
  }

  NodeClient& client() {
    if (!client_) client_ = std::make_unique<NodeClient>(node_url_);
    return *client_;
  }

  // One execute request. text renders the accepted body in text mode.
  int execute(const ExecuteMsg& msg, TokenAmount funds, const std::function<std::string(const json&)>& text = {}) {
    auto reply = client().execute(sender(), msg, funds);
    if (reply.status != 200) return http_error(reply);
    const json& body = reply.body;
    if (mode() == OutputMode::Structured) out_ << body.dump() << '\n';
    if (!body.value("accepted", false)) {
      if (mode() == OutputMode::Text) render_rejection(body.at("error"));
      return kExitRejected;
    }
    if (mode() == OutputMode::Text) {
      out_ << (text ? text(body) : "accepted") << " (sequence " << body.value("sequence", 0) << ")\n";
    }
    return kExitOk;
  }

  int query(const std::string& path, const std::function<void(const json&)>& text) {
    auto reply = client().get(path);
    if (reply.status != 200) return http_error(reply);
    if (mode() == OutputMode::Structured) {
      out_ << reply.body.dump() << '\n';
    } else {
      text(reply.body);
    }
    return kExitOk;
  }

  int admin(const std::string& op, const json& body, const std::function<std::string(const json&)>& text) {
    auto reply = client().post("/v1/admin/" + op, body);
    if (reply.status != 200) return http_error(reply);
    if (mode() == OutputMode::Structured) out_ << reply.body.dump() << '\n';
    if (!reply.body.value("accepted", false)) {
      if (mode() == OutputMode::Text) render_rejection(reply.body.at("error"));
      return kExitRejected;
    }
    if (mode() == OutputMode::Text) out_ << text(reply.body) << " (sequence " << reply.body.value("sequence", 0) << ")\n";
    return kExitOk;
  }

  json fetch_order(OrderId id) {
    auto reply = client().get("/v1/query/order/" + std::to_string(id));
    if (reply.status != 200) {
      http_error(reply);
      throw Error(ErrorCode::UnknownOrder, "cannot fetch order " + std::to_string(id));
    }
    return reply.body;
  }

  Keystore keystore() const { return Keystore(keystore_); }

  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

 private:
  void render_rejection(const json& error) {
    err_ << "rejected: " << error.value("code", "?") << ": " << error.value("detail", "") << '\n';
  }

  int http_error(const NodeClient::Reply& reply) {
    if (mode() == OutputMode::Structured && reply.status != 200) {
      out_ << reply.body.dump() << '\n';
    }
    if (reply.body.contains("error")) {
      render_rejection(reply.body.at("error"));
    } else {
      err_ << "error: HTTP " << reply.status << '\n';
    }
    return kExitRejected;
  }

  std::ostream& out_;
  std::ostream& err_;
  std::unique_ptr<NodeClient> client_;
};

TokenAmount amount_flag(const std::string& text, const char* name) {
  try {
    return TokenAmount::parse(text);
  } catch (const Error&) {
    throw UsageError(std::string("--") + name + " must be a non-negative integer amount, got '" + text + "'");
  }
}

std::string result_text(const json& body, const char* key) {
  return std::string(key) + " " + std::to_string(body.at("result").at(key).get<std::uint64_t>());
}

std::string lines_text(const crypto::DetailedAddress& a) {
  std::string s;
  for (std::size_t i = 0; i < a.lines.size(); ++i) {
    if (i > 0) s += " / ";
    s += a.lines[i];
  }
  return s;
}

// Seals the sender's detailed address under the chosen shipper's key and
// uploads it. The order detail is read first to learn that key.
int upload_address(Wallet& w, OrderId order_id, const std::vector<std::string>& lines) {
  if (lines.empty()) throw UsageError("--line is required at least once");
  json order = w.fetch_order(order_id);
  if (order.at("chosen").is_null()) throw Error(ErrorCode::WrongState, "order has no chosen shipper yet");
  const json& bid = order.at("bids").at(order.at("chosen").get<std::size_t>());
  auto key = crypto::from_base64(bid.at("shipper_public_key").get<std::string>());
  auto envelope = crypto::seal(crypto::DetailedAddress{lines}, key, bid.at("scheme_id").get<std::string>());
  return w.execute(UploadAddress{order_id, std::move(envelope)}, TokenAmount{});
}

void add_seller(CLI::App& app, Wallet& w, std::function<int()>& action) {
  auto* seller = app.add_subcommand("seller", "Seller actions")->require_subcommand(1);

  auto* post = seller->add_subcommand("post", "List an item for sale");
  auto title = std::make_shared<std::string>();
  auto description = std::make_shared<std::string>();
  auto price = std::make_shared<std::string>();
  auto obscured = std::make_shared<std::string>();
  post->add_option("--title", *title)->required();
  post->add_option("--description", *description);
  post->add_option("--price", *price)->required();
  post->add_option("--obscured", *obscured, "Coarse location shown to shippers")->required();
  post->callback([&, title, description, price, obscured] {
    action = [&w, title, description, price, obscured] {
      return w.execute(PostItem{*title, *description, amount_flag(*price, "price"), *obscured}, TokenAmount{},
                       [](const json& b) { return result_text(b, "item_id"); });
    };
  });

  auto* reset = seller->add_subcommand("reset-price", "Change the price of an available item");
  auto item = std::make_shared<ItemId>();
  auto new_price = std::make_shared<std::string>();
  reset->add_option("--item", *item)->required();
  reset->add_option("--price", *new_price)->required();
  reset->callback([&, item, new_price] {
    action = [&w, item, new_price] {
      return w.execute(ResetPrice{*item, amount_flag(*new_price, "price")}, TokenAmount{});
    };
  });

  auto* upload = seller->add_subcommand("upload-address", "Seal and upload the pickup address");
  auto order = std::make_shared<OrderId>();
  auto lines = std::make_shared<std::vector<std::string>>();
  upload->add_option("--order", *order)->required();
  upload->add_option("--line", *lines, "Address line (repeatable)")->required();
  upload->callback([&, order, lines] { action = [&w, order, lines] { return upload_address(w, *order, *lines); }; });

  auto* shipped = seller->add_subcommand("confirm-shipped", "Confirm the item was handed to the shipper");
  shipped->add_option("--order", *order)->required();
  shipped->callback([&, order] { action = [&w, order] { return w.execute(Confirm{*order}, TokenAmount{}); }; });

  auto* ret = seller->add_subcommand("return-confirm", "Confirm a returned item arrived");
  ret->add_option("--order", *order)->required();
  ret->callback([&, order] { action = [&w, order] { return w.execute(ReturnConfirm{*order}, TokenAmount{}); }; });
}

void add_buyer(CLI::App& app, Wallet& w, std::function<int()>& action) {
  auto* buyer = app.add_subcommand("buyer", "Buyer actions")->require_subcommand(1);
  auto order = std::make_shared<OrderId>();

  auto* browse = buyer->add_subcommand("browse", "List items for sale");
  browse->callback([&] {
    action = [&w] {
      return w.query("/v1/query/goods", [&w](const json& b) {
        if (b.at("goods").empty()) w.out() << "no items\n";
        for (const auto& g : b.at("goods")) {
          w.out() << "#" << g.at("item_id").get<std::uint64_t>() << "  " << g.at("title").get<std::string>()
                  << "  price " << g.at("price").get<std::string>() << "  from "
                  << g.at("seller_obscured_address").get<std::string>() << "  seller "
                  << g.at("seller").get<std::string>() << '\n';
        }
      });
    };
  });

  auto* buy = buyer->add_subcommand("buy", "Order an item, depositing its price");
  auto item = std::make_shared<ItemId>();
  auto deposit = std::make_shared<std::string>();
  auto obscured = std::make_shared<std::string>();
  buy->add_option("--item", *item)->required();
  buy->add_option("--deposit", *deposit)->required();
  buy->add_option("--obscured", *obscured, "Coarse delivery location shown to shippers")->required();
  buy->callback([&, item, deposit, obscured] {
    action = [&w, item, deposit, obscured] {
      return w.execute(Buy{*item, *obscured}, amount_flag(*deposit, "deposit"),
                       [](const json& b) { return result_text(b, "order_id"); });
    };
  });

  auto* bids = buyer->add_subcommand("bids", "Show the bids on an order");
  bids->add_option("--order", *order)->required();
  bids->callback([&, order] {
    action = [&w, order] {
      return w.query("/v1/query/order/" + std::to_string(*order), [&w](const json& o) {
        const auto& list = o.at("bids");
        if (list.empty()) w.out() << "no bids\n";
        for (std::size_t i = 0; i < list.size(); ++i) {
          const auto& b = list[i];
          TokenAmount v_ship = codec::decode_amount(b, "v_ship");
          w.out() << "[" << i << "] " << b.at("shipper").get<std::string>() << "  v_ship " << v_ship.to_string()
                  << "  v_time " << b.at("v_time").get<std::string>() << "  promised "
                  << b.at("promised_delivery").get<std::uint64_t>() << "  choose deposit "
                  << (2 * v_ship).to_string() << (b.at("deposit_held").get<bool>() ? "" : "  (refunded)") << '\n';
        }
      });
    };
  });

  auto* choose = buyer->add_subcommand("choose", "Choose a bid, depositing twice its shipping fee");
  auto bid = std::make_shared<std::uint64_t>();
  choose->add_option("--order", *order)->required();
  choose->add_option("--bid", *bid)->required();
  choose->add_option("--deposit", *deposit)->required();
  choose->callback([&, order, bid, deposit] {
    action = [&w, order, bid, deposit] {
      return w.execute(ChooseBid{*order, *bid}, amount_flag(*deposit, "deposit"));
    };
  });

  auto* upload = buyer->add_subcommand("upload-address", "Seal and upload the delivery address");
  auto lines = std::make_shared<std::vector<std::string>>();
  upload->add_option("--order", *order)->required();
  upload->add_option("--line", *lines, "Address line (repeatable)")->required();
  upload->callback([&, order, lines] { action = [&w, order, lines] { return upload_address(w, *order, *lines); }; });

  auto* received = buyer->add_subcommand("confirm-received", "Accept delivery and settle the order");
  received->add_option("--order", *order)->required();
  received->callback([&, order] { action = [&w, order] { return w.execute(Confirm{*order}, TokenAmount{}); }; });

  auto* ret = buyer->add_subcommand("return", "Reject a delivered item and send it back");
  ret->add_option("--order", *order)->required();
  ret->callback([&, order] { action = [&w, order] { return w.execute(ItemUnsatisfied{*order}, TokenAmount{}); }; });

  auto* review = buyer->add_subcommand("review", "Review a finished order");
  auto rating = std::make_shared<int>();
  auto text = std::make_shared<std::string>();
  review->add_option("--order", *order)->required();
  review->add_option("--rating", *rating, "1 to 5")->required();
  review->add_option("--text", *text);
  review->callback([&, order, rating, text] {
    action = [&w, order, rating, text] { return w.execute(SubmitReview{*order, *rating, *text}, TokenAmount{}); };
  });
}

void add_shipper(CLI::App& app, Wallet& w, std::function<int()>& action) {
  auto* shipper = app.add_subcommand("shipper", "Shipper actions")->require_subcommand(1);
  auto order = std::make_shared<OrderId>();
  auto key = std::make_shared<std::string>();

  auto* orders = shipper->add_subcommand("orders", "List orders");
  orders->callback([&] {
    action = [&w] {
      return w.query("/v1/query/orders", [&w](const json& b) {
        if (b.at("orders").empty()) w.out() << "no orders\n";
        for (const auto& o : b.at("orders")) {
          w.out() << "#" << o.at("order_id").get<std::uint64_t>() << "  item " << o.at("item_id").get<std::uint64_t>()
                  << "  " << o.at("state").get<std::string>() << "  v_item " << o.at("v_item").get<std::string>()
                  << "  bids " << o.at("bid_count").get<std::uint64_t>() << '\n';
        }
      });
    };
  });

  auto* keygen = shipper->add_subcommand("keygen", "Create a local keypair");
  auto scheme = std::make_shared<std::string>(crypto::kSealedEnvelopeV1);
  keygen->add_option("--key", *key, "Label in the keystore")->required();
  keygen->add_option("--scheme", *scheme);
  keygen->callback([&, key, scheme] {
    action = [&w, key, scheme] {
      Keystore ks = w.keystore();
      const auto& kp = ks.generate(*key, *scheme);
      auto fp = crypto::find_scheme(kp.scheme).fingerprint(kp.public_key);
      if (w.mode() == OutputMode::Structured) {
        w.out() << json{{"key", *key},
                        {"scheme", kp.scheme},
                        {"public_key", crypto::to_base64(kp.public_key)},
                        {"fingerprint", crypto::to_hex(fp)}}
                       .dump()
                << '\n';
      } else {
        w.out() << *key << "  " << kp.scheme << "  " << crypto::to_base64(kp.public_key) << '\n';
      }
      return kExitOk;
    };
  });

  auto* bid = shipper->add_subcommand("bid", "Bid on an order, depositing v_item plus the time bond");
  auto v_ship = std::make_shared<std::string>();
  auto v_time = std::make_shared<std::string>();
  auto promised = std::make_shared<Tick>();
  auto deposit = std::make_shared<std::string>();
  bid->add_option("--order", *order)->required();
  bid->add_option("--ship", *v_ship, "Shipping fee")->required();
  bid->add_option("--time-bond", *v_time, "Forfeited to the buyer if late")->required();
  bid->add_option("--promised", *promised, "Promised delivery time in ticks")->required();
  bid->add_option("--key", *key, "Keystore label whose public key is posted")->required();
  bid->add_option("--deposit", *deposit)->required();
  bid->callback([&, order, v_ship, v_time, promised, key, deposit] {
    action = [&w, order, v_ship, v_time, promised, key, deposit] {
      Keystore ks = w.keystore();
      const auto& kp = ks.get(*key);
      BidOrder m{*order, amount_flag(*v_ship, "ship"), amount_flag(*v_time, "time-bond"), *promised, kp.public_key,
                 kp.scheme};
      return w.execute(m, amount_flag(*deposit, "deposit"), [](const json& b) { return result_text(b, "bid_index"); });
    };
  });

  auto* addresses = shipper->add_subcommand("addresses", "Fetch and locally decrypt both addresses");
  addresses->add_option("--order", *order)->required();
  addresses->add_option("--key", *key)->required();
  addresses->callback([&, order, key] {
    action = [&w, order, key] {
      Keystore ks = w.keystore();
      const auto& kp = ks.get(*key);
      auto reply = w.client().get("/v1/query/addresses/" + std::to_string(*order));
      if (reply.status != 200) {
        const json& e = reply.body.contains("error") ? reply.body.at("error") : json::object();
        w.err() << "rejected: " << e.value("code", "?") << ": " << e.value("detail", "") << '\n';
        return kExitRejected;
      }
      auto open = [&](const char* field) -> std::optional<crypto::DetailedAddress> {
        const json& env = reply.body.at(field);
        if (env.is_null()) return std::nullopt;
        return crypto::open(codec::decode_envelope(env), kp);
      };
      auto buyer = open("encrypted_buyer_address");
      auto seller = open("encrypted_seller_address");
      if (w.mode() == OutputMode::Structured) {
        auto as_json = [](const std::optional<crypto::DetailedAddress>& a) {
          return a ? json{{"lines", a->lines}} : json(nullptr);
        };
        w.out() << json{{"order_id", *order}, {"buyer_address", as_json(buyer)}, {"seller_address", as_json(seller)}}
                       .dump()
                << '\n';
      } else {
        w.out() << "pickup:   " << (seller ? lines_text(*seller) : "<not uploaded>") << '\n'
                << "delivery: " << (buyer ? lines_text(*buyer) : "<not uploaded>") << '\n';
      }
      return kExitOk;
    };
  });

  struct Simple {
    const char* name;
    const char* help;
    std::function<ExecuteMsg(OrderId)> make;
  };
  const Simple simple[] = {
      {"discard", "Decline a chosen order before shipping", [](OrderId id) { return ExecuteMsg{DiscardOrder{id}}; }},
      {"confirm-shipped", "Confirm pickup from the seller", [](OrderId id) { return ExecuteMsg{Confirm{id}}; }},
      {"confirm-delivered", "Confirm handover to the buyer", [](OrderId id) { return ExecuteMsg{Confirm{id}}; }},
      {"loss-broken", "Report the item lost or broken", [](OrderId id) { return ExecuteMsg{ItemLossBroken{id}}; }},
  };
  for (const auto& s : simple) {
    auto* cmd = shipper->add_subcommand(s.name, s.help);
    cmd->add_option("--order", *order)->required();
    cmd->callback([&, order, make = s.make] {
      action = [&w, order, make] { return w.execute(make(*order), TokenAmount{}); };
    });
  }
}

void add_common(CLI::App& app, Wallet& w, std::function<int()>& action) {
  auto addr = std::make_shared<std::string>();
  auto target = [&w, addr] {
    std::string a = addr->empty() ? w.sender().str() : *addr;
    if (!is_valid_address(a)) throw UsageError("invalid address '" + a + "'");
    return a;
  };

  auto* balance = app.add_subcommand("balance", "Show an account balance");
  balance->add_option("--addr", *addr, "Defaults to the sender");
  balance->callback([&, target] {
    action = [&w, target] {
      return w.query("/v1/query/balance/" + encode_path_segment(target()), [&w](const json& b) {
        w.out() << b.at("addr").get<std::string>() << "  " << b.at("balance").get<std::string>() << '\n';
      });
    };
  });

  auto* stats = app.add_subcommand("stats", "Show reputation ratios");
  stats->add_option("--addr", *addr, "Defaults to the sender");
  stats->callback([&, target] {
    action = [&w, target] {
      return w.query("/v1/query/stats/" + encode_path_segment(target()), [&w](const json& b) {
        const auto& sh = b.at("as_shipper");
        const auto& se = b.at("as_seller");
        w.out() << "shipper: " << sh.at("completed").get<std::uint64_t>() << "/"
                << sh.at("total_chosen").get<std::uint64_t>() << " perfect deliveries\n"
                << "seller:  " << se.at("satisfied").get<std::uint64_t>() << "/"
                << se.at("total_sold").get<std::uint64_t>() << " satisfied buyers\n";
      });
    };
  });

  auto* tick = app.add_subcommand("tick", "Advance the node clock");
  auto dt = std::make_shared<Tick>();
  tick->add_option("--dt", *dt)->required();
  tick->callback([&, dt] {
    action = [&w, dt] {
      return w.admin("tick", {{"dt", *dt}},
                     [](const json& b) { return "clock " + std::to_string(b.at("clock").get<std::uint64_t>()); });
    };
  });

  auto* faucet = app.add_subcommand("faucet", "Mint test tokens (sandbox nodes only)");
  auto amount = std::make_shared<std::string>();
  faucet->add_option("--addr", *addr, "Defaults to the sender");
  faucet->add_option("--amount", *amount)->required();
  faucet->callback([&, target, amount] {
    action = [&w, target, amount] {
      return w.admin("faucet", {{"addr", target()}, {"amount", codec::amount(amount_flag(*amount, "amount"))}},
                     [](const json& b) { return "balance " + b.at("balance").get<std::string>(); });
    };
  });

  auto* hash = app.add_subcommand("state-hash", "Show the node's state hash");
  hash->callback([&] {
    action = [&w] {
      return w.query("/v1/state_hash", [&w](const json& b) {
        w.out() << b.at("state_hash").get<std::string>() << "  (sequence " << b.at("sequence").get<std::uint64_t>()
                << ")\n";
      });
    };
  });
}

}  // namespace

EnvLookup process_env() {
  return [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (v == nullptr) return std::nullopt;
    return std::string(v);
  };
}

int run_wallet(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
  Wallet w(out, err, env);
  std::function<int()> action;

  CLI::App app{"SPENDER wallet: buyer, seller and shipper actions against a node", "spender"};
  app.require_subcommand(1);
  app.add_option("--node", w.node_url_, "Node URL (env SPENDER_NODE)");
  app.add_option("--keystore", w.keystore_, "Keystore file (env SPENDER_KEYSTORE)");
  app.add_option("--as", w.sender_, "Sender address (env SPENDER_ADDRESS)");
  app.add_option("--output", w.output_, "text or structured")->check(CLI::IsMember({"text", "structured"}));

  add_seller(app, w, action);
  add_buyer(app, w, action);
  add_shipper(app, w, action);
  add_common(app, w, action);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }
  if (!action) return kExitUsage;

  try {
    return action();
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitRejected;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitTransport;
  }
}

}  // namespace spender
