#include "spender/node.hpp"

#include <mutex>
#include <stdexcept>
#include <type_traits>

#include "spender/codec.hpp"

namespace spender {
namespace {

using nlohmann::json;

[[noreturn]] void corrupt(std::uint64_t seq, const std::string& what) {
  throw Error(ErrorCode::CorruptLog, "entry " + std::to_string(seq) + ": " + what);
}

json admin_wire(std::uint64_t seq, const std::optional<Rejection>& rejection) {
  json out{{"sequence", seq}, {"accepted", !rejection.has_value()}};
  if (rejection) out["error"] = codec::encode(*rejection);
  return out;
}

// Applies an admin entry to the contract; shared by live handling and replay.
std::optional<Rejection> apply_tick(Contract& c, Tick dt) {
  try {
    c.ledger().advance_clock(dt);
  } catch (const Error& e) {
    return Rejection{e.code(), e.detail()};
  }
  return std::nullopt;
}

std::optional<Rejection> apply_faucet(Contract& c, NodeMode mode, const Address& addr, TokenAmount amount) {
  if (mode == NodeMode::Assertion) return Rejection{ErrorCode::FaucetDisabled, "node runs in assertion mode"};
  if (addr == c.contract_account()) return Rejection{ErrorCode::NotParty, "cannot mint into the contract account"};
  try {
    c.ledger().credit(addr, amount);
  } catch (const Error& e) {
    return Rejection{e.code(), e.detail()};
  }
  return std::nullopt;
}

json faucet_message(const Address& addr, TokenAmount amount) {
  return {{"faucet", {{"addr", addr.str()}, {"amount", codec::amount(amount)}}}};
}

}  // namespace

std::string_view to_string(NodeMode m) noexcept { return m == NodeMode::Sandbox ? "sandbox" : "assertion"; }

std::optional<NodeMode> parse_node_mode(std::string_view s) noexcept {
  if (s == "sandbox") return NodeMode::Sandbox;
  if (s == "assertion") return NodeMode::Assertion;
  return std::nullopt;
}

Contract Node::genesis_state(const Genesis& g) {
  Ledger ledger(g.fee_sink, g.gas_fee);
  for (const auto& [addr, bal] : g.accounts) {
    if (addr == g.fee_sink || addr == g.contract_account) {
      throw Error(ErrorCode::DuplicateAddress, "genesis account collides with a system account: " + addr.str());
    }
    ledger.create_account(addr, bal);
  }
  return Contract(std::move(ledger), g.contract_account);
}

Contract Node::replay(const Genesis& genesis, const std::vector<LogEntry>& entries) {
  Contract c = genesis_state(genesis);
  std::uint64_t expected_seq = 1;
  for (const LogEntry& e : entries) {
    if (e.sequence != expected_seq) corrupt(e.sequence, "sequence gap, expected " + std::to_string(expected_seq));
    ++expected_seq;
    if (e.tick != c.ledger().clock()) corrupt(e.sequence, "recorded tick differs from replayed clock");

    json outcome;
    try {
      if (e.kind == "execute") {
        if (!e.sender) corrupt(e.sequence, "execute entry without sender");
        ExecuteMsg msg = codec::decode_execute(e.message);
        Outcome o = c.execute(Address(*e.sender), msg, TokenAmount::parse(e.attached));
        outcome = codec::encode(o, msg);
      } else if (e.kind == "tick") {
        Tick dt = codec::decode_u64(codec::field(e.message, "tick"), "dt");
        outcome = admin_wire(e.sequence, apply_tick(c, dt));
        outcome.erase("sequence");
      } else {
        const json& body = codec::field(e.message, "faucet");
        Address addr(codec::decode_string(body, "addr"));
        TokenAmount amount = codec::decode_amount(body, "amount");
        // The mode in force at the time is captured by the recorded outcome.
        bool was_accepted = codec::field(e.outcome, "accepted").get<bool>();
        if (was_accepted) {
          outcome = admin_wire(e.sequence, apply_faucet(c, NodeMode::Sandbox, addr, amount));
          outcome.erase("sequence");
        } else {
          outcome = e.outcome;
        }
      }
    } catch (const Error& err) {
      if (err.code() == ErrorCode::CorruptLog) throw;
      corrupt(e.sequence, err.what());
    } catch (const json::exception& err) {
      corrupt(e.sequence, err.what());
    }
    if (outcome != e.outcome) corrupt(e.sequence, "replayed outcome differs from the recorded one");
    if (codec::state_hash(c) != e.state_hash) corrupt(e.sequence, "replayed state hash differs");
  }
  return c;
}

std::string Node::replay_file(const std::filesystem::path& path) {
  auto contents = EventLog::read(path);
  if (!contents) throw Error(ErrorCode::CorruptLog, "no log at " + path.string());
  return codec::state_hash(replay(contents->genesis, contents->entries));
}

Node::Node(NodeOptions options)
    : genesis_(options.genesis), mode_(options.mode), contract_(genesis_state(options.genesis)) {
  if (options.log_path.empty()) return;
  if (auto contents = EventLog::read(options.log_path)) {
    genesis_ = contents->genesis;
    contract_ = replay(genesis_, contents->entries);
    entries_ = std::move(contents->entries);
  } else {
    contract_ = genesis_state(genesis_);
  }
  log_ = std::make_unique<EventLog>(options.log_path, genesis_, options.fsync);
}

Node::~Node() = default;

LogEntry& Node::record(LogEntry entry) {
  entry.sequence = entries_.size() + 1;
  entry.state_hash = codec::state_hash(contract_);
  if (log_) {
    try {
      log_->append(entry);
    } catch (...) {
      // Memory is ahead of disk now; refuse all further writes.
      failed_ = true;
      throw;
    }
  }
  entries_.push_back(std::move(entry));
  return entries_.back();
}

ExecuteResult Node::handle_execute(const Address& sender, const ExecuteMsg& msg, TokenAmount attached) {
  std::unique_lock lock(mu_);
  if (failed_) throw std::runtime_error("node stopped after a log write failure");
  LogEntry entry;
  entry.tick = contract_.ledger().clock();
  entry.kind = "execute";
  entry.sender = sender.str();
  entry.message = codec::encode(msg);
  entry.attached = attached.to_string();

  Outcome outcome = contract_.execute(sender, msg, attached);
  entry.outcome = codec::encode(outcome, msg);
  json wire = entry.outcome;
  const LogEntry& written = record(std::move(entry));
  wire["sequence"] = written.sequence;
  return ExecuteResult{written.sequence, std::move(outcome), std::move(wire)};
}

AdminResult Node::admin_tick(Tick dt) {
  std::unique_lock lock(mu_);
  if (failed_) throw std::runtime_error("node stopped after a log write failure");
  LogEntry entry;
  entry.tick = contract_.ledger().clock();
  entry.kind = "tick";
  entry.message = {{"tick", {{"dt", dt}}}};
  auto rejection = apply_tick(contract_, dt);
  entry.outcome = admin_wire(0, rejection);
  entry.outcome.erase("sequence");
  const LogEntry& written = record(std::move(entry));
  json wire = admin_wire(written.sequence, rejection);
  wire["clock"] = contract_.ledger().clock();
  return AdminResult{written.sequence, rejection, std::move(wire)};
}

AdminResult Node::admin_faucet(const Address& addr, TokenAmount amount) {
  std::unique_lock lock(mu_);
  if (failed_) throw std::runtime_error("node stopped after a log write failure");
  LogEntry entry;
  entry.tick = contract_.ledger().clock();
  entry.kind = "faucet";
  entry.message = faucet_message(addr, amount);
  entry.attached = "0";
  auto rejection = apply_faucet(contract_, mode_, addr, amount);
  entry.outcome = admin_wire(0, rejection);
  entry.outcome.erase("sequence");
  const LogEntry& written = record(std::move(entry));
  json wire = admin_wire(written.sequence, rejection);
  if (!rejection) wire["balance"] = codec::amount(contract_.balance(addr));
  return AdminResult{written.sequence, rejection, std::move(wire)};
}

json Node::handle_query(const QueryMsg& query) const {
  std::shared_lock lock(mu_);
  return std::visit(
      [this](const auto& q) -> json {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, GetGoods>) {
          json goods = json::array();
          for (const auto& item : contract_.goods()) goods.push_back(codec::encode(item));
          return {{"goods", std::move(goods)}};
        } else if constexpr (std::is_same_v<T, GetOrders>) {
          json orders = json::array();
          for (const auto& s : contract_.orders()) orders.push_back(codec::encode(s));
          return {{"orders", std::move(orders)}};
        } else if constexpr (std::is_same_v<T, GetOrderDetail>) {
          return codec::encode(contract_.order(q.order_id));
        } else if constexpr (std::is_same_v<T, GetAddresses>) {
          json out = codec::encode(contract_.addresses(q.order_id));
          out["order_id"] = q.order_id;
          return out;
        } else if constexpr (std::is_same_v<T, GetBalance>) {
          return {{"addr", q.addr.str()}, {"balance", codec::amount(contract_.balance(q.addr))}};
        } else {
          return codec::encode(contract_.stats(q.addr), q.addr);
        }
      },
      query);
}

std::string Node::state_hash() const {
  std::shared_lock lock(mu_);
  return codec::state_hash(contract_);
}

std::uint64_t Node::last_sequence() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

std::pair<std::uint64_t, std::string> Node::head() const {
  std::shared_lock lock(mu_);
  return {entries_.size(), codec::state_hash(contract_)};
}

Contract Node::snapshot() const {
  std::shared_lock lock(mu_);
  return contract_;
}

std::vector<LogEntry> Node::entries() const {
  std::shared_lock lock(mu_);
  return entries_;
}

}  // namespace spender
