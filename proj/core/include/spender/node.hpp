#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "spender/contract.hpp"
#include "spender/event_log.hpp"
#include "spender/messages.hpp"

namespace spender {

enum class NodeMode {
  Sandbox,    // faucet enabled
  Assertion,  // faucet disabled; genesis is the only mint
};

std::string_view to_string(NodeMode m) noexcept;
std::optional<NodeMode> parse_node_mode(std::string_view s) noexcept;

struct NodeOptions {
  // Empty path keeps the log in memory only (tests, benchmarks).
  std::filesystem::path log_path;
  Genesis genesis;
  NodeMode mode = NodeMode::Sandbox;
  bool fsync = true;
};

struct ExecuteResult {
  std::uint64_t sequence = 0;
  Outcome outcome;
  nlohmann::json wire;  // canonical response body
};

struct AdminResult {
  std::uint64_t sequence = 0;
  std::optional<Rejection> rejection;
  nlohmann::json wire;
};

// Event-sourced node: the log is the source of truth and the state is a fold
// over it. Execute and admin messages are applied one at a time under an
// exclusive lock and appended (write-ahead) before the call returns; queries
// take a shared lock and never touch the log.
class Node {
 public:
  // Replays an existing log (its header genesis wins over options.genesis),
  // or starts a new one. Throws CorruptLog if replay fails.
  explicit Node(NodeOptions options);
  ~Node();

  ExecuteResult handle_execute(const Address& sender, const ExecuteMsg& msg, TokenAmount attached);
  nlohmann::json handle_query(const QueryMsg& query) const;  // throws UnknownOrder/UnknownAddress
  AdminResult admin_tick(Tick dt);
  AdminResult admin_faucet(const Address& addr, TokenAmount amount);

  std::string state_hash() const;
  std::uint64_t last_sequence() const;
  // Sequence and hash read under one lock.
  std::pair<std::uint64_t, std::string> head() const;
  NodeMode mode() const noexcept { return mode_; }
  const Genesis& genesis() const noexcept { return genesis_; }
  Contract snapshot() const;
  // In-memory copy of every entry applied so far.
  std::vector<LogEntry> entries() const;

  // Folds a log from genesis, checking each recorded outcome and state hash.
  // Returns the final state. Throws CorruptLog on any divergence.
  static Contract replay(const Genesis& genesis, const std::vector<LogEntry>& entries);
  static std::string replay_file(const std::filesystem::path& path);
  static Contract genesis_state(const Genesis& genesis);

 private:
  LogEntry& record(LogEntry entry);

  mutable std::shared_mutex mu_;
  Genesis genesis_;
  NodeMode mode_;
  Contract contract_;
  std::vector<LogEntry> entries_;
  std::unique_ptr<EventLog> log_;
  bool failed_ = false;
};

}  // namespace spender
