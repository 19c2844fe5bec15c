#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spender/types.hpp"

namespace spender {

// Everything needed to rebuild the state before the first log entry.
struct Genesis {
  TokenAmount gas_fee{1};
  Address fee_sink{"fee-sink"};
  Address contract_account{"spender-contract"};
  std::map<Address, TokenAmount> accounts;

  friend bool operator==(const Genesis&, const Genesis&) = default;
};

nlohmann::json encode(const Genesis& g);
Genesis decode_genesis(const nlohmann::json& j);

// One applied message. Entries are written once and never modified.
struct LogEntry {
  std::uint64_t sequence = 0;
  Tick tick = 0;               // clock when the message was applied
  std::string kind;            // "execute", "tick" or "faucet"
  std::optional<std::string> sender;
  nlohmann::json message;      // canonical tagged message
  std::string attached = "0";  // decimal amount
  nlohmann::json outcome;      // accepted receipt or rejection
  std::string state_hash;      // hash after applying this entry
};

nlohmann::json encode(const LogEntry& e);
LogEntry decode_log_entry(const nlohmann::json& j);  // throws CorruptLog

// Newline-delimited log file. The first line is a header carrying the
// genesis; every following line is one LogEntry. Appends are flushed and
// fsync'd before append() returns.
class EventLog {
 public:
  struct Contents {
    Genesis genesis;
    std::vector<LogEntry> entries;
  };

  // Opens for appending, writing a header if the file is new or empty.
  EventLog(std::filesystem::path path, const Genesis& genesis, bool fsync = true);
  ~EventLog();
  EventLog(const EventLog&) = delete;
  EventLog& operator=(const EventLog&) = delete;

  void append(const LogEntry& entry);
  const std::filesystem::path& path() const noexcept { return path_; }

  // nullopt when the file is absent or empty. Throws CorruptLog on a bad
  // header, an unparseable line or a sequence gap.
  static std::optional<Contents> read(const std::filesystem::path& path);

 private:
  void write_line(const std::string& line);

  std::filesystem::path path_;
  int fd_ = -1;
  bool fsync_;
};

}  // namespace spender
