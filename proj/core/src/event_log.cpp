#include "spender/event_log.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <system_error>

#include "spender/codec.hpp"

namespace spender {
namespace {

constexpr std::string_view kFormat = "spender-log/1";

[[noreturn]] void corrupt(const std::string& what) { throw Error(ErrorCode::CorruptLog, what); }

}  // namespace

nlohmann::json encode(const Genesis& g) {
  nlohmann::json accounts = nlohmann::json::object();
  for (const auto& [addr, bal] : g.accounts) accounts[addr.str()] = codec::amount(bal);
  return {{"gas_fee", codec::amount(g.gas_fee)},
          {"fee_sink", g.fee_sink.str()},
          {"contract_account", g.contract_account.str()},
          {"accounts", std::move(accounts)}};
}

Genesis decode_genesis(const nlohmann::json& j) {
  Genesis g;
  g.gas_fee = codec::decode_amount(j, "gas_fee");
  g.fee_sink = Address(codec::decode_string(j, "fee_sink"));
  g.contract_account = Address(codec::decode_string(j, "contract_account"));
  const auto& accounts = codec::field(j, "accounts");
  if (!accounts.is_object()) throw Error(ErrorCode::MalformedMessage, "genesis accounts must be an object");
  for (const auto& [k, v] : accounts.items()) {
    g.accounts.emplace(Address(k), codec::decode_amount(nlohmann::json{{"amount", v}}, "amount"));
  }
  return g;
}

nlohmann::json encode(const LogEntry& e) {
  return {{"sequence", e.sequence},
          {"tick", e.tick},
          {"kind", e.kind},
          {"sender", e.sender ? nlohmann::json(*e.sender) : nlohmann::json(nullptr)},
          {"message", e.message},
          {"attached", e.attached},
          {"outcome", e.outcome},
          {"state_hash", e.state_hash}};
}

LogEntry decode_log_entry(const nlohmann::json& j) {
  try {
    LogEntry e;
    e.sequence = codec::decode_u64(j, "sequence");
    e.tick = codec::decode_u64(j, "tick");
    e.kind = codec::decode_string(j, "kind");
    if (e.kind != "execute" && e.kind != "tick" && e.kind != "faucet") corrupt("unknown entry kind '" + e.kind + "'");
    const auto& sender = codec::field(j, "sender");
    if (sender.is_string()) e.sender = sender.get<std::string>();
    e.message = codec::field(j, "message");
    e.attached = codec::decode_amount(j, "attached").to_string();
    e.outcome = codec::field(j, "outcome");
    e.state_hash = codec::decode_string(j, "state_hash");
    return e;
  } catch (const Error& err) {
    if (err.code() == ErrorCode::CorruptLog) throw;
    corrupt(err.what());
  }
}

EventLog::EventLog(std::filesystem::path path, const Genesis& genesis, bool fsync)
    : path_(std::move(path)), fsync_(fsync) {
  fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) throw std::system_error(errno, std::generic_category(), "open " + path_.string());
  if (std::filesystem::file_size(path_) == 0) {
    nlohmann::json header{{"format", kFormat}, {"genesis", encode(genesis)}};
    write_line(header.dump());
  }
}

EventLog::~EventLog() {
  if (fd_ >= 0) ::close(fd_);
}

void EventLog::append(const LogEntry& entry) { write_line(encode(entry).dump()); }

void EventLog::write_line(const std::string& line) {
  std::string buf = line;
  buf.push_back('\n');
  const char* p = buf.data();
  std::size_t left = buf.size();
  while (left > 0) {
    ssize_t n = ::write(fd_, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw std::system_error(errno, std::generic_category(), "write " + path_.string());
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
  if (fsync_ && ::fsync(fd_) != 0) {
    throw std::system_error(errno, std::generic_category(), "fsync " + path_.string());
  }
}

std::optional<EventLog::Contents> EventLog::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line.empty()) return std::nullopt;

  Contents out;
  try {
    auto header = nlohmann::json::parse(line);
    if (codec::decode_string(header, "format") != kFormat) corrupt("unsupported log format");
    out.genesis = decode_genesis(codec::field(header, "genesis"));
  } catch (const nlohmann::json::exception& e) {
    corrupt(std::string("header: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CorruptLog) throw;
    corrupt(std::string("header: ") + e.what());
  }

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      corrupt("line " + std::to_string(lineno) + ": " + e.what());
    }
    LogEntry entry = decode_log_entry(j);
    std::uint64_t expected = out.entries.size() + 1;
    if (entry.sequence != expected) {
      corrupt("line " + std::to_string(lineno) + ": sequence " + std::to_string(entry.sequence) + ", expected " +
              std::to_string(expected));
    }
    out.entries.push_back(std::move(entry));
  }
  return out;
}

}  // namespace spender
