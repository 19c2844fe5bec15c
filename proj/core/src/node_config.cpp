#include "spender/node_config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace spender {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

}  // namespace

void NodeConfig::set_listen(const std::string& listen) {
  auto colon = listen.rfind(':');
  if (colon == std::string::npos || colon == 0) bad("listen address must be host:port, got '" + listen + "'");
  std::string_view digits(listen.data() + colon + 1, listen.size() - colon - 1);
  int p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || p < 0 || p > 65535) {
    bad("invalid port in '" + listen + "'");
  }
  host = listen.substr(0, colon);
  port = p;
}

void NodeConfig::set_gas_fee(const std::string& decimal) {
  try {
    genesis.gas_fee = TokenAmount::parse(decimal);
  } catch (const Error& e) {
    bad("gas fee: " + e.detail());
  }
}

void NodeConfig::set_mode(const std::string& name) {
  auto m = parse_node_mode(name);
  if (!m) bad("mode must be sandbox or assertion, got '" + name + "'");
  mode = *m;
}

void NodeConfig::merge_json(const nlohmann::json& j) {
  if (!j.is_object()) bad("config must be a JSON object");
  try {
    if (j.contains("log_path")) log_path = j.at("log_path").get<std::string>();
    if (j.contains("listen")) set_listen(j.at("listen").get<std::string>());
    if (j.contains("mode")) set_mode(j.at("mode").get<std::string>());
    if (j.contains("fsync")) fsync = j.at("fsync").get<bool>();
    if (j.contains("gas_fee")) {
      const auto& g = j.at("gas_fee");
      set_gas_fee(g.is_string() ? g.get<std::string>() : std::to_string(g.get<std::uint64_t>()));
    }
    if (j.contains("fee_sink")) genesis.fee_sink = Address(j.at("fee_sink").get<std::string>());
    if (j.contains("contract_account")) genesis.contract_account = Address(j.at("contract_account").get<std::string>());
    if (j.contains("accounts")) {
      const auto& accounts = j.at("accounts");
      if (!accounts.is_object()) bad("accounts must be an object");
      genesis.accounts.clear();
      for (const auto& [k, v] : accounts.items()) {
        genesis.accounts.insert_or_assign(
            Address(k), v.is_string() ? TokenAmount::parse(v.get<std::string>()) : TokenAmount(v.get<std::uint64_t>()));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("config: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    bad(std::string("config: ") + e.what());
  }
}

void NodeConfig::merge_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
  merge_json(j);
}

void NodeConfig::merge_env(const EnvLookup& lookup) {
  if (auto v = lookup("SPENDER_LOG")) log_path = *v;
  if (auto v = lookup("SPENDER_LISTEN")) set_listen(*v);
  if (auto v = lookup("SPENDER_GAS_FEE")) set_gas_fee(*v);
  if (auto v = lookup("SPENDER_MODE")) set_mode(*v);
}

void NodeConfig::merge_process_env() {
  merge_env([](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (v == nullptr) return std::nullopt;
    return std::string(v);
  });
}

NodeOptions NodeConfig::options() const {
  NodeOptions o;
  o.log_path = log_path;
  o.genesis = genesis;
  o.mode = mode;
  o.fsync = fsync;
  return o;
}

}  // namespace spender
