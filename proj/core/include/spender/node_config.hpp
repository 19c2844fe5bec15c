#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "spender/node.hpp"

namespace spender {

// Node settings. Sources are layered: built-in defaults, then a JSON config
// file, then SPENDER_* environment variables, then command-line flags (the
// last layer is applied by the caller through the setters below).
struct NodeConfig {
  std::filesystem::path log_path = "spender.log";
  std::string host = "127.0.0.1";
  int port = 8645;
  NodeMode mode = NodeMode::Sandbox;
  bool fsync = true;
  Genesis genesis;

  // "host:port"
  void set_listen(const std::string& listen);
  std::string listen() const { return host + ":" + std::to_string(port); }
  void set_gas_fee(const std::string& decimal);
  void set_mode(const std::string& name);

  // Overlays the keys present in a JSON config file. Throws ParseError.
  void merge_file(const std::filesystem::path& path);
  void merge_json(const nlohmann::json& j);
  // Reads SPENDER_LOG, SPENDER_LISTEN, SPENDER_GAS_FEE and SPENDER_MODE.
  using EnvLookup = std::function<std::optional<std::string>(const char*)>;
  void merge_env(const EnvLookup& lookup);
  void merge_process_env();

  NodeOptions options() const;
};

}  // namespace spender
