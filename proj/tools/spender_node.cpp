#include <CLI11.hpp>

#include <csignal>
#include <iostream>
#include <optional>
#include <thread>

#include "spender/codec.hpp"
#include "spender/http_api.hpp"
#include "spender/node_config.hpp"

namespace {

// Blocks SIGINT and SIGTERM in every thread and returns a waiter that stops
// the server when either arrives.
std::thread stop_on_signal(spender::HttpServer& server) {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  return std::thread([set, &server] {
    int sig = 0;
    sigwait(&set, &sig);
    server.stop();
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SPENDER node: escrow contract behind an HTTP API with an append-only log", "spender-node"};
  std::optional<std::string> config_path, log_path, listen, gas_fee, mode;
  bool no_fsync = false;
  bool replay_only = false;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--log", log_path, "Event log path (env SPENDER_LOG)");
  app.add_option("--listen", listen, "host:port (env SPENDER_LISTEN)");
  app.add_option("--gas-fee", gas_fee, "Flat fee per execute message (env SPENDER_GAS_FEE)");
  app.add_option("--mode", mode, "sandbox or assertion (env SPENDER_MODE)");
  app.add_flag("--no-fsync", no_fsync, "Skip fsync after each append");
  app.add_flag("--replay-only", replay_only, "Replay the log, print the state hash and exit");
  CLI11_PARSE(app, argc, argv);

  spender::NodeConfig cfg;
  try {
    if (config_path) cfg.merge_file(*config_path);
    cfg.merge_process_env();
    if (log_path) cfg.log_path = *log_path;
    if (listen) cfg.set_listen(*listen);
    if (gas_fee) cfg.set_gas_fee(*gas_fee);
    if (mode) cfg.set_mode(*mode);
    if (no_fsync) cfg.fsync = false;
  } catch (const spender::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (replay_only) {
      std::cout << spender::Node::replay_file(cfg.log_path) << '\n';
      return 0;
    }
    spender::Node node(cfg.options());
    spender::HttpServer server(node);
    int port = server.bind(cfg.host, cfg.port);
    std::thread waiter = stop_on_signal(server);
    std::cout << "spender-node " << spender::to_string(node.mode()) << " mode, log " << cfg.log_path.string()
              << ", sequence " << node.last_sequence() << ", listening on " << cfg.host << ':' << port << std::endl;
    server.serve();
    waiter.join();
  } catch (const std::exception& e) {
    std::cerr << "spender-node: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
