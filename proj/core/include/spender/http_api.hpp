#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "spender/node.hpp"

namespace spender {

struct HttpResponse {
  int status = 200;
  std::string body;  // canonical JSON
};

// Routes the wire API onto a Node without any transport:
//   POST /v1/execute            {"sender", "msg", "funds"}
//   GET  /v1/query/goods | orders | order/{id} | addresses/{id}
//                | balance/{addr} | stats/{addr}
//   GET  /v1/state_hash
//   POST /v1/admin/tick         {"dt"}
//   POST /v1/admin/faucet       {"addr", "amount"}
// Contract rejections of an execute are 200 with "accepted": false because
// they were logged and charged gas. Undecodable requests are 400, unknown
// orders, items, accounts and routes are 404.
class HttpApi {
 public:
  explicit HttpApi(Node& node) : node_(node) {}

  HttpResponse handle(std::string_view method, std::string_view path, std::string_view body) const;

 private:
  HttpResponse execute(std::string_view body) const;
  HttpResponse query(std::string_view rest) const;
  HttpResponse admin(std::string_view op, std::string_view body) const;

  Node& node_;
};

// Blocking HTTP server bound to one Node. Every exchange is reported to the
// observer, if any, after the response is produced.
class HttpServer {
 public:
  struct Exchange {
    std::string method;
    std::string path;
    std::string request_body;
    int status;
    std::string response_body;
  };
  using Observer = std::function<void(const Exchange&)>;

  explicit HttpServer(Node& node, Observer observer = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds; port 0 picks a free port. Returns the bound port or throws.
  int bind(const std::string& host, int port);
  // Serves until stop() is called from another thread.
  void serve();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace spender
