#include "spender/http_api.hpp"

#include <httplib.h>

#include <charconv>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "spender/codec.hpp"

namespace spender {
namespace {

using nlohmann::json;

HttpResponse error_response(int status, ErrorCode code, const std::string& detail) {
  return {status, json{{"error", codec::encode(Rejection{code, detail})}}.dump()};
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownOrder:
    case ErrorCode::UnknownItem:
    case ErrorCode::UnknownAddress:
      return 404;
    default:
      return 400;
  }
}

std::optional<std::uint64_t> parse_id(std::string_view s) {
  std::uint64_t v = 0;
  if (s.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

json parse_body(std::string_view body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedMessage, std::string("request body: ") + e.what());
  }
}

}  // namespace

HttpResponse HttpApi::handle(std::string_view method, std::string_view path, std::string_view body) const {
  try {
    if (path == "/v1/execute") {
      if (method != "POST") return error_response(405, ErrorCode::MalformedMessage, "use POST");
      return execute(body);
    }
    if (path == "/v1/state_hash") {
      if (method != "GET") return error_response(405, ErrorCode::MalformedMessage, "use GET");
      auto [seq, hash] = node_.head();
      return {200, json{{"sequence", seq}, {"state_hash", hash}}.dump()};
    }
    constexpr std::string_view kQuery = "/v1/query/";
    if (path.starts_with(kQuery)) {
      if (method != "GET") return error_response(405, ErrorCode::MalformedMessage, "use GET");
      return query(path.substr(kQuery.size()));
    }
    constexpr std::string_view kAdmin = "/v1/admin/";
    if (path.starts_with(kAdmin)) {
      if (method != "POST") return error_response(405, ErrorCode::MalformedMessage, "use POST");
      return admin(path.substr(kAdmin.size()), body);
    }
    return error_response(404, ErrorCode::MalformedMessage, "no route for " + std::string(path));
  } catch (const Error& e) {
    return error_response(status_for(e.code()), e.code(), e.detail());
  } catch (const json::exception& e) {
    return error_response(400, ErrorCode::MalformedMessage, e.what());
  }
}

HttpResponse HttpApi::execute(std::string_view body) const {
  json req = parse_body(body);
  if (!req.is_object()) throw Error(ErrorCode::MalformedMessage, "request body must be an object");
  Address sender(codec::decode_string(req, "sender"));
  ExecuteMsg msg = codec::decode_execute(codec::field(req, "msg"));
  TokenAmount funds = req.contains("funds") ? codec::decode_amount(req, "funds") : TokenAmount{};
  ExecuteResult r = node_.handle_execute(sender, msg, funds);
  return {200, r.wire.dump()};
}

HttpResponse HttpApi::query(std::string_view rest) const {
  auto slash = rest.find('/');
  std::string_view kind = rest.substr(0, slash);
  std::string_view arg = slash == std::string_view::npos ? std::string_view{} : rest.substr(slash + 1);
  bool has_arg = slash != std::string_view::npos;

  auto id = [&]() -> OrderId {
    auto v = parse_id(arg);
    if (!v) throw Error(ErrorCode::MalformedMessage, "order id must be a non-negative integer");
    return *v;
  };

  QueryMsg q;
  if (kind == "goods" && !has_arg) {
    q = GetGoods{};
  } else if (kind == "orders" && !has_arg) {
    q = GetOrders{};
  } else if (kind == "order" && has_arg) {
    q = GetOrderDetail{id()};
  } else if (kind == "addresses" && has_arg) {
    q = GetAddresses{id()};
  } else if (kind == "balance" && has_arg) {
    q = GetBalance{Address(std::string(arg))};
  } else if (kind == "stats" && has_arg) {
    q = GetStats{Address(std::string(arg))};
  } else {
    return error_response(404, ErrorCode::MalformedMessage, "unknown query '" + std::string(rest) + "'");
  }
  return {200, node_.handle_query(q).dump()};
}

HttpResponse HttpApi::admin(std::string_view op, std::string_view body) const {
  json req = parse_body(body.empty() ? std::string_view("{}") : body);
  if (!req.is_object()) throw Error(ErrorCode::MalformedMessage, "request body must be an object");
  if (op == "tick") {
    return {200, node_.admin_tick(codec::decode_u64(req, "dt")).wire.dump()};
  }
  if (op == "faucet") {
    Address addr(codec::decode_string(req, "addr"));
    return {200, node_.admin_faucet(addr, codec::decode_amount(req, "amount")).wire.dump()};
  }
  return error_response(404, ErrorCode::MalformedMessage, "unknown admin operation '" + std::string(op) + "'");
}

struct HttpServer::Impl {
  Impl(Node& node, Observer obs) : api(node), observer(std::move(obs)) {}

  HttpApi api;
  Observer observer;
  httplib::Server server;
  // stop() may race with serve() starting up; these close that window.
  std::mutex mu;
  bool stop_requested = false;
  bool in_serve = false;
};

HttpServer::HttpServer(Node& node, Observer observer) : impl_(std::make_unique<Impl>(node, std::move(observer))) {
  auto route = [impl = impl_.get()](const httplib::Request& req, httplib::Response& res) {
    HttpResponse out = impl->api.handle(req.method, req.path, req.body);
    res.status = out.status;
    res.set_content(out.body, "application/json");
    if (impl->observer) impl->observer(Exchange{req.method, req.path, req.body, out.status, out.body});
  };
  impl_->server.Get(R"(/.*)", route);
  impl_->server.Post(R"(/.*)", route);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::serve() {
  {
    std::lock_guard lock(impl_->mu);
    if (impl_->stop_requested) return;
    impl_->in_serve = true;
  }
  bool ok = impl_->server.listen_after_bind();
  bool stopping = false;
  {
    std::lock_guard lock(impl_->mu);
    impl_->in_serve = false;
    stopping = impl_->stop_requested;
  }
  if (!ok && !stopping) throw std::runtime_error("server stopped with an error");
}

void HttpServer::stop() {
  for (;;) {
    {
      std::lock_guard lock(impl_->mu);
      impl_->stop_requested = true;
      if (!impl_->in_serve) return;
      if (impl_->server.is_running()) {
        impl_->server.stop();
        return;
      }
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }
}

bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace spender
