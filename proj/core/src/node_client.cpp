#include "spender/node_client.hpp"

#include <httplib.h>

#include <stdexcept>

#include "spender/codec.hpp"

namespace spender {

struct NodeClient::Impl {
  explicit Impl(const std::string& url) : client(url) {}
  httplib::Client client;
};

NodeClient::NodeClient(const std::string& base_url) : impl_(std::make_unique<Impl>(base_url)) {
  if (!impl_->client.is_valid()) throw std::runtime_error("invalid node url '" + base_url + "'");
  impl_->client.set_connection_timeout(5);
  impl_->client.set_read_timeout(30);
}

NodeClient::~NodeClient() = default;

namespace {

NodeClient::Reply to_reply(const httplib::Result& res, const std::string& path) {
  if (!res) throw std::runtime_error("node unreachable (" + httplib::to_string(res.error()) + ") on " + path);
  NodeClient::Reply r;
  r.status = res->status;
  try {
    r.body = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error&) {
    throw std::runtime_error("node returned a non-JSON body for " + path);
  }
  return r;
}

}  // namespace

NodeClient::Reply NodeClient::get(const std::string& path) { return to_reply(impl_->client.Get(path), path); }

NodeClient::Reply NodeClient::post(const std::string& path, const nlohmann::json& body) {
  return to_reply(impl_->client.Post(path, body.dump(), "application/json"), path);
}

NodeClient::Reply NodeClient::execute(const Address& sender, const ExecuteMsg& msg, TokenAmount funds) {
  return post("/v1/execute", {{"sender", sender.str()}, {"msg", codec::encode(msg)}, {"funds", codec::amount(funds)}});
}

std::string encode_path_segment(std::string_view segment) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : segment) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

}  // namespace spender
