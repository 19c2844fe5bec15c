#pragma once

#include <nlohmann/json.hpp>

#include <memory>
#include <string>

#include "spender/messages.hpp"

namespace spender {

// Thin HTTP client for the node's wire API. Transport failures throw
// std::runtime_error; HTTP error statuses are returned, not thrown.
class NodeClient {
 public:
  struct Reply {
    int status = 0;
    nlohmann::json body;
  };

  // base_url like "http://127.0.0.1:8645"
  explicit NodeClient(const std::string& base_url);
  ~NodeClient();
  NodeClient(const NodeClient&) = delete;
  NodeClient& operator=(const NodeClient&) = delete;

  Reply get(const std::string& path);
  Reply post(const std::string& path, const nlohmann::json& body);

  Reply execute(const Address& sender, const ExecuteMsg& msg, TokenAmount funds);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Percent-encodes one URL path segment.
std::string encode_path_segment(std::string_view segment);

}  // namespace spender
