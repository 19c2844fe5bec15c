#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "fixtures.hpp"
#include "spender/http_api.hpp"
#include "spender/keystore.hpp"
#include "spender/node.hpp"
#include "spender/node_client.hpp"
#include "spender/wallet_cli.hpp"

using namespace spender;
using namespace spender::testing;
using nlohmann::json;

namespace {

Genesis genesis() {
  Genesis g;
  g.gas_fee = TokenAmount(1);
  for (const char* name : {"seller", "buyer", "shipper"}) g.accounts.emplace(Address(name), TokenAmount(1000));
  return g;
}

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

class WalletTest : public ::testing::Test {
 protected:
  void SetUp() override {
    port_ = server_.bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_.serve(); });
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }

  Invocation run(const std::string& as, std::vector<std::string> args) {
    std::ostringstream out, err;
    std::string url = "http://127.0.0.1:" + std::to_string(port_);
    std::string keystore = (dir_ / "keystore.json").string();
    auto env = [&](const char* name) -> std::optional<std::string> {
      std::string_view n(name);
      if (n == "SPENDER_NODE") return url;
      if (n == "SPENDER_KEYSTORE") return keystore;
      if (n == "SPENDER_ADDRESS" && !as.empty()) return as;
      return std::nullopt;
    };
    int code = run_wallet(args, out, err, env);
    return {code, out.str(), err.str()};
  }

  // Posts, buys, bids with a fresh key, chooses and uploads both addresses.
  void drive_to_addresses_ready() {
    ASSERT_EQ(run("seller", {"seller", "post", "--title", "Lamp", "--price", "100", "--obscured", "Montreal"}).code, 0);
    ASSERT_EQ(run("buyer", {"buyer", "buy", "--item", "1", "--deposit", "100", "--obscured", "Toronto"}).code, 0);
    ASSERT_EQ(run("shipper", {"shipper", "keygen", "--key", "main"}).code, 0);
    Invocation bid = run("shipper", {"shipper", "bid", "--order", "1", "--ship", "8", "--time-bond", "5", "--promised", "10",
                              "--key", "main", "--deposit", "105"});
    ASSERT_EQ(bid.code, 0) << bid.err;
    ASSERT_EQ(run("buyer", {"buyer", "choose", "--order", "1", "--bid", "0", "--deposit", "16"}).code, 0);
    Invocation up = run("buyer", {"buyer", "upload-address", "--order", "1", "--line", "77 Private Lane", "--line", "Unit 9"});
    ASSERT_EQ(up.code, 0) << up.err;
    ASSERT_EQ(run("seller", {"seller", "upload-address", "--order", "1", "--line", "5 Hidden Court"}).code, 0);
  }

  std::vector<HttpServer::Exchange> exchanges() {
    std::lock_guard lock(mu_);
    return seen_;
  }

  TempDir dir_;
  Node node_{NodeOptions{{}, genesis(), NodeMode::Sandbox, false}};
  std::mutex mu_;
  std::vector<HttpServer::Exchange> seen_;
  HttpServer server_{node_, [this](const HttpServer::Exchange& e) {
                       std::lock_guard lock(mu_);
                       seen_.push_back(e);
                     }};
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST_F(WalletTest, PostAndBuyPrintNewIds) {
  Invocation post = run("seller", {"seller", "post", "--title", "Lamp", "--price", "100", "--obscured", "Montreal"});
  EXPECT_EQ(post.code, kExitOk) << post.err;
  EXPECT_EQ(post.out, "item_id 1 (sequence 1)\n");
  Invocation buy = run("buyer", {"buyer", "buy", "--item", "1", "--deposit", "100", "--obscured", "Toronto"});
  EXPECT_EQ(buy.code, kExitOk) << buy.err;
  EXPECT_EQ(buy.out, "order_id 1 (sequence 2)\n");
}

TEST_F(WalletTest, StructuredOutputIsTheWireBody) {
  Invocation post = run("seller", {"--output", "structured", "seller", "post", "--title", "Lamp", "--price", "100",
                            "--obscured", "Montreal"});
  ASSERT_EQ(post.code, kExitOk);
  json body = json::parse(post.out);
  EXPECT_EQ(body["result"]["item_id"], 1);
  EXPECT_EQ(body["sequence"], 1);
  Invocation balance = run("seller", {"--output", "structured", "balance"});
  EXPECT_EQ(json::parse(balance.out)["balance"], "999");
}

TEST_F(WalletTest, ShipperDecryptsBothAddressesLocally) {
  drive_to_addresses_ready();
  Invocation addresses = run("shipper", {"shipper", "addresses", "--order", "1", "--key", "main"});
  ASSERT_EQ(addresses.code, kExitOk) << addresses.err;
  EXPECT_NE(addresses.out.find("77 Private Lane"), std::string::npos) << addresses.out;
  EXPECT_NE(addresses.out.find("Unit 9"), std::string::npos);
  EXPECT_NE(addresses.out.find("5 Hidden Court"), std::string::npos);

  std::filesystem::path other = dir_ / "other.json";
  Keystore(other).generate("main", crypto::kSealedEnvelopeV1);
  std::ostringstream out, err;
  std::string url = "http://127.0.0.1:" + std::to_string(port_);
  int code = run_wallet({"--keystore", other.string(), "--node", url, "shipper", "addresses", "--order", "1", "--key",
                         "main"},
                        out, err, [](const char*) { return std::nullopt; });
  EXPECT_EQ(code, kExitRejected);
  EXPECT_NE(err.str().find("DecryptionFailure"), std::string::npos) << err.str();
}

TEST_F(WalletTest, PlaintextAndPrivateKeysNeverReachTheNode) {
  drive_to_addresses_ready();
  run("shipper", {"shipper", "addresses", "--order", "1", "--key", "main"});
  std::string private_b64 = crypto::to_base64(Keystore(dir_ / "keystore.json").get("main").private_key);
  auto all = exchanges();
  ASSERT_FALSE(all.empty());
  for (const auto& e : all) {
    for (const std::string* text : {&e.request_body, &e.response_body, &e.path}) {
      EXPECT_EQ(text->find("Private Lane"), std::string::npos) << e.path;
      EXPECT_EQ(text->find("Hidden Court"), std::string::npos) << e.path;
      EXPECT_EQ(text->find(private_b64), std::string::npos) << e.path;
    }
  }
}

TEST_F(WalletTest, RejectionIsSurfacedWithExitCode) {
  run("seller", {"seller", "post", "--title", "Lamp", "--price", "100", "--obscured", "Montreal"});
  Invocation r = run("buyer", {"seller", "reset-price", "--item", "1", "--price", "80"});
  EXPECT_EQ(r.code, kExitRejected);
  EXPECT_EQ(r.err.rfind("rejected: NotSeller: ", 0), 0u) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST_F(WalletTest, UsageAndTransportFailures) {
  EXPECT_EQ(run("", {"seller", "post", "--title", "x", "--price", "1", "--obscured", "y"}).code, kExitUsage);
  EXPECT_EQ(run("seller", {"seller", "post", "--title", "x"}).code, kExitUsage);
  EXPECT_EQ(run("seller", {"fly"}).code, kExitUsage);
  EXPECT_EQ(run("seller", {"seller", "post", "--title", "x", "--price", "-3", "--obscured", "y"}).code, kExitUsage);
  std::ostringstream out, err;
  int code = run_wallet({"--node", "http://127.0.0.1:1", "--as", "seller", "balance"}, out, err,
                        [](const char*) { return std::nullopt; });
  EXPECT_EQ(code, kExitTransport);
}

TEST_F(WalletTest, TranscriptReplaysToTheSameHash) {
  drive_to_addresses_ready();
  run("seller", {"seller", "confirm-shipped", "--order", "1"});
  run("shipper", {"shipper", "confirm-shipped", "--order", "1"});
  run("", {"tick", "--dt", "4"});
  run("shipper", {"shipper", "confirm-delivered", "--order", "1"});
  run("buyer", {"buyer", "confirm-received", "--order", "1"});
  Invocation review = run("buyer", {"buyer", "review", "--order", "1", "--rating", "5", "--text", "fine"});
  ASSERT_EQ(review.code, kExitOk) << review.err;
  run("buyer", {"faucet", "--amount", "3"});

  Node fresh(NodeOptions{{}, genesis(), NodeMode::Sandbox, false});
  HttpApi api(fresh);
  for (const auto& e : exchanges()) {
    if (e.method != "POST") continue;
    HttpResponse r = api.handle(e.method, e.path, e.request_body);
    EXPECT_EQ(r.status, e.status);
    EXPECT_EQ(json::parse(r.body), json::parse(e.response_body)) << e.path;
  }
  EXPECT_EQ(fresh.state_hash(), node_.state_hash());
  EXPECT_EQ(node_.snapshot().order(1).state, OrderState::Completed);
}

TEST_F(WalletTest, EachExecuteCommandSendsOneExecute) {
  drive_to_addresses_ready();
  std::size_t executes = 0;
  for (const auto& e : exchanges()) executes += e.path == "/v1/execute";
  EXPECT_EQ(executes, 6u);
  EXPECT_EQ(node_.last_sequence(), 6u);
}

TEST(Keystore, GeneratesPersistsAndProtects) {
  TempDir dir;
  std::filesystem::path p = dir / "ks.json";
  Keystore ks(p);
  EXPECT_TRUE(ks.labels().empty());
  const auto& kp = ks.generate("a", crypto::kSealedEnvelopeV1);
  auto perms = std::filesystem::status(p).permissions();
  EXPECT_EQ(perms & std::filesystem::perms::all, std::filesystem::perms::owner_read | std::filesystem::perms::owner_write);
  Keystore again(p);
  EXPECT_EQ(again.get("a"), kp);
  EXPECT_EQ(again.labels(), std::vector<std::string>{"a"});
  EXPECT_ANY_THROW(again.generate("a", crypto::kSealedEnvelopeV1));
  try {
    again.get("missing");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedKey);
  }
  std::ifstream in(p);
  EXPECT_EQ(json::parse(in)["format"], "spender-keystore/1");
}

TEST(PathSegments, PercentEncoding) {
  EXPECT_EQ(encode_path_segment("abc-_.~1"), "abc-_.~1");
  EXPECT_EQ(encode_path_segment("a b/c"), "a%20b%2Fc");
}
