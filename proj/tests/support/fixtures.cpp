#include "fixtures.hpp"

#include <atomic>
#include <map>
#include <random>
#include <mutex>
#include <stdexcept>

namespace spender::testing {

Contract make_contract(std::uint64_t gas, std::initializer_list<std::pair<const char*, std::uint64_t>> accounts) {
  Ledger ledger(Address("fee-sink"), TokenAmount(gas));
  for (const auto& [name, balance] : accounts) ledger.create_account(Address(name), TokenAmount(balance));
  return Contract(std::move(ledger));
}

const crypto::KeyPair& key_for(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, crypto::KeyPair> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(name);
  if (it == cache.end()) {
    std::string seed = "test-key:" + name;
    auto kp = crypto::generate_keypair(
        crypto::kSealedEnvelopeV1,
        std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(seed.data()), seed.size()));
    it = cache.emplace(name, std::move(kp)).first;
  }
  return it->second;
}

crypto::SealedEnvelope seal_for(const crypto::KeyPair& recipient, std::initializer_list<std::string> lines) {
  return crypto::seal(crypto::DetailedAddress{lines}, recipient.public_key, recipient.scheme);
}

BidOrder bid_msg(OrderId order, std::uint64_t v_ship, std::uint64_t v_time, Tick promised, const std::string& shipper) {
  const auto& kp = key_for(shipper);
  return BidOrder{order, TokenAmount(v_ship), TokenAmount(v_time), promised, kp.public_key, kp.scheme};
}

namespace {

void must(const Outcome& o, const char* what) {
  if (!o.accepted()) {
    throw std::logic_error(std::string(what) + " rejected: " + std::string(to_string(o.rejection->code)) + " " +
                           o.rejection->detail);
  }
}

}  // namespace

OrderId drive_to_addresses_ready(Contract& c, const Lifecycle& l, const char* seller, const char* buyer) {
  auto posted = exec(c, seller, PostItem{"item", "", TokenAmount(l.v_item), "North"});
  must(posted, "post");
  auto bought = exec(c, buyer, Buy{*posted.value, "South"}, l.v_item);
  must(bought, "buy");
  OrderId id = *bought.value;
  for (const auto& [shipper, v_ship] : l.bids) {
    must(c.execute(Address(shipper), bid_msg(id, v_ship, l.v_time, l.promised, shipper), TokenAmount(l.v_item + l.v_time)),
         "bid");
  }
  const auto& [chosen_name, chosen_ship] = l.bids.at(l.chosen);
  must(exec(c, buyer, ChooseBid{id, l.chosen}, 2 * chosen_ship), "choose");
  const auto& kp = key_for(chosen_name);
  must(exec(c, buyer, UploadAddress{id, seal_for(kp, {"1 Buyer Road"})}), "buyer upload");
  must(exec(c, seller, UploadAddress{id, seal_for(kp, {"2 Seller Street"})}), "seller upload");
  return id;
}

TempDir::TempDir() {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("spender-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace spender::testing
