#include <benchmark/benchmark.h>

#include <string>

#include "spender/codec.hpp"
#include "spender/crypto.hpp"
#include "spender/node.hpp"

using namespace spender;

namespace {

Genesis bench_genesis() {
  Genesis g;
  g.gas_fee = TokenAmount(1);
  for (const char* name : {"seller", "buyer", "shipper"}) {
    g.accounts.emplace(Address(name), TokenAmount(1'000'000'000));
  }
  return g;
}

const crypto::KeyPair& shipper_key() {
  static const crypto::KeyPair kp = [] {
    std::string seed = "bench-shipper";
    return crypto::generate_keypair(crypto::kSealedEnvelopeV1,
                                    std::span(reinterpret_cast<const std::uint8_t*>(seed.data()), seed.size()));
  }();
  return kp;
}

// One full on-time order: eleven execute messages.
void run_order(Contract& c) {
  const Address seller("seller"), buyer("buyer"), shipper("shipper");
  const auto& kp = shipper_key();
  auto post = c.execute(seller, PostItem{"Lamp", "", TokenAmount(100), "Montreal"}, TokenAmount(0));
  auto buy = c.execute(buyer, Buy{*post.value, "Toronto"}, TokenAmount(100));
  OrderId id = *buy.value;
  c.execute(shipper, BidOrder{id, TokenAmount(8), TokenAmount(5), 10, kp.public_key, kp.scheme}, TokenAmount(105));
  c.execute(buyer, ChooseBid{id, 0}, TokenAmount(16));
  c.execute(buyer, UploadAddress{id, crypto::seal({{"1 Road"}}, kp.public_key, kp.scheme)}, TokenAmount(0));
  c.execute(seller, UploadAddress{id, crypto::seal({{"2 Street"}}, kp.public_key, kp.scheme)}, TokenAmount(0));
  c.execute(seller, Confirm{id}, TokenAmount(0));
  c.execute(shipper, Confirm{id}, TokenAmount(0));
  c.execute(shipper, Confirm{id}, TokenAmount(0));
  c.execute(buyer, Confirm{id}, TokenAmount(0));
  c.execute(buyer, SubmitReview{id, 5, "ok"}, TokenAmount(0));
}

void BM_OrderLifecycle(benchmark::State& state) {
  Contract c = Node::genesis_state(bench_genesis());
  for (auto _ : state) run_order(c);
  state.SetItemsProcessed(state.iterations() * 11);
}
BENCHMARK(BM_OrderLifecycle);

void BM_RejectedMessage(benchmark::State& state) {
  Contract c = Node::genesis_state(bench_genesis());
  for (auto _ : state) benchmark::DoNotOptimize(c.execute(Address("buyer"), Confirm{42}, TokenAmount(0)));
}
BENCHMARK(BM_RejectedMessage);

void BM_Seal(benchmark::State& state) {
  const auto& kp = shipper_key();
  crypto::DetailedAddress addr{{"88 Queen St W", "Unit 4", "Toronto ON M5H 2N2"}};
  for (auto _ : state) benchmark::DoNotOptimize(crypto::seal(addr, kp.public_key, kp.scheme));
}
BENCHMARK(BM_Seal);

void BM_Open(benchmark::State& state) {
  const auto& kp = shipper_key();
  auto env = crypto::seal({{"88 Queen St W", "Unit 4", "Toronto ON M5H 2N2"}}, kp.public_key, kp.scheme);
  for (auto _ : state) benchmark::DoNotOptimize(crypto::open(env, kp));
}
BENCHMARK(BM_Open);

void BM_StateHash(benchmark::State& state) {
  Contract c = Node::genesis_state(bench_genesis());
  for (int64_t i = 0; i < state.range(0); ++i) run_order(c);
  for (auto _ : state) benchmark::DoNotOptimize(codec::state_hash(c));
}
BENCHMARK(BM_StateHash)->Arg(1)->Arg(10)->Arg(100);

void BM_Replay(benchmark::State& state) {
  Node node(NodeOptions{{}, bench_genesis(), NodeMode::Sandbox, false});
  const Address seller("seller"), buyer("buyer");
  for (int64_t i = 0; i < state.range(0); ++i) {
    auto post = node.handle_execute(seller, PostItem{"Lamp", "", TokenAmount(100), "X"}, TokenAmount(0));
    node.handle_execute(buyer, Buy{*post.outcome.value, "Y"}, TokenAmount(100));
  }
  auto entries = node.entries();
  for (auto _ : state) benchmark::DoNotOptimize(Node::replay(node.genesis(), entries));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(entries.size()));
}
BENCHMARK(BM_Replay)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
