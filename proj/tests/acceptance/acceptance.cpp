// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>

#include "fixtures.hpp"
#include "fund_flow_oracle.hpp"
#include "random_session.hpp"
#include "small_model.hpp"
#include "spender/codec.hpp"
#include "spender/harness.hpp"
#include "spender/node.hpp"

using namespace spender;
using namespace spender::testing;
namespace oracle = spender::testing::oracle;

namespace {

struct Verdict {
  bool pass = false;
  std::string summary;
};

std::int64_t signed_delta(TokenAmount after, TokenAmount before) {
  return static_cast<std::int64_t>(after.value()) - static_cast<std::int64_t>(before.value());
}

// 1. Settlement golden table.
Verdict settlement_golden_table() {
  std::mt19937_64 rng(0x5e771e);
  std::uniform_int_distribution<std::uint64_t> value(1, 1'000'000);
  int matched = 0;
  std::string first_failure;
  const int trials = 1000;
  for (int i = 0; i < trials; ++i) {
    oracle::Terms t{static_cast<std::int64_t>(value(rng)), static_cast<std::int64_t>(value(rng)),
                    static_cast<std::int64_t>(value(rng)), i % 2 == 0};
    const std::uint64_t gas = 1;
    Contract c = make_contract(gas, {{"seller", 10'000'000}, {"buyer", 10'000'000}, {"shipper", 10'000'000}});
    Lifecycle l;
    l.v_item = static_cast<std::uint64_t>(t.v_item);
    l.v_time = static_cast<std::uint64_t>(t.v_time);
    l.promised = 10;
    l.bids = {{"shipper", static_cast<std::uint64_t>(t.v_ship)}};
    const Ledger start = c.ledger();
    OrderId id = drive_to_addresses_ready(c, l);
    exec(c, "seller", Confirm{id});
    exec(c, "shipper", Confirm{id});
    c.ledger().advance_clock(t.on_time ? 10 : 11);
    exec(c, "shipper", Confirm{id});
    const Ledger before = c.ledger();
    Outcome settled = exec(c, "buyer", Confirm{id});

    // Payout legs of the settling message, gas leg excluded.
    std::map<std::string, std::int64_t> paid;
    for (const auto& tr : settled.receipt.transfers) {
      if (tr.from == c.contract_account()) paid[tr.to.str()] += static_cast<std::int64_t>(tr.amount.value());
    }
    std::map<std::string, std::int64_t> want;
    for (const auto& leg : oracle::confirm_received(t)) {
      want[leg.to == oracle::Role::Buyer ? "buyer" : leg.to == oracle::Role::Seller ? "seller" : "shipper"] +=
          leg.amount;
    }
    auto whole = oracle::net(oracle::lifecycle(t, oracle::Ending::Completed));
    bool ok = settled.accepted() && paid == want &&
              signed_delta(c.balance(addr("buyer")), before.balance(addr("buyer"))) == want["buyer"] - 1 &&
              signed_delta(c.balance(addr("seller")), before.balance(addr("seller"))) == want["seller"] &&
              signed_delta(c.balance(addr("shipper")), before.balance(addr("shipper"))) == want["shipper"] &&
              signed_delta(c.balance(addr("buyer")), start.balance(addr("buyer"))) ==
                  whole[oracle::Role::Buyer] - 4 &&
              signed_delta(c.balance(addr("seller")), start.balance(addr("seller"))) ==
                  whole[oracle::Role::Seller] - 3 &&
              signed_delta(c.balance(addr("shipper")), start.balance(addr("shipper"))) ==
                  whole[oracle::Role::Shipper] - 3 &&
              c.order(id).escrow.is_zero();
    if (ok) {
      ++matched;
    } else if (first_failure.empty()) {
      std::ostringstream os;
      os << "; first mismatch at v_item=" << t.v_item << " v_ship=" << t.v_ship << " v_time=" << t.v_time
         << (t.on_time ? " on time" : " late");
      first_failure = os.str();
    }
  }
  return {matched == trials, std::to_string(matched) + "/" + std::to_string(trials) +
                                 " randomized tuples (on-time and late) settle exactly" + first_failure};
}

// 2. Terminal drain and conservation under random valid and invalid messages.
Verdict conservation_fuzz() {
  const int sequences = 10'000;
  std::uint64_t violations = 0, steps = 0, accepted = 0;
  std::map<OrderState, std::uint64_t> terminal_by_state;
  std::string first;
  World world;
  for (int s = 0; s < sequences; ++s) {
    SessionGenerator gen(0xF0220000ULL + static_cast<std::uint64_t>(s), world);
    Contract c = world.contract();
    const TokenAmount supply = c.ledger().total_supply();
    std::mt19937_64 len_rng(static_cast<std::uint64_t>(s));
    int depth = std::uniform_int_distribution<int>(1, 30)(len_rng);
    for (int i = 0; i < depth; ++i) {
      Action a = gen.next(c);
      Outcome out = apply(c, a);
      ++steps;
      if (a.kind == Action::Kind::Execute && out.accepted()) ++accepted;
      TokenAmount sum_escrow;
      std::uint64_t sum_balances = 0;
      for (const auto& [_, bal] : c.ledger().accounts()) sum_balances += bal.value();
      bool ok = c.ledger().total_supply() == supply && sum_balances == supply.value();
      for (const auto& [id, o] : c.all_orders()) {
        sum_escrow += o.escrow;
        if (is_terminal(o.state) && !o.escrow.is_zero()) ok = false;
      }
      ok = ok && c.balance(c.contract_account()) == sum_escrow;
      if (!ok) {
        ++violations;
        if (first.empty()) first = "; first violation in sequence " + std::to_string(s) + " step " + std::to_string(i);
      }
    }
    for (const auto& [_, o] : c.all_orders()) {
      if (is_terminal(o.state)) ++terminal_by_state[o.state];
    }
  }
  // Each terminal state must actually be drained, not merely never reached.
  std::string reached;
  std::uint64_t terminal_seen = 0;
  for (auto [state, n] : terminal_by_state) {
    terminal_seen += n;
    reached += (reached.empty() ? "" : ", ") + std::string(to_string(state)) + " " + std::to_string(n);
  }
  return {violations == 0 && terminal_by_state.size() == 4,
          std::to_string(sequences) + " sequences, " + std::to_string(steps) + " steps (" + std::to_string(accepted) +
              " accepted), " + std::to_string(terminal_seen) + " terminal orders (" + reached + "), " +
              std::to_string(violations) + " violations" + first};
}

// 3. Small-model exhaustive check.
Verdict small_model_check() {
  auto r = small_model::explore(8);
  std::string summary = "depth " + std::to_string(r.depth) + ": " + std::to_string(r.concrete_states) +
                        " concrete states, " + std::to_string(r.transitions) + " transitions checked, " +
                        std::to_string(r.concrete_abstract_states) + " abstract states reached vs " +
                        std::to_string(r.oracle_states) + " in the hand-written graph";
  if (!r.mismatches.empty()) summary += "; " + r.mismatches.front();
  return {r.passed(), summary};
}

// 4. Permission matrix.
struct Stage {
  Contract c;
  OrderId order = 0;
  ItemId item = 0;
};

// Builds a world in which `msg` is valid for its owner. Roles: seller, buyer,
// chosen shipper ("ship_a"), losing bidder ("ship_b"), outsider.
Stage stage_at(OrderState target) {
  Stage s{make_contract(1, {{"seller", 10'000}, {"buyer", 10'000}, {"ship_a", 10'000}, {"ship_b", 10'000},
                            {"outsider", 10'000}})};
  auto posted = exec(s.c, "seller", PostItem{"item", "", TokenAmount(100), "North"});
  s.item = *posted.value;
  auto bought = exec(s.c, "buyer", Buy{s.item, "South"}, 100);
  s.order = *bought.value;
  exec(s.c, "ship_a", bid_msg(s.order, 8, 5, 10, "ship_a"), 105);
  exec(s.c, "ship_b", bid_msg(s.order, 9, 5, 10, "ship_b"), 105);
  if (target == OrderState::Created) return s;
  exec(s.c, "buyer", ChooseBid{s.order, 0}, 16);
  if (target == OrderState::BidChosen) return s;
  const auto& kp = key_for("ship_a");
  exec(s.c, "buyer", UploadAddress{s.order, seal_for(kp, {"b"})});
  exec(s.c, "seller", UploadAddress{s.order, seal_for(kp, {"s"})});
  if (target == OrderState::AddressesReady) return s;
  exec(s.c, "seller", Confirm{s.order});
  exec(s.c, "ship_a", Confirm{s.order});
  if (target == OrderState::InTransit) return s;
  exec(s.c, "ship_a", Confirm{s.order});
  if (target == OrderState::Delivered) return s;
  if (target == OrderState::Returning) {
    exec(s.c, "buyer", ItemUnsatisfied{s.order});
    return s;
  }
  exec(s.c, "buyer", Confirm{s.order});
  return s;  // Completed
}

struct Row {
  std::string name;
  std::function<Stage()> stage;
  std::function<ExecuteMsg(const Stage&)> msg;
  std::uint64_t funds;
  std::string owner;
  std::vector<std::string> wrong;
};

Verdict permission_matrix() {
  const std::vector<std::string> everyone{"seller", "buyer", "ship_a", "ship_b", "outsider"};
  auto others = [&](std::initializer_list<std::string> owners) {
    std::vector<std::string> out;
    for (const auto& n : everyone) {
      if (std::find(owners.begin(), owners.end(), n) == owners.end()) out.push_back(n);
    }
    return out;
  };
  auto available = [] {
    Stage s{make_contract(1, {{"seller", 10'000}, {"buyer", 10'000}, {"ship_a", 10'000}, {"ship_b", 10'000},
                              {"outsider", 10'000}})};
    s.item = *exec(s.c, "seller", PostItem{"item", "", TokenAmount(100), "North"}).value;
    return s;
  };
  auto created_one_bid = [] {
    Stage s{make_contract(1, {{"seller", 10'000}, {"buyer", 10'000}, {"ship_a", 10'000}, {"ship_b", 10'000},
                              {"outsider", 10'000}})};
    s.item = *exec(s.c, "seller", PostItem{"item", "", TokenAmount(100), "North"}).value;
    s.order = *exec(s.c, "buyer", Buy{s.item, "South"}, 100).value;
    return s;
  };
  const auto& kp = key_for("ship_a");
  std::vector<Row> rows{
      {"reset_price", available, [](const Stage& s) { return ExecuteMsg{ResetPrice{s.item, TokenAmount(90)}}; }, 0,
       "seller", others({"seller"})},
      {"buy", available, [](const Stage& s) { return ExecuteMsg{Buy{s.item, "South"}}; }, 100, "buyer", {"seller"}},
      {"bid_order", created_one_bid,
       [](const Stage& s) { return ExecuteMsg{bid_msg(s.order, 8, 5, 10, "ship_a")}; }, 105, "ship_a",
       {"seller", "buyer"}},
      {"choose_bid", [] { return stage_at(OrderState::Created); },
       [](const Stage& s) { return ExecuteMsg{ChooseBid{s.order, 0}}; }, 16, "buyer", others({"buyer"})},
      {"upload_address", [] { return stage_at(OrderState::BidChosen); },
       [&kp](const Stage& s) { return ExecuteMsg{UploadAddress{s.order, seal_for(kp, {"x"})}}; }, 0, "buyer",
       others({"buyer", "seller"})},
      {"discard_order", [] { return stage_at(OrderState::AddressesReady); },
       [](const Stage& s) { return ExecuteMsg{DiscardOrder{s.order}}; }, 0, "ship_a", others({"ship_a"})},
      {"confirm (shipped)", [] { return stage_at(OrderState::AddressesReady); },
       [](const Stage& s) { return ExecuteMsg{Confirm{s.order}}; }, 0, "seller", others({"seller", "ship_a"})},
      {"confirm (delivered)", [] { return stage_at(OrderState::InTransit); },
       [](const Stage& s) { return ExecuteMsg{Confirm{s.order}}; }, 0, "ship_a", others({"ship_a"})},
      {"confirm (received)", [] { return stage_at(OrderState::Delivered); },
       [](const Stage& s) { return ExecuteMsg{Confirm{s.order}}; }, 0, "buyer", others({"buyer"})},
      {"item_loss_broken", [] { return stage_at(OrderState::InTransit); },
       [](const Stage& s) { return ExecuteMsg{ItemLossBroken{s.order}}; }, 0, "buyer", others({"buyer", "ship_a"})},
      {"item_unsatisfied", [] { return stage_at(OrderState::Delivered); },
       [](const Stage& s) { return ExecuteMsg{ItemUnsatisfied{s.order}}; }, 0, "buyer", others({"buyer"})},
      {"return_confirm", [] { return stage_at(OrderState::Returning); },
       [](const Stage& s) { return ExecuteMsg{ReturnConfirm{s.order}}; }, 0, "seller", others({"seller"})},
      {"submit_review", [] { return stage_at(OrderState::Completed); },
       [](const Stage& s) { return ExecuteMsg{SubmitReview{s.order, 4, "ok"}}; }, 0, "buyer", others({"buyer"})},
  };

  int pairs = 0, held = 0;
  std::string first;
  for (const auto& row : rows) {
    Stage base = row.stage();
    // The owner's message must be acceptable in this world, or the row proves nothing.
    Contract owner_copy = base.c;
    if (!owner_copy.execute(Address(row.owner), row.msg(base), TokenAmount(row.funds)).accepted()) {
      ++pairs;
      if (first.empty()) first = "; owner of " + row.name + " was refused";
      continue;
    }
    for (const auto& wrong : row.wrong) {
      ++pairs;
      Contract c = base.c;
      Contract expected = base.c;
      expected.ledger().transfer(Address(wrong), expected.ledger().fee_sink(), expected.ledger().gas_fee());
      Outcome out = c.execute(Address(wrong), row.msg(base), TokenAmount(row.funds));
      if (!out.accepted() && c == expected) {
        ++held;
      } else if (first.empty()) {
        first = "; " + row.name + " from " + wrong + (out.accepted() ? " was accepted" : " changed state");
      }
    }
  }
  return {pairs == held, std::to_string(held) + "/" + std::to_string(pairs) +
                             " (message, wrong sender) pairs rejected with only gas charged across " +
                             std::to_string(rows.size()) + " message rows" + first};
}

// 5. Malicious scenarios.
Verdict malicious_scenarios() {
  int passed = 0;
  std::string notes;
  auto names = harness::list_builtin();
  bool formulas = true;
  for (const auto& name : names) {
    auto sc = harness::builtin_scenario(name);
    auto report = harness::run_scenario(sc);
    if (report.passed() && report.zero_sum) ++passed;
    else notes += "; " + name + " failed";
    const std::int64_t gas = static_cast<std::int64_t>(sc.gas.value());
    if (name == "buyer_forced_return") {
      const auto& buyer = report.actors.at(Address("buyer"));
      std::int64_t want = -2 * sc.params.at("v_ship") - gas * static_cast<std::int64_t>(buyer.messages);
      if (buyer.delta != want) {
        formulas = false;
        notes += "; forced-return buyer " + std::to_string(buyer.delta) + " != " + std::to_string(want);
      }
    }
    if (name == "loss_broken_in_transit") {
      const auto& shipper = report.actors.at(Address("shipper"));
      std::int64_t want = -sc.params.at("v_item") - gas * static_cast<std::int64_t>(shipper.messages);
      if (shipper.delta != want) {
        formulas = false;
        notes += "; loss-broken shipper " + std::to_string(shipper.delta) + " != " + std::to_string(want);
      }
    }
  }
  return {passed == static_cast<int>(names.size()) && names.size() == 8 && formulas,
          std::to_string(passed) + "/" + std::to_string(names.size()) +
              " built-in scenarios pass with exact payoffs; forced-return and loss-broken formulas " +
              (formulas ? "hold" : "broken") + notes};
}

// 6. Crypto properties.
Verdict crypto_properties() {
  std::mt19937_64 rng(0xC0FFEE);
  auto random_address = [&] {
    crypto::DetailedAddress a;
    int lines = std::uniform_int_distribution<int>(1, 5)(rng);
    for (int i = 0; i < lines; ++i) {
      std::string line(std::uniform_int_distribution<std::size_t>(0, 60)(rng), ' ');
      for (auto& ch : line) ch = static_cast<char>(std::uniform_int_distribution<int>(0, 255)(rng));
      a.lines.push_back(line);
    }
    return a;
  };
  const int trials = 1000;
  int round_trips = 0, wrong_key_failures = 0;
  for (int i = 0; i < trials; ++i) {
    auto owner = crypto::generate_keypair(crypto::kSealedEnvelopeV1);
    auto other = crypto::generate_keypair(crypto::kSealedEnvelopeV1);
    auto plain = random_address();
    auto env = crypto::seal(plain, owner.public_key, owner.scheme);
    try {
      if (crypto::open(env, owner) == plain) ++round_trips;
    } catch (const Error&) {
    }
    try {
      crypto::open(env, other);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DecryptionFailure) ++wrong_key_failures;
    }
  }
  auto owner = crypto::generate_keypair(crypto::kSealedEnvelopeV1);
  crypto::DetailedAddress fixed{{"42 Fixed Lane", "Springfield"}};
  std::set<crypto::Bytes> distinct;
  for (int i = 0; i < trials; ++i) distinct.insert(crypto::seal(fixed, owner.public_key, owner.scheme).ciphertext);
  bool ok = round_trips == trials && wrong_key_failures == trials && distinct.size() == static_cast<std::size_t>(trials);
  return {ok, "round-trip " + std::to_string(round_trips) + "/" + std::to_string(trials) + ", wrong-key failure " +
                  std::to_string(wrong_key_failures) + "/" + std::to_string(trials) + ", distinct seals " +
                  std::to_string(distinct.size()) + "/" + std::to_string(trials)};
}

// 7. Replay determinism through the node and its log file.
Verdict replay_determinism() {
  auto dir = std::filesystem::temp_directory_path() / ("spender-acceptance-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const int sessions = 100;
  int identical = 0;
  std::string first;
  World world;
  for (int s = 0; s < sessions; ++s) {
    auto path = dir / ("session-" + std::to_string(s) + ".log");
    std::filesystem::remove(path);
    NodeOptions opts{path, world.genesis(), NodeMode::Sandbox, false};
    std::string live_hash, live_state;
    {
      Node node(opts);
      SessionGenerator gen(0x4E91A7ULL + static_cast<std::uint64_t>(s), world);
      std::mt19937_64 len_rng(static_cast<std::uint64_t>(s) * 7919);
      int steps = std::uniform_int_distribution<int>(1, 80)(len_rng);
      for (int i = 0; i < steps; ++i) {
        Contract view = node.snapshot();
        Action a = gen.next(view);
        if (a.kind == Action::Kind::Tick) {
          node.admin_tick(a.dt);
        } else {
          node.handle_execute(Address(a.sender), a.msg, a.funds);
        }
        if (i % 17 == 0) node.admin_faucet(Address(world.buyers.front()), TokenAmount(50));
      }
      live_hash = node.state_hash();
      live_state = codec::encode_state(node.snapshot()).dump();
    }
    Node restarted(opts);
    std::string replay_hash = restarted.state_hash();
    std::string file_hash = Node::replay_file(path);
    bool same = live_hash == replay_hash && live_hash == file_hash &&
                live_state == codec::encode_state(restarted.snapshot()).dump();
    if (same) ++identical;
    else if (first.empty()) first = "; session " + std::to_string(s) + " diverged";
  }
  std::filesystem::remove_all(dir);
  return {identical == sessions, std::to_string(identical) + "/" + std::to_string(sessions) +
                                     " sessions: live hash equals restart-replay hash byte for byte" + first};
}

// 8. Stats correctness against brute-force counts over the orders.
ParticipantStats brute_force_stats(const Contract& c, const Address& who) {
  ParticipantStats s;
  for (const auto& [_, o] : c.all_orders()) {
    if (o.chosen && o.bids[*o.chosen].shipper == who) {
      ++s.shipper_total_chosen;
      if (o.state == OrderState::Completed && o.delivered_tick && o.shipped_tick &&
          *o.delivered_tick - *o.shipped_tick <= o.bids[*o.chosen].promised_delivery) {
        ++s.shipper_completed;
      }
    }
    if (o.seller == who && is_terminal(o.state)) {
      ++s.seller_total_sold;
      if (o.state == OrderState::Completed) ++s.seller_satisfied;
    }
  }
  return s;
}

// A history of whole lifecycles with random endings and timings, so every
// counter moves; used alongside the free-form random sessions.
void scripted_history(Contract& c, std::mt19937_64& rng, const World& w) {
  std::uniform_int_distribution<int> pick(0, 1), ending(0, 3), orders(1, 6);
  std::uniform_int_distribution<std::uint64_t> delay(0, 20);
  int n = orders(rng);
  for (int k = 0; k < n; ++k) {
    const std::string& seller = w.sellers[static_cast<std::size_t>(pick(rng))];
    const std::string& buyer = w.buyers[static_cast<std::size_t>(pick(rng))];
    const std::string& shipper = w.shippers[static_cast<std::size_t>(pick(rng)) + 1];
    Lifecycle l;
    l.v_item = 50;
    l.v_time = 3;
    l.promised = 10;
    l.bids = {{shipper, 4}};
    OrderId id = drive_to_addresses_ready(c, l, seller.c_str(), buyer.c_str());
    int e = ending(rng);
    if (e == 0) {
      exec(c, shipper.c_str(), DiscardOrder{id});
      continue;
    }
    exec(c, seller.c_str(), Confirm{id});
    exec(c, shipper.c_str(), Confirm{id});
    c.ledger().advance_clock(delay(rng) + 1);
    exec(c, shipper.c_str(), Confirm{id});
    if (e == 1) {
      exec(c, buyer.c_str(), Confirm{id});
    } else if (e == 2) {
      exec(c, buyer.c_str(), ItemLossBroken{id});
    } else {
      exec(c, buyer.c_str(), ItemUnsatisfied{id});
      exec(c, seller.c_str(), ReturnConfirm{id});
    }
  }
}

Verdict stats_correctness() {
  const int histories = 1000;
  int correct = 0;
  std::uint64_t completed = 0;
  std::string first;
  World world;
  world.max_items = 1000;
  for (int h = 0; h < histories; ++h) {
    Contract c = world.contract();
    std::mt19937_64 rng(0x57A75ULL + static_cast<std::uint64_t>(h));
    if (h % 2 == 0) {
      scripted_history(c, rng, world);
    } else {
      SessionGenerator gen(0x57A75ULL + static_cast<std::uint64_t>(h), world);
      int steps = std::uniform_int_distribution<int>(1, 60)(rng);
      for (int i = 0; i < steps; ++i) apply(c, gen.next(c));
    }
    bool ok = true;
    for (const auto& name : world.everyone()) {
      Address a(name);
      ParticipantStats want = brute_force_stats(c, a);
      ParticipantStats got = c.stats(a);
      if (!(got.perfect_ratio() == want.perfect_ratio() && got.satisfied_ratio() == want.satisfied_ratio())) ok = false;
    }
    for (const auto& [_, o] : c.all_orders()) completed += o.state == OrderState::Completed ? 1 : 0;
    if (ok) ++correct;
    else if (first.empty()) first = "; history " + std::to_string(h) + " disagrees";
  }
  return {correct == histories, std::to_string(correct) + "/" + std::to_string(histories) +
                                    " histories: shipper and seller ratios equal brute-force counts (" +
                                    std::to_string(completed) + " completed orders)" + first};
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* title;
    Verdict (*run)();
  };
  const Criterion criteria[] = {
      {1, "settlement golden table", settlement_golden_table},
      {2, "terminal drain and conservation fuzz", conservation_fuzz},
      {3, "small-model exhaustive check", small_model_check},
      {4, "permission matrix", permission_matrix},
      {5, "malicious scenarios", malicious_scenarios},
      {6, "crypto properties", crypto_properties},
      {7, "replay determinism", replay_determinism},
      {8, "stats correctness", stats_correctness},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %d %s: %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", c.number, c.title, v.summary.c_str(), secs);
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
