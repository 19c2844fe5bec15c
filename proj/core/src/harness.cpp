#include "spender/harness.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "spender/codec.hpp"

namespace spender::harness {
namespace {

using nlohmann::json;

const Address& fee_sink_address() {
  static const Address a{"fee-sink"};
  return a;
}

[[noreturn]] void fail(std::string_view origin, const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::ParseError, std::string(origin) + ": " + path + ": " + msg);
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorCode::ParseError, "expression overflows");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorCode::ParseError, "expression overflows");
  return out;
}

std::int64_t to_signed(TokenAmount a) {
  if (a.value() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw Error(ErrorCode::AmountOverflow, "balance exceeds signed delta range");
  }
  return static_cast<std::int64_t>(a.value());
}

class ExprParser {
 public:
  ExprParser(std::string_view text, const std::map<std::string, std::int64_t>& params)
      : text_(text), params_(params) {}

  std::int64_t parse() {
    skip_ws();
    if (pos_ == text_.size()) error("empty expression");
    std::int64_t total = 0;
    bool first = true;
    while (pos_ < text_.size()) {
      std::int64_t sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        error("expected '+' or '-'");
      }
      total = checked_add(total, checked_mul(sign, term()));
      first = false;
      skip_ws();
    }
    return total;
  }

 private:
  std::int64_t term() {
    std::int64_t value = factor();
    skip_ws();
    while (peek() == '*') {
      ++pos_;
      skip_ws();
      value = checked_mul(value, factor());
      skip_ws();
    }
    return value;
  }

  std::int64_t factor() {
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::int64_t v = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        v = checked_add(checked_mul(v, 10), text_[pos_++] - '0');
      }
      return v;
    }
    std::size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
    if (start == pos_) error("expected a number or parameter name");
    std::string name(text_.substr(start, pos_ - start));
    auto it = params_.find(name);
    if (it == params_.end()) error("unknown parameter '" + name + "'");
    return it->second;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void error(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, "in expression '" + std::string(text_) + "': " + msg);
  }

  std::string_view text_;
  const std::map<std::string, std::int64_t>& params_;
  std::size_t pos_ = 0;
};

// Amount or delta field: a JSON integer or an expression string.
std::int64_t eval_field(const json& v, const std::map<std::string, std::int64_t>& params, std::string_view origin,
                        const std::string& path) {
  try {
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_string()) return evaluate(v.get_ref<const std::string&>(), params);
  } catch (const Error& e) {
    fail(origin, path, e.detail());
  }
  fail(origin, path, "expected an integer or expression string");
}

TokenAmount eval_amount(const json& v, const std::map<std::string, std::int64_t>& params, std::string_view origin,
                        const std::string& path) {
  std::int64_t n = eval_field(v, params, origin, path);
  if (n < 0) fail(origin, path, "amount evaluates to " + std::to_string(n));
  return TokenAmount{static_cast<std::uint64_t>(n)};
}

struct Resolver {
  const Scenario& scenario;
  std::string_view origin;

  void resolve(json& node, const std::string& path) const {
    if (node.is_object()) {
      for (auto it = node.begin(); it != node.end(); ++it) resolve(it.value(), path + "." + it.key());
    } else if (node.is_array()) {
      for (std::size_t i = 0; i < node.size(); ++i) resolve(node[i], path + "[" + std::to_string(i) + "]");
    } else if (node.is_string()) {
      const std::string& s = node.get_ref<const std::string&>();
      if (s.size() < 3 || s.rfind("${", 0) != 0 || s.back() != '}') return;
      std::string inner = s.substr(2, s.size() - 3);
      if (inner.rfind("key:", 0) == 0) {
        std::string actor = inner.substr(4);
        auto it = actor_key(actor, path);
        node = crypto::to_base64(it->second.public_key);
        return;
      }
      std::int64_t v = 0;
      try {
        v = evaluate(inner, scenario.params);
      } catch (const Error& e) {
        fail(origin, path, e.detail());
      }
      if (v < 0) fail(origin, path, "value evaluates to " + std::to_string(v));
      node = static_cast<std::uint64_t>(v);
    }
  }

  std::map<Address, crypto::KeyPair>::const_iterator actor_key(const std::string& actor, const std::string& path) const {
    if (!is_valid_address(actor)) fail(origin, path, "invalid actor name '" + actor + "'");
    auto it = scenario.keys.find(Address(actor));
    if (it == scenario.keys.end()) fail(origin, path, "undeclared actor '" + actor + "'");
    return it;
  }
};

bool is_seal_sugar(const json& msg) {
  auto it = msg.find("upload_address");
  if (it == msg.end() || !it->is_object()) return false;
  auto env = it->find("envelope");
  return env != it->end() && env->is_object() && env->contains("seal_for");
}

// Replaces a seal_for envelope with a real sealed envelope.
json materialize(const json& msg, const Scenario& s) {
  if (!is_seal_sugar(msg)) return msg;
  json out = msg;
  json& env = out["upload_address"]["envelope"];
  Address recipient(env["seal_for"].get<std::string>());
  crypto::DetailedAddress addr;
  for (const auto& line : env["lines"]) addr.lines.push_back(line.get<std::string>());
  const crypto::KeyPair& kp = s.keys.at(recipient);
  env = codec::encode(crypto::seal(addr, kp.public_key, kp.scheme));
  return out;
}

std::string sign(std::int64_t v) { return (v > 0 ? "+" : "") + std::to_string(v); }

}  // namespace

std::int64_t evaluate(std::string_view expr, const std::map<std::string, std::int64_t>& params) {
  return ExprParser(expr, params).parse();
}

Scenario parse_scenario(std::string_view text, std::string_view origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::ParseError,
                std::string(origin) + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) fail(origin, "$", "scenario must be a JSON object");

  auto get = [&](const json& obj, const char* key, const std::string& path) -> const json& {
    auto it = obj.find(key);
    if (it == obj.end()) fail(origin, path, std::string("missing field '") + key + "'");
    return *it;
  };
  auto address = [&](const json& v, const std::string& path) {
    if (!v.is_string() || !is_valid_address(v.get<std::string>())) fail(origin, path, "expected an actor name");
    return Address(v.get<std::string>());
  };

  Scenario s;
  const json& name = get(doc, "name", "$");
  if (!name.is_string() || name.get<std::string>().empty()) fail(origin, "$.name", "expected a non-empty string");
  s.name = name.get<std::string>();
  if (auto it = doc.find("description"); it != doc.end() && it->is_string()) s.description = it->get<std::string>();

  const json& params = get(doc, "params", "$");
  if (!params.is_object()) fail(origin, "$.params", "expected an object");
  for (const auto& [k, v] : params.items()) {
    if (!v.is_number_integer()) fail(origin, "$.params." + k, "expected an integer");
    s.params[k] = v.get<std::int64_t>();
  }
  if (!s.params.contains("gas")) fail(origin, "$.params", "missing 'gas'");
  if (s.params["gas"] < 0) fail(origin, "$.params.gas", "must be non-negative");
  s.gas = TokenAmount{static_cast<std::uint64_t>(s.params["gas"])};

  const json& actors = get(doc, "actors", "$");
  if (!actors.is_object() || actors.empty()) fail(origin, "$.actors", "expected a non-empty object");
  for (const auto& [k, v] : actors.items()) {
    std::string path = "$.actors." + k;
    if (!is_valid_address(k)) fail(origin, path, "invalid actor name");
    Address a(k);
    if (a == fee_sink_address() || a.str() == Contract::kDefaultContractAccount) {
      fail(origin, path, "actor name is reserved");
    }
    s.actors.emplace(a, eval_amount(v, s.params, origin, path));
    std::string seed = "spender-scenario:" + k;
    s.keys.emplace(a, crypto::generate_keypair(crypto::kSealedEnvelopeV1,
                                               std::span(reinterpret_cast<const std::uint8_t*>(seed.data()), seed.size())));
  }

  Resolver resolver{s, origin};
  const json& steps = get(doc, "steps", "$");
  if (!steps.is_array()) fail(origin, "$.steps", "expected an array");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    std::string path = "$.steps[" + std::to_string(i) + "]";
    const json& js = steps[i];
    if (!js.is_object()) fail(origin, path, "expected an object");
    Step step;
    if (auto it = js.find("advance"); it != js.end()) {
      if (!it->is_number_unsigned()) fail(origin, path + ".advance", "expected a non-negative integer");
      step.advance = it->get<Tick>();
    }
    if (auto it = js.find("sender"); it != js.end()) {
      Address sender = address(*it, path + ".sender");
      if (!s.actors.contains(sender)) fail(origin, path + ".sender", "undeclared actor '" + sender.str() + "'");
      step.sender = sender;
      step.msg = get(js, "msg", path);
      resolver.resolve(step.msg, path + ".msg");
      json probe = step.msg;
      if (is_seal_sugar(probe)) {
        json& env = probe["upload_address"]["envelope"];
        resolver.actor_key(env["seal_for"].is_string() ? env["seal_for"].get<std::string>() : "",
                           path + ".msg.upload_address.envelope.seal_for");
        if (!env.contains("lines") || !env["lines"].is_array() || env["lines"].empty()) {
          fail(origin, path + ".msg.upload_address.envelope.lines", "expected a non-empty array of strings");
        }
        for (const auto& line : env["lines"]) {
          if (!line.is_string()) fail(origin, path + ".msg.upload_address.envelope.lines", "expected strings");
        }
        env = {{"scheme", "x"}, {"recipient_key_fingerprint", ""}, {"ciphertext", ""}};
      }
      try {
        (void)codec::decode_execute(probe);
      } catch (const Error& e) {
        fail(origin, path + ".msg", e.what());
      }
      if (auto f = js.find("funds"); f != js.end()) step.funds = eval_amount(*f, s.params, origin, path + ".funds");
    } else if (step.advance == 0) {
      fail(origin, path, "step has neither a sender nor an advance");
    }
    if (auto it = js.find("expect"); it != js.end()) {
      if (!it->is_string()) fail(origin, path + ".expect", "expected \"accepted\" or an error code");
      const std::string& e = it->get_ref<const std::string&>();
      if (e != "accepted") {
        auto code = parse_error_code(e);
        if (!code) fail(origin, path + ".expect", "unknown error code '" + e + "'");
        step.expect_rejection = code;
      }
    }
    s.steps.push_back(std::move(step));
  }

  const json& expect = get(doc, "expect", "$");
  const json& deltas = get(expect, "deltas", "$.expect");
  if (!deltas.is_object()) fail(origin, "$.expect.deltas", "expected an object");
  for (const auto& [k, v] : deltas.items()) {
    std::string path = "$.expect.deltas." + k;
    if (!is_valid_address(k) || !s.actors.contains(Address(k))) fail(origin, path, "undeclared actor '" + k + "'");
    s.expected_deltas.emplace(Address(k), eval_field(v, s.params, origin, path));
  }
  for (const auto& [a, _] : s.actors) {
    if (!s.expected_deltas.contains(a)) fail(origin, "$.expect.deltas", "no expectation for actor '" + a.str() + "'");
  }
  if (auto it = expect.find("orders"); it != expect.end()) {
    if (!it->is_object()) fail(origin, "$.expect.orders", "expected an object");
    for (const auto& [k, v] : it->items()) {
      std::string path = "$.expect.orders." + k;
      OrderId id = 0;
      try {
        std::size_t used = 0;
        id = std::stoull(k, &used);
        if (used != k.size()) throw std::invalid_argument(k);
      } catch (const std::exception&) {
        fail(origin, path, "order key must be an integer id");
      }
      auto state = v.is_string() ? parse_order_state(v.get<std::string>()) : std::nullopt;
      if (!state) fail(origin, path, "unknown order state");
      s.expected_orders.emplace(id, *state);
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

Scenario builtin_scenario(std::string_view name) {
  return parse_scenario(builtin_source(name), "builtin:" + std::string(name));
}

PayoffReport run_scenario(const Scenario& s) {
  Ledger ledger(fee_sink_address(), s.gas);
  for (const auto& [addr, balance] : s.actors) ledger.create_account(addr, balance);
  Contract contract(std::move(ledger));

  PayoffReport report;
  report.scenario = s.name;
  for (const auto& [addr, _] : s.actors) report.actors[addr] = ActorPayoff{};

  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    const Step& step = s.steps[i];
    std::string where = "step " + std::to_string(i);
    if (step.advance > 0) contract.ledger().advance_clock(step.advance);
    if (!step.sender) continue;

    const Address& sender = *step.sender;
    ExecuteMsg msg = codec::decode_execute(materialize(step.msg, s));
    where += " (" + sender.str() + " " + std::string(message_tag(msg)) + ")";
    Outcome outcome = contract.execute(sender, msg, step.funds);

    ActorPayoff& payoff = report.actors[sender];
    payoff.messages += 1;
    for (const Transfer& t : outcome.receipt.transfers) {
      if (t.from == sender && t.to == fee_sink_address()) payoff.gas_paid += t.amount;
    }

    if (step.expect_rejection) {
      if (outcome.accepted()) {
        report.failures.push_back({ErrorCode::ExpectationFailed,
                                   where + ": expected " + std::string(to_string(*step.expect_rejection)) +
                                       ", was accepted"});
      } else if (outcome.rejection->code != *step.expect_rejection) {
        report.failures.push_back({ErrorCode::ExpectationFailed,
                                   where + ": expected " + std::string(to_string(*step.expect_rejection)) + ", got " +
                                       std::string(to_string(outcome.rejection->code))});
      }
    } else if (!outcome.accepted()) {
      report.failures.push_back({ErrorCode::StepRejected, where + ": " +
                                                              std::string(to_string(outcome.rejection->code)) +
                                                              (outcome.rejection->detail.empty() ? "" : " (" + outcome.rejection->detail + ")")});
    }

    if (contract.balance(contract.contract_account()) != contract.total_escrow()) {
      report.failures.push_back({ErrorCode::ExpectationFailed, where + ": contract balance differs from total escrow"});
    }
  }

  std::int64_t sum = 0;
  for (auto& [addr, payoff] : report.actors) {
    payoff.delta = to_signed(contract.balance(addr)) - to_signed(s.actors.at(addr));
    sum += payoff.delta;
  }
  report.fee_sink_delta = to_signed(contract.balance(fee_sink_address()));
  for (const auto& [id, o] : contract.all_orders()) {
    report.orders[id] = o.state;
    if (is_terminal(o.state)) {
      report.escrow_residue += o.escrow;
    } else {
      report.open_escrow += o.escrow;
    }
  }
  // Tokens an actor parked in escrow are still theirs to account for.
  report.zero_sum = sum + report.fee_sink_delta + to_signed(report.open_escrow) == 0;
  if (!report.zero_sum) {
    report.failures.push_back({ErrorCode::ExpectationFailed, "payoffs do not sum to zero"});
  }
  if (!report.escrow_residue.is_zero()) {
    report.failures.push_back({ErrorCode::ExpectationFailed,
                               "terminal orders hold escrow " + report.escrow_residue.to_string()});
  }

  for (const auto& [addr, expected] : s.expected_deltas) {
    std::int64_t got = report.actors.at(addr).delta;
    if (got != expected) {
      report.failures.push_back({ErrorCode::ExpectationFailed,
                                 addr.str() + ": expected delta " + sign(expected) + ", got " + sign(got)});
    }
  }
  for (const auto& [id, expected] : s.expected_orders) {
    auto it = report.orders.find(id);
    if (it == report.orders.end()) {
      report.failures.push_back({ErrorCode::ExpectationFailed, "order " + std::to_string(id) + " does not exist"});
    } else if (it->second != expected) {
      report.failures.push_back({ErrorCode::ExpectationFailed,
                                 "order " + std::to_string(id) + ": expected " + std::string(to_string(expected)) +
                                     ", got " + std::string(to_string(it->second))});
    }
  }
  return report;
}

json to_json(const PayoffReport& r) {
  json actors = json::object();
  for (const auto& [addr, p] : r.actors) {
    actors[addr.str()] = {{"delta", std::to_string(p.delta)}, {"gas_paid", p.gas_paid.to_string()}, {"messages", p.messages}};
  }
  json orders = json::object();
  for (const auto& [id, st] : r.orders) orders[std::to_string(id)] = std::string(to_string(st));
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back({{"code", std::string(to_string(f.code))}, {"detail", f.detail}});
  return {{"scenario", r.scenario},
          {"actors", std::move(actors)},
          {"fee_sink_delta", std::to_string(r.fee_sink_delta)},
          {"orders", std::move(orders)},
          {"escrow_residue", r.escrow_residue.to_string()},
          {"open_escrow", r.open_escrow.to_string()},
          {"zero_sum", r.zero_sum},
          {"passed", r.passed()},
          {"failures", std::move(failures)}};
}

std::string render_text(const PayoffReport& r) {
  std::ostringstream out;
  out << "scenario " << r.scenario << ": " << (r.passed() ? "PASS" : "FAIL") << "\n";
  out << "  " << std::left << std::setw(20) << "actor" << std::right << std::setw(10) << "delta" << std::setw(8)
      << "gas" << std::setw(8) << "msgs" << "\n";
  for (const auto& [addr, p] : r.actors) {
    out << "  " << std::left << std::setw(20) << addr.str() << std::right << std::setw(10) << sign(p.delta)
        << std::setw(8) << p.gas_paid.to_string() << std::setw(8) << p.messages << "\n";
  }
  out << "  " << std::left << std::setw(20) << "fee-sink" << std::right << std::setw(10) << sign(r.fee_sink_delta)
      << "\n";
  for (const auto& [id, st] : r.orders) out << "  order " << id << ": " << to_string(st) << "\n";
  out << "  escrow residue " << r.escrow_residue.to_string() << ", open escrow " << r.open_escrow.to_string()
      << ", zero-sum " << (r.zero_sum ? "yes" : "no") << "\n";
  for (const auto& f : r.failures) out << "  FAIL [" << to_string(f.code) << "] " << f.detail << "\n";
  return out.str();
}

}  // namespace spender::harness
