#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spender/contract.hpp"
#include "spender/crypto.hpp"

// Deterministic scripted scenarios run against the in-process contract. A
// scenario declares actors with genesis balances, a parameter binding, an
// ordered list of execute messages and the exact net token delta each actor
// must end with.
//
// Scenario files use the wire encoding with three conveniences:
//   * "funds", genesis balances and expected deltas are linear expressions
//     over the parameters, e.g. "v_item + v_time" or "-2*v_ship - 4*gas";
//   * inside "msg", a string of the form "${expr}" is replaced by the value
//     of expr, and "${key:actor}" by that actor's base64 public key;
//   * an upload_address envelope may be {"seal_for": actor, "lines": [...]},
//     sealed at run time under that actor's key.
namespace spender::harness {

struct Step {
  std::optional<Address> sender;  // empty for a pure clock advance
  nlohmann::json msg;             // resolved, except for seal_for envelopes
  TokenAmount funds;
  Tick advance = 0;  // applied before the message
  std::optional<ErrorCode> expect_rejection;
};

struct Scenario {
  std::string name;
  std::string description;
  std::map<std::string, std::int64_t> params;
  TokenAmount gas;
  std::map<Address, TokenAmount> actors;
  std::map<Address, crypto::KeyPair> keys;  // deterministic per actor
  std::vector<Step> steps;
  std::map<Address, std::int64_t> expected_deltas;
  std::map<OrderId, OrderState> expected_orders;
};

struct Failure {
  ErrorCode code;  // StepRejected or ExpectationFailed
  std::string detail;
};

struct ActorPayoff {
  std::int64_t delta = 0;
  TokenAmount gas_paid;
  std::uint64_t messages = 0;
};

struct PayoffReport {
  std::string scenario;
  std::map<Address, ActorPayoff> actors;
  std::int64_t fee_sink_delta = 0;
  std::map<OrderId, OrderState> orders;
  // Escrow still held by terminal orders; must be zero.
  TokenAmount escrow_residue;
  // Escrow held by orders left open at the end of the script.
  TokenAmount open_escrow;
  bool zero_sum = false;
  std::vector<Failure> failures;

  bool passed() const noexcept { return failures.empty(); }
};

// Evaluates "3*gas + v_item - 2" against the bindings. Throws ParseError.
std::int64_t evaluate(std::string_view expr, const std::map<std::string, std::int64_t>& params);

Scenario parse_scenario(std::string_view text, std::string_view origin = "<memory>");
Scenario load_scenario(const std::filesystem::path& path);

std::vector<std::string> list_builtin();
std::string_view builtin_source(std::string_view name);  // throws ParseError if unknown
Scenario builtin_scenario(std::string_view name);

PayoffReport run_scenario(const Scenario& scenario);

nlohmann::json to_json(const PayoffReport& report);
std::string render_text(const PayoffReport& report);

}  // namespace spender::harness
