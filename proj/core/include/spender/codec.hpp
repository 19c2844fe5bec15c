#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "spender/contract.hpp"
#include "spender/crypto.hpp"
#include "spender/messages.hpp"

// Canonical JSON encoding shared by the node API, the event log, the wallet
// and scenario files. Amounts are decimal strings; object keys are sorted
// (nlohmann::json's default std::map), so dump() is byte-stable.
namespace spender::codec {

using nlohmann::json;

// Amounts are emitted as strings; decoding also accepts non-negative
// integer numbers.
json amount(TokenAmount a);
TokenAmount decode_amount(const json& j, const char* field);

// {"<tag>": {fields...}}
json encode(const ExecuteMsg& msg);
ExecuteMsg decode_execute(const json& j);  // throws MalformedMessage

json encode(const crypto::SealedEnvelope& env);
crypto::SealedEnvelope decode_envelope(const json& j);

json encode(const Transfer& t);
json encode(const Event& e);
json encode(const ExecuteReceipt& r);
json encode(const Rejection& r);
// Includes "result": {"item_id"|"order_id"|"bid_index": n} when the message
// created something.
json encode(const Outcome& o, const ExecuteMsg& msg);

json encode(const ItemListing& item);
json encode(const Bid& bid);
json encode(const Order& order);
json encode(const OrderSummary& summary);
json encode(const AddressesView& view);
json encode(const ParticipantStats& stats, const Address& addr);

json encode_state(const Contract& contract);
// SHA-256 (hex) of the canonical state serialization.
std::string state_hash(const Contract& contract);

// Small helpers shared by decoders elsewhere.
const json& field(const json& obj, const char* name);
std::string decode_string(const json& j, const char* field);
std::uint64_t decode_u64(const json& j, const char* field);

}  // namespace spender::codec
