#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spender/errors.hpp"

// Off-chain sealed-envelope encryption for detailed physical addresses.
// Buyers and sellers seal their address under the chosen shipper's posted
// public key; only the holder of the matching private key can open it.
namespace spender::crypto {

using Bytes = std::vector<std::uint8_t>;

inline constexpr std::string_view kSealedEnvelopeV1 = "sealed-envelope-v1";

struct KeyPair {
  Bytes public_key;
  Bytes private_key;
  std::string scheme;

  friend bool operator==(const KeyPair&, const KeyPair&) = default;
};

struct SealedEnvelope {
  std::string scheme;
  Bytes recipient_key_fingerprint;
  Bytes ciphertext;

  friend bool operator==(const SealedEnvelope&, const SealedEnvelope&) = default;
};

struct DetailedAddress {
  std::vector<std::string> lines;

  friend bool operator==(const DetailedAddress&, const DetailedAddress&) = default;
};

// A pluggable envelope scheme, selected by the id a shipper declares with
// their bid.
class EnvelopeScheme {
 public:
  virtual ~EnvelopeScheme() = default;

  virtual std::string_view id() const noexcept = 0;
  virtual KeyPair generate(std::optional<std::span<const std::uint8_t>> seed) const = 0;
  // Throws MalformedKey.
  virtual void validate_public_key(std::span<const std::uint8_t> public_key) const = 0;
  virtual Bytes fingerprint(std::span<const std::uint8_t> public_key) const = 0;
  virtual Bytes seal(std::span<const std::uint8_t> plaintext,
                     std::span<const std::uint8_t> public_key) const = 0;
  // Throws DecryptionFailure.
  virtual Bytes open(std::span<const std::uint8_t> ciphertext, const KeyPair& keypair) const = 0;
};

// Registry lookups are thread-safe. "sealed-envelope-v1" is always present.
const EnvelopeScheme& find_scheme(std::string_view id);  // throws UnsupportedScheme
bool is_supported(std::string_view id);
void register_scheme(std::unique_ptr<EnvelopeScheme> scheme);

KeyPair generate_keypair(std::string_view scheme,
                         std::optional<std::span<const std::uint8_t>> seed = std::nullopt);
SealedEnvelope seal(const DetailedAddress& address, std::span<const std::uint8_t> public_key,
                    std::string_view scheme);
DetailedAddress open(const SealedEnvelope& envelope, const KeyPair& keypair);

// Length-prefixed plaintext encoding; round-trips any byte content.
Bytes encode_address(const DetailedAddress& address);
DetailedAddress decode_address(std::span<const std::uint8_t> bytes);

std::string to_base64(std::span<const std::uint8_t> bytes);
Bytes from_base64(std::string_view text);  // throws MalformedMessage
std::string to_hex(std::span<const std::uint8_t> bytes);
Bytes from_hex(std::string_view text);  // throws MalformedMessage

std::string sha256_hex(std::string_view data);

}  // namespace spender::crypto
