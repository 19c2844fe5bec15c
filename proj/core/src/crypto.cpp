#include "spender/crypto.hpp"

#include <sodium.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace spender::crypto {
namespace {

void ensure_sodium() {
  static const bool ready = [] {
    if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
    return true;
  }();
  (void)ready;
}

constexpr std::size_t kFingerprintBytes = 16;

// X25519 key encapsulation with XSalsa20-Poly1305 (libsodium sealed box).
class SealedBoxScheme final : public EnvelopeScheme {
 public:
  std::string_view id() const noexcept override { return kSealedEnvelopeV1; }

  KeyPair generate(std::optional<std::span<const std::uint8_t>> seed) const override {
    ensure_sodium();
    KeyPair kp{Bytes(crypto_box_PUBLICKEYBYTES), Bytes(crypto_box_SECRETKEYBYTES), std::string(id())};
    if (seed) {
      unsigned char derived[crypto_box_SEEDBYTES];
      crypto_generichash(derived, sizeof derived, seed->data(), seed->size(), nullptr, 0);
      crypto_box_seed_keypair(kp.public_key.data(), kp.private_key.data(), derived);
      sodium_memzero(derived, sizeof derived);
    } else {
      crypto_box_keypair(kp.public_key.data(), kp.private_key.data());
    }
    return kp;
  }

  void validate_public_key(std::span<const std::uint8_t> public_key) const override {
    if (public_key.size() != crypto_box_PUBLICKEYBYTES) {
      throw Error(ErrorCode::MalformedKey, "expected " + std::to_string(crypto_box_PUBLICKEYBYTES) +
                                               "-byte public key, got " + std::to_string(public_key.size()));
    }
    if (sodium_is_zero(public_key.data(), public_key.size())) {
      throw Error(ErrorCode::MalformedKey, "all-zero public key");
    }
  }

  Bytes fingerprint(std::span<const std::uint8_t> public_key) const override {
    ensure_sodium();
    Bytes fp(kFingerprintBytes);
    crypto_generichash(fp.data(), fp.size(), public_key.data(), public_key.size(), nullptr, 0);
    return fp;
  }

  Bytes seal(std::span<const std::uint8_t> plaintext,
             std::span<const std::uint8_t> public_key) const override {
    ensure_sodium();
    validate_public_key(public_key);
    Bytes out(plaintext.size() + crypto_box_SEALBYTES);
    if (crypto_box_seal(out.data(), plaintext.data(), plaintext.size(), public_key.data()) != 0) {
      throw Error(ErrorCode::MalformedKey, "sealing rejected the key");
    }
    return out;
  }

  Bytes open(std::span<const std::uint8_t> ciphertext, const KeyPair& keypair) const override {
    ensure_sodium();
    if (keypair.public_key.size() != crypto_box_PUBLICKEYBYTES ||
        keypair.private_key.size() != crypto_box_SECRETKEYBYTES) {
      throw Error(ErrorCode::MalformedKey, "keypair has wrong key sizes");
    }
    if (ciphertext.size() < crypto_box_SEALBYTES) {
      throw Error(ErrorCode::DecryptionFailure, "ciphertext too short");
    }
    Bytes out(ciphertext.size() - crypto_box_SEALBYTES);
    if (crypto_box_seal_open(out.data(), ciphertext.data(), ciphertext.size(),
                             keypair.public_key.data(), keypair.private_key.data()) != 0) {
      throw Error(ErrorCode::DecryptionFailure);
    }
    return out;
  }
};

class Registry {
 public:
  Registry() { schemes_.emplace(std::string(kSealedEnvelopeV1), std::make_unique<SealedBoxScheme>()); }

  const EnvelopeScheme* find(std::string_view id) const {
    std::shared_lock lock(mu_);
    auto it = schemes_.find(std::string(id));
    return it == schemes_.end() ? nullptr : it->second.get();
  }

  void add(std::unique_ptr<EnvelopeScheme> scheme) {
    std::unique_lock lock(mu_);
    std::string key(scheme->id());
    // Replacing would dangle references handed out by find().
    if (!schemes_.emplace(key, std::move(scheme)).second) {
      throw std::invalid_argument("scheme already registered: " + key);
    }
  }

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, std::unique_ptr<EnvelopeScheme>, std::less<>> schemes_;
};

Registry& registry() {
  static Registry r;
  return r;
}

void put_u32(Bytes& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t& pos) {
  if (in.size() - pos < 4) throw Error(ErrorCode::DecryptionFailure, "truncated plaintext");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = (v << 8) | in[pos++];
  return v;
}

}  // namespace

const EnvelopeScheme& find_scheme(std::string_view id) {
  const EnvelopeScheme* s = registry().find(id);
  if (s == nullptr) throw Error(ErrorCode::UnsupportedScheme, std::string(id));
  return *s;
}

bool is_supported(std::string_view id) { return registry().find(id) != nullptr; }

void register_scheme(std::unique_ptr<EnvelopeScheme> scheme) {
  if (!scheme) throw std::invalid_argument("null scheme");
  registry().add(std::move(scheme));
}

KeyPair generate_keypair(std::string_view scheme, std::optional<std::span<const std::uint8_t>> seed) {
  return find_scheme(scheme).generate(seed);
}

SealedEnvelope seal(const DetailedAddress& address, std::span<const std::uint8_t> public_key,
                    std::string_view scheme) {
  const EnvelopeScheme& s = find_scheme(scheme);
  s.validate_public_key(public_key);
  Bytes plaintext = encode_address(address);
  SealedEnvelope env{std::string(scheme), s.fingerprint(public_key), s.seal(plaintext, public_key)};
  sodium_memzero(plaintext.data(), plaintext.size());
  return env;
}

DetailedAddress open(const SealedEnvelope& envelope, const KeyPair& keypair) {
  if (envelope.scheme != keypair.scheme) {
    throw Error(ErrorCode::SchemeMismatch, envelope.scheme + " vs " + keypair.scheme);
  }
  const EnvelopeScheme& s = find_scheme(envelope.scheme);
  if (s.fingerprint(keypair.public_key) != envelope.recipient_key_fingerprint) {
    throw Error(ErrorCode::DecryptionFailure, "envelope is sealed for a different key");
  }
  Bytes plaintext = s.open(envelope.ciphertext, keypair);
  try {
    DetailedAddress out = decode_address(plaintext);
    sodium_memzero(plaintext.data(), plaintext.size());
    return out;
  } catch (...) {
    sodium_memzero(plaintext.data(), plaintext.size());
    throw;
  }
}

Bytes encode_address(const DetailedAddress& address) {
  if (address.lines.empty()) throw Error(ErrorCode::MalformedMessage, "detailed address has no lines");
  Bytes out;
  put_u32(out, static_cast<std::uint32_t>(address.lines.size()));
  for (const auto& line : address.lines) {
    put_u32(out, static_cast<std::uint32_t>(line.size()));
    out.insert(out.end(), line.begin(), line.end());
  }
  return out;
}

DetailedAddress decode_address(std::span<const std::uint8_t> bytes) {
  std::size_t pos = 0;
  std::uint32_t count = get_u32(bytes, pos);
  if (count == 0) throw Error(ErrorCode::DecryptionFailure, "empty address");
  DetailedAddress out;
  for (std::uint32_t i = 0; i < count; ++i) {
    std::uint32_t len = get_u32(bytes, pos);
    if (bytes.size() - pos < len) throw Error(ErrorCode::DecryptionFailure, "truncated plaintext");
    out.lines.emplace_back(reinterpret_cast<const char*>(bytes.data() + pos), len);
    pos += len;
  }
  if (pos != bytes.size()) throw Error(ErrorCode::DecryptionFailure, "trailing plaintext bytes");
  return out;
}

std::string to_base64(std::span<const std::uint8_t> bytes) {
  ensure_sodium();
  std::string out(sodium_base64_ENCODED_LEN(bytes.size(), sodium_base64_VARIANT_ORIGINAL), '\0');
  sodium_bin2base64(out.data(), out.size(), bytes.data(), bytes.size(), sodium_base64_VARIANT_ORIGINAL);
  out.resize(out.size() - 1);  // drop the terminator
  return out;
}

Bytes from_base64(std::string_view text) {
  ensure_sodium();
  Bytes out(text.size() / 4 * 3 + 3);
  std::size_t len = 0;
  const char* end = nullptr;
  if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(), nullptr, &len, &end,
                        sodium_base64_VARIANT_ORIGINAL) != 0 ||
      end != text.data() + text.size()) {
    throw Error(ErrorCode::MalformedMessage, "invalid base64");
  }
  out.resize(len);
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  ensure_sodium();
  std::string out(bytes.size() * 2 + 1, '\0');
  sodium_bin2hex(out.data(), out.size(), bytes.data(), bytes.size());
  out.pop_back();
  return out;
}

Bytes from_hex(std::string_view text) {
  ensure_sodium();
  Bytes out(text.size() / 2 + 1);
  std::size_t len = 0;
  const char* end = nullptr;
  if (sodium_hex2bin(out.data(), out.size(), text.data(), text.size(), nullptr, &len, &end) != 0 ||
      end != text.data() + text.size()) {
    throw Error(ErrorCode::MalformedMessage, "invalid hex");
  }
  out.resize(len);
  return out;
}

std::string sha256_hex(std::string_view data) {
  ensure_sodium();
  unsigned char digest[crypto_hash_sha256_BYTES];
  crypto_hash_sha256(digest, reinterpret_cast<const unsigned char*>(data.data()), data.size());
  return to_hex(digest);
}

}  // namespace spender::crypto
