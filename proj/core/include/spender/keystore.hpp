#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "spender/crypto.hpp"

namespace spender {

// Local label -> keypair store for shippers. The file is JSON, written
// atomically and readable only by its owner. Nothing in it is ever sent to
// a node; only public keys leave the machine, inside bids.
class Keystore {
 public:
  // Loads the file when it exists; a missing file is an empty store.
  explicit Keystore(std::filesystem::path path);

  const std::filesystem::path& path() const noexcept { return path_; }
  bool contains(const std::string& label) const { return keys_.contains(label); }
  const crypto::KeyPair& get(const std::string& label) const;  // throws MalformedKey
  std::vector<std::string> labels() const;

  // Generates and stores a fresh keypair, then saves. Refuses to overwrite.
  const crypto::KeyPair& generate(const std::string& label, std::string_view scheme);
  void save() const;

 private:
  std::filesystem::path path_;
  std::map<std::string, crypto::KeyPair> keys_;
};

}  // namespace spender
