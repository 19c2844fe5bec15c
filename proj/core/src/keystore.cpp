#include "spender/keystore.hpp"

#include <sys/stat.h>

#include <fstream>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

namespace spender {
namespace {

constexpr std::string_view kFormat = "spender-keystore/1";

}  // namespace

Keystore::Keystore(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    auto j = nlohmann::json::parse(buf.str());
    if (j.at("format").get<std::string>() != kFormat) {
      throw Error(ErrorCode::MalformedKey, "unsupported keystore format in " + path_.string());
    }
    for (const auto& [label, entry] : j.at("keys").items()) {
      crypto::KeyPair kp;
      kp.scheme = entry.at("scheme").get<std::string>();
      kp.public_key = crypto::from_base64(entry.at("public_key").get<std::string>());
      kp.private_key = crypto::from_base64(entry.at("private_key").get<std::string>());
      keys_.emplace(label, std::move(kp));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedKey, "keystore " + path_.string() + ": " + e.what());
  }
}

const crypto::KeyPair& Keystore::get(const std::string& label) const {
  auto it = keys_.find(label);
  if (it == keys_.end()) throw Error(ErrorCode::MalformedKey, "no key labelled '" + label + "' in " + path_.string());
  return it->second;
}

std::vector<std::string> Keystore::labels() const {
  std::vector<std::string> out;
  for (const auto& [label, _] : keys_) out.push_back(label);
  return out;
}

const crypto::KeyPair& Keystore::generate(const std::string& label, std::string_view scheme) {
  if (label.empty()) throw Error(ErrorCode::MalformedKey, "key label is empty");
  if (keys_.contains(label)) throw Error(ErrorCode::MalformedKey, "key '" + label + "' already exists");
  auto& kp = keys_.emplace(label, crypto::generate_keypair(scheme)).first->second;
  save();
  return kp;
}

void Keystore::save() const {
  nlohmann::json keys = nlohmann::json::object();
  for (const auto& [label, kp] : keys_) {
    keys[label] = {{"scheme", kp.scheme},
                   {"public_key", crypto::to_base64(kp.public_key)},
                   {"private_key", crypto::to_base64(kp.private_key)}};
  }
  nlohmann::json doc{{"format", kFormat}, {"keys", std::move(keys)}};

  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  auto tmp = path_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::system_error(errno, std::generic_category(), "write " + tmp.string());
    ::chmod(tmp.c_str(), S_IRUSR | S_IWUSR);
    out << doc.dump(2) << '\n';
    if (!out.flush()) throw std::system_error(errno, std::generic_category(), "write " + tmp.string());
  }
  std::filesystem::rename(tmp, path_);
}

}  // namespace spender
