#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace spender {

using EnvLookup = std::function<std::optional<std::string>(const char*)>;

EnvLookup process_env();

// Exit codes of run_wallet.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRejected = 1;  // the node refused the request
inline constexpr int kExitUsage = 2;     // bad flags or arguments
inline constexpr int kExitTransport = 3; // node unreachable or local failure

// Entry point of the `spender` wallet. args excludes the program name.
// Every execute command issues exactly one execute request; local sealing
// and opening of addresses never leave the process.
int run_wallet(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               const EnvLookup& env = process_env());

}  // namespace spender
