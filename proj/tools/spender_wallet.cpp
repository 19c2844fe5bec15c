#include <iostream>
#include <string>
#include <vector>

#include "spender/wallet_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return spender::run_wallet(args, std::cout, std::cerr);
}
