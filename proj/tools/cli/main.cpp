#include <iostream>
#include <string>
#include <vector>

#include "parity_sieve_cli/dispatch.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return parity_sieve::cli::run_main(args, std::cout, std::cerr);
}
