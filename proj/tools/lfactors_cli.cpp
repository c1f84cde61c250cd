#include <iostream>
#include <string>
#include <vector>

#include "lfactors/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lfactors::cli::run(args, std::cout, std::cerr);
}
