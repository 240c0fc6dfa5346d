#include <iostream>
#include <string>
#include <vector>

#include "qsat_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qsat::cli::run(args, std::cout, std::cerr);
}
