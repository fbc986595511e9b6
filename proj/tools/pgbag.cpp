#include <iostream>
#include <string>
#include <vector>

#include "pgbag/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pgbag::cli::run(args, std::cout, std::cerr);
}
