#include <iostream>
#include <string>
#include <vector>

#include "qproducts/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qprod::cli::run(args, std::cout, std::cerr);
}
