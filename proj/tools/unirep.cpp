#include <iostream>
#include <string>
#include <vector>

#include "unirep/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return unirep::cli::run(args, std::cout, std::cerr);
}
