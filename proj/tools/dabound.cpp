#include <iostream>
#include <string>
#include <vector>

#include "dab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return dab::cli::run(args, std::cout, std::cerr);
}
