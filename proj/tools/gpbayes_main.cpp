#include <iostream>
#include <string>
#include <vector>

#include "gpbayes/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return gpbayes::cli::run(args, std::cout, std::cerr);
}
